#include "doctest.h"

#include "tensorcat/hopf.hpp"
#include "oracles.hpp"

using namespace tensorcat;
using hopf::FiniteGroup;
using hopf::HopfStarAlgebra;
using num::cplx;
using num::CVec;

TEST_CASE("finite groups") {
    auto z4 = FiniteGroup::cyclic(4);
    z4.validate();
    CHECK(z4.order == 4);
    CHECK(z4.inverse(1) == 3);

    auto s3 = FiniteGroup::symmetric(3);
    s3.validate();
    CHECK(s3.order == 6);
    CHECK(s3.table[0][3] == 3);

    auto broken = z4;
    broken.table[1][1] = 1;
    CHECK_THROWS_AS(broken.validate(), ParseError);
}

TEST_CASE("group and function algebras satisfy the axioms") {
    for (int n : {2, 3, 4}) {
        auto g = FiniteGroup::cyclic(n);
        CHECK(hopf::check_axioms(hopf::group_algebra(g)).pass());
        CHECK(hopf::check_axioms(hopf::fun_algebra(g)).pass());
    }
    auto s3 = FiniteGroup::symmetric(3);
    CHECK(hopf::check_axioms(hopf::group_algebra(s3)).pass());
    CHECK(hopf::check_axioms(hopf::fun_algebra(s3)).pass());
}

TEST_CASE("injected fault shows up as an associativity residual") {
    auto h = hopf::group_algebra(FiniteGroup::cyclic(2));
    h.mult[0 * 2 + 1](0) += 0.1; // perturb e*g, breaking (e e)g = e(e g)
    auto rep = hopf::check_axioms(h);
    CHECK_FALSE(rep.pass());
    const auto* assoc = rep.find("associativity");
    REQUIRE(assoc != nullptr);
    CHECK_FALSE(assoc->pass);
    CHECK(assoc->residual > 0.05);
    CHECK(assoc->residual < 0.3);
}

TEST_CASE("Haar traces of the built-in examples") {
    auto f2 = hopf::fun_algebra(FiniteGroup::cyclic(2));
    auto t2 = hopf::haar_trace(f2);
    CHECK(std::abs(t2(0) - cplx(0.5)) < 1e-12);
    CHECK(std::abs(t2(1) - cplx(0.5)) < 1e-12);

    auto c3 = hopf::group_algebra(FiniteGroup::cyclic(3));
    auto t3 = hopf::haar_trace(c3);
    CHECK(std::abs(t3(0) - cplx(1.0)) < 1e-12);
    CHECK(std::abs(t3(1)) < 1e-12);
    CHECK(std::abs(t3(2)) < 1e-12);

    // tau(delta_g) = d / dim H with d = 1 on every one-dimensional block
    auto fs3 = hopf::fun_algebra(FiniteGroup::symmetric(3));
    auto ts3 = hopf::haar_trace(fs3);
    for (int i = 0; i < 6; ++i) CHECK(std::abs(ts3(i) - cplx(1.0 / 6.0)) < 1e-12);

    // invariance equations hold directly
    for (int i = 0; i < fs3.dim; ++i) {
        CVec left = CVec::Zero(fs3.dim), right = CVec::Zero(fs3.dim);
        for (int j = 0; j < fs3.dim; ++j)
            for (int k = 0; k < fs3.dim; ++k) {
                left(k) += fs3.comult[i](j, k) * ts3(j);
                right(j) += fs3.comult[i](j, k) * ts3(k);
            }
        CHECK((left - ts3(i) * fs3.unit).norm() < 1e-10);
        CHECK((right - ts3(i) * fs3.unit).norm() < 1e-10);
    }
}

TEST_CASE("degenerate comultiplication is rejected") {
    auto h = hopf::group_algebra(FiniteGroup::cyclic(2));
    h.comult[1] = h.comult[0]; // both group-like on the identity
    CHECK_THROWS_AS(hopf::haar_trace(h), NonFaithful);
}

TEST_CASE("cop, op and dual constructions") {
    auto f3 = hopf::fun_algebra(FiniteGroup::cyclic(3));
    CHECK(hopf::structure_distance(hopf::cop(f3), f3) == 0.0); // cocommutative

    auto cs3 = hopf::group_algebra(FiniteGroup::symmetric(3));
    auto cc = hopf::cop(hopf::cop(cs3));
    CHECK(hopf::structure_distance(cc, cs3) == 0.0);

    CHECK(hopf::check_axioms(hopf::cop(cs3)).pass());
    CHECK(hopf::check_axioms(hopf::op(cs3)).pass());
    CHECK(hopf::check_axioms(hopf::dual(cs3)).pass());

    // dual of C[G] is Fun(G) on the canonical basis bijection
    auto fs3 = hopf::fun_algebra(FiniteGroup::symmetric(3));
    CHECK(hopf::structure_distance(hopf::dual(cs3), fs3) < 1e-14);

    // double dual returns the original structure constants
    CHECK(hopf::structure_distance(hopf::dual(hopf::dual(cs3)), cs3) < 1e-14);
    CHECK(hopf::structure_distance(hopf::dual(hopf::dual(fs3)), fs3) < 1e-14);

    // S^2 = id exactly for the built-ins
    CHECK((cs3.antipode * cs3.antipode - num::identity(6)).norm() == 0.0);
    CHECK((fs3.antipode * fs3.antipode - num::identity(6)).norm() == 0.0);
}

TEST_CASE("finalize computes the Haar trace and shares the algebra") {
    auto h = hopf::finalize(hopf::fun_algebra(FiniteGroup::symmetric(3)));
    CHECK(h->has_haar());
    const auto& pairs = h->haar_pair_table();
    // Fun(G) basis is tau-orthogonal with weight 1/|G|
    CHECK((pairs - num::identity(6) / 6.0).norm() < 1e-12);
}
