#include "doctest.h"

#include "tensorcat/fixedpoint.hpp"
#include "oracles.hpp"

using namespace tensorcat;
using cat::Letter;
using cat::Word;
using corep::CorepPtr;
using hopf::FiniteGroup;
using num::CMat;
using num::cplx;

namespace {

struct FpCtx {
    FiniteGroup g = FiniteGroup::symmetric(3);
    hopf::HopfPtr fun = hopf::finalize(hopf::fun_algebra(g));
    hopf::HopfPtr k = hopf::finalize(hopf::cop(hopf::dual(*fun)));
    CorepPtr stdrep = corep::standard_plane_corep(fun, g);
    Letter s = cat::make_letter(stdrep, "s");
};

} // namespace

TEST_CASE("K = cop(dual(H)) is a Hopf-*-algebra") {
    FpCtx c;
    CHECK(hopf::check_axioms(*c.k).pass());
    CHECK(c.k->has_haar());
}

TEST_CASE("dual representations") {
    FpCtx c;
    // identity corepresentation: all images are the counit values
    auto d_iota = fixedpoint::dual_rep(corep::identity_corep(c.fun));
    for (int t = 0; t < c.fun->dim; ++t)
        CHECK(std::abs(d_iota.images[t](0, 0) - c.fun->unit(t)) < 1e-14);

    // regular corepresentation of C[G]: diagonal delta projections
    auto grp = hopf::finalize(hopf::group_algebra(c.g));
    auto d_reg = fixedpoint::dual_rep(corep::regular_corep(grp));
    for (int t = 0; t < grp->dim; ++t) {
        CMat expect = num::zeros(6, 6);
        expect(t, t) = 1.0;
        CHECK((d_reg.images[t] - expect).norm() < 1e-12);
    }

    // star property under the adopted dual star convention
    auto dual_h = hopf::dual(*c.fun);
    auto d_std = fixedpoint::dual_rep(c.stdrep);
    for (int t = 0; t < c.fun->dim; ++t) {
        CMat lhs = num::zeros(2, 2);
        for (int l = 0; l < c.fun->dim; ++l)
            if (dual_h.star(l, t) != cplx(0)) lhs += dual_h.star(l, t) * d_std.images[l];
        CHECK((lhs - d_std.images[t].adjoint().eval()).norm() < 1e-12);
    }
}

TEST_CASE("adjoint action axioms") {
    FpCtx c;
    auto act = fixedpoint::adjoint_action(fixedpoint::dual_rep(c.stdrep), c.k);
    auto rep = fixedpoint::check_action_axioms(act);
    CHECK(rep.pass());

    // a = 1_K acts as the identity
    const long d2 = 4;
    CMat unit_op = num::zeros(d2, d2);
    for (int t = 0; t < c.k->dim; ++t)
        if (c.k->unit(t) != cplx(0)) unit_op += c.k->unit(t) * act.ops[t];
    CHECK((unit_op - num::identity(d2)).norm() < 1e-12);
}

TEST_CASE("fixed points equal the commutant and End space dimensions") {
    FpCtx c;
    // irreducible: fixed points are the scalars
    auto act1 = fixedpoint::adjoint_action(fixedpoint::dual_rep(c.stdrep), c.k);
    auto fp1 = fixedpoint::fixed_points(act1);
    CHECK(fp1.basis.size() == 1);
    CHECK(fp1.commutant_dim == 1);
    CHECK(fp1.span_gap < 1e-8);

    // conj(sigma(n)) for n = 1..3: dimensions 1, 3, 11
    const std::vector<int> expected{1, 3, 11};
    for (int n = 1; n <= 3; ++n) {
        const Word w = cat::sigma_word(c.s, n, c.fun).conj();
        auto act = fixedpoint::adjoint_action(fixedpoint::dual_rep(w.realized()), c.k);
        auto fp = fixedpoint::fixed_points(act);
        CHECK(static_cast<int>(fp.basis.size()) == expected[n - 1]);
        CHECK(fp.commutant_dim == expected[n - 1]);
        CHECK(fp.span_gap < 1e-8);
        CHECK(static_cast<int>(w.end_space().dim()) == expected[n - 1]);
    }
}

TEST_CASE("tower action consistency") {
    FpCtx c;
    const Word rho = cat::sigma_word(c.s, 2, c.fun).conj();
    auto rep = fixedpoint::check_tower_action_consistency(rho.realized(), c.stdrep, c.k);
    CHECK(rep.pass());
    CHECK(rep.max_residual() < 1e-9);

    // group case over Z/3
    auto c3 = hopf::finalize(hopf::fun_algebra(FiniteGroup::cyclic(3)));
    auto k3 = hopf::finalize(hopf::cop(hopf::dual(*c3)));
    auto reg3 = corep::regular_corep(c3);
    auto rep3 = fixedpoint::check_tower_action_consistency(reg3, reg3, k3);
    CHECK(rep3.pass());
}

TEST_CASE("outer action power") {
    FpCtx c;
    auto grp = hopf::finalize(hopf::group_algebra(c.g));
    auto lreg = cat::make_letter(corep::regular_corep(grp), "r");
    auto n1 = fixedpoint::outer_action_power(lreg, 4, grp);
    REQUIRE(n1.has_value());
    CHECK(*n1 == 1);

    // the standard S3 letter already reaches every class at the first power;
    // sigma conj(sigma) decomposes into all three irreducibles
    auto n2 = fixedpoint::outer_action_power(c.s, 4, c.fun);
    REQUIRE(n2.has_value());
    CHECK(*n2 == 1);

    CHECK_FALSE(fixedpoint::outer_action_power(c.s, 0, c.fun).has_value());
}

TEST_CASE("conjugate action equivalence") {
    FpCtx c;
    auto triv = fixedpoint::check_conjugate_action_equivalence(corep::identity_corep(c.fun), c.k);
    CHECK(triv.pass());

    auto rep = fixedpoint::check_conjugate_action_equivalence(c.stdrep, c.k);
    CHECK(rep.pass());
    CHECK(rep.max_residual() < 1e-9);

    // the regular corepresentation of C[S3] as well
    auto grp = hopf::finalize(hopf::group_algebra(c.g));
    auto kg = hopf::finalize(hopf::cop(hopf::dual(*grp)));
    auto rep2 = fixedpoint::check_conjugate_action_equivalence(corep::regular_corep(grp), kg);
    CHECK(rep2.pass());
}
