#include "doctest.h"

#include "tensorcat/morphmap.hpp"
#include "oracles.hpp"

using namespace tensorcat;
using cat::Letter;
using cat::Word;
using hopf::FiniteGroup;
using num::CMat;
using num::cplx;

namespace {

struct MmCtx {
    FiniteGroup g = FiniteGroup::symmetric(3);
    hopf::HopfPtr fun = hopf::finalize(hopf::fun_algebra(g));
    corep::CorepPtr stdrep = corep::standard_plane_corep(fun, g);
    Letter s = cat::make_letter(stdrep, "s");
};

} // namespace

TEST_CASE("shift operator cancellation") {
    MmCtx c;
    const Word iota = Word::empty(c.fun);
    auto rep = morphmap::check_shift_identity(iota, c.s, 3, 4);
    CHECK(rep.pass());
    CHECK(rep.max_residual() < 1e-12);

    const Word rho = cat::sigma_word(c.s, 2, c.fun);
    auto rep2 = morphmap::check_shift_identity(rho, c.s, 2, 3);
    CHECK(rep2.pass());

    // the composed conjugation vector for sigma(m) equals the shift product
    const Word s3w = cat::sigma_word(c.s, 3, c.fun);
    const auto& pair = s3w.pair();
    CMat prod = morphmap::shift_in(iota, c.s, 0, 0);
    prod = morphmap::shift_in(iota, c.s, 1, 2) * prod;
    prod = morphmap::shift_in(iota, c.s, 2, 4) * prod;
    CHECK((prod - pair.rbar).norm() < 1e-12);
}

TEST_CASE("identity morphism map is the identity") {
    MmCtx c;
    const Word iota = Word::empty(c.fun);
    const Word sw = Word::single(c.s);
    auto f = morphmap::morphism_map(iota, sw, sw, num::identity(4));
    CHECK((f.matrix - num::identity(f.matrix.rows())).norm() < 1e-10);

    const Word rho = cat::sigma_word(c.s, 2, c.fun);
    const Word phi = cat::sigma_word(c.s, 2, c.fun);
    auto f2 = morphmap::morphism_map(rho, phi, phi, num::identity(16));
    CHECK((f2.matrix - num::identity(f2.matrix.rows())).norm() < 1e-9);
}

TEST_CASE("morphism map properties on S3 words") {
    MmCtx c;
    const Word rho1 = Word::single(c.s);
    const Word rho2 = Word::single(cat::bar(c.s));
    const Word phi = cat::sigma_word(c.s, 2, c.fun);
    auto rep = morphmap::check_morphism_map_properties(rho1, rho2, phi, phi, phi, {}, 5);
    for (const auto& item : rep.items) {
        INFO(item.name);
        CHECK(item.pass);
    }
    // per-property residuals stay at the numerical floor
    CHECK(rep.max_residual() < 1e-8);
}

TEST_CASE("nested jones projections") {
    MmCtx c;
    const Word iota = Word::empty(c.fun);

    // m = 1: g_1 equals the single Jones projection
    const CMat g1 = morphmap::nested_jones_projection(iota, c.s, 1);
    const CMat f0 = morphmap::jones_in_word(iota, c.s, 0, 2);
    CHECK((g1 - f0).norm() < 1e-12);

    // m = 1 with rho = sigma conj(sigma): factorization and product rule
    const Word rho = cat::sigma_word(c.s, 2, c.fun);
    auto rep = morphmap::check_nested_jones_factorization(rho, c.s, 1, {}, 7);
    for (const auto& item : rep.items) {
        INFO(item.name);
        CHECK(item.pass);
    }
    CHECK(rep.max_residual() < 1e-8);

    // m = 2 over the regular corepresentation of C[Z/2]
    auto grp = hopf::finalize(hopf::group_algebra(FiniteGroup::cyclic(2)));
    auto lreg = cat::make_letter(corep::regular_corep(grp), "r");
    const Word iota2 = Word::empty(grp);
    auto rep2 = morphmap::check_nested_jones_factorization(iota2, lreg, 2, {}, 9);
    for (const auto& item : rep2.items) {
        INFO(item.name);
        CHECK(item.pass);
    }

    // m = 2 for the S3 standard letter as well
    auto rep3 = morphmap::check_nested_jones_factorization(iota, c.s, 2, {}, 11);
    for (const auto& item : rep3.items) {
        INFO(item.name);
        CHECK(item.pass);
    }
}
