#include "doctest.h"

#include "tensorcat/numkit.hpp"
#include "oracles.hpp"

using namespace tensorcat;
using num::CMat;
using num::cplx;
using num::CVec;

namespace {

CMat mat2(cplx a, cplx b, cplx c, cplx d) {
    CMat m(2, 2);
    m << a, b, c, d;
    return m;
}

} // namespace

TEST_CASE("kron basics") {
    CMat a = num::Rng(7).matrix(2, 3);
    CMat i2 = num::identity(2);

    CMat block = num::kron(i2, a);
    CHECK(block.rows() == 4);
    CHECK((block.block(0, 0, 2, 3) - a).norm() == doctest::Approx(0.0));
    CHECK((block.block(2, 3, 2, 3) - a).norm() == doctest::Approx(0.0));
    CHECK(block.block(0, 3, 2, 3).norm() == doctest::Approx(0.0));

    CHECK((num::kron(a, num::identity(1)) - a).norm() == doctest::Approx(0.0));

    CMat x = mat2(0, 1, 1, 0);
    CMat s(1, 1);
    s << cplx(2.0);
    CMat got = num::kron(x, s);
    CHECK(got(0, 1) == cplx(2.0));
    CHECK(got(1, 0) == cplx(2.0));
    CHECK(got(0, 0) == cplx(0.0));
}

TEST_CASE("kron interchange law") {
    num::Rng rng(11);
    CMat s = rng.matrix(3, 2), t = rng.matrix(2, 4);
    CMat sp = rng.matrix(2, 5), tp = rng.matrix(5, 3);
    CMat lhs = num::kron(s, sp) * num::kron(t, tp);
    CMat rhs = num::kron((s * t).eval(), (sp * tp).eval());
    CHECK((lhs - rhs).norm() < 1e-12 * rhs.norm());
}

TEST_CASE("null_space examples") {
    auto z = num::null_space(num::zeros(2, 2));
    CHECK(z.size() == 2);

    auto inj = num::null_space(num::identity(3));
    CHECK(inj.empty());

    CMat row(1, 2);
    row << cplx(1.0), cplx(1.0);
    auto ns = num::null_space(row);
    REQUIRE(ns.size() == 1);
    CHECK(std::abs(ns[0](0) - cplx(1.0 / std::sqrt(2.0))) < 1e-12);
    CHECK(std::abs(ns[0](1) + cplx(1.0 / std::sqrt(2.0))) < 1e-12);
}

TEST_CASE("null_space invariants on a rank-deficient matrix") {
    num::Rng rng(5);
    CMat a = rng.matrix(4, 2) * rng.matrix(2, 6); // rank 2, 6 columns
    auto ns = num::null_space(a);
    REQUIRE(ns.size() == 4);
    for (const auto& v : ns) CHECK((a * v).norm() <= 1e-8 * a.norm());
    for (std::size_t i = 0; i < ns.size(); ++i)
        for (std::size_t j = 0; j < ns.size(); ++j) {
            const cplx dot = ns[i].dot(ns[j]);
            CHECK(std::abs(dot - (i == j ? cplx(1.0) : cplx(0.0))) < 1e-10);
        }
    // determinism: bit-identical repeat
    auto ns2 = num::null_space(a);
    for (std::size_t i = 0; i < ns.size(); ++i) CHECK((ns[i] - ns2[i]).norm() == 0.0);
}

TEST_CASE("herm_eig examples and reconstruction") {
    auto e1 = num::herm_eig(num::identity(2));
    CHECK(e1.values(0) == doctest::Approx(1.0));
    CHECK(e1.values(1) == doctest::Approx(1.0));

    CMat d = mat2(0, 0, 0, 3);
    auto e2 = num::herm_eig(d);
    CHECK(e2.values(0) == doctest::Approx(0.0));
    CHECK(e2.values(1) == doctest::Approx(3.0));

    auto e3 = num::herm_eig(mat2(0, 1, 1, 0));
    CHECK(e3.values(0) == doctest::Approx(-1.0));
    CHECK(e3.values(1) == doctest::Approx(1.0));

    num::Rng rng(3);
    CMat r = rng.matrix(5, 5);
    CMat h = r + r.adjoint().eval();
    auto eig = num::herm_eig(h);
    CMat rec = eig.vectors * eig.values.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
    CHECK((h - rec).norm() <= 1e-8 * h.norm());

    CHECK_THROWS_AS(num::herm_eig(rng.matrix(3, 3)), NotHermitian);
}

TEST_CASE("commutant_basis") {
    std::vector<CMat> just_id{num::identity(2)};
    CHECK(num::commutant_basis(just_id).size() == 4);

    // Pauli X and Z generate all of M_2, so the commutant is the scalars
    std::vector<CMat> paulis{mat2(0, 1, 1, 0), mat2(1, 0, 0, -1)};
    auto c = num::commutant_basis(paulis);
    REQUIRE(c.size() == 1);
    CHECK((c[0] - c[0](0, 0) * num::identity(2)).norm() < 1e-9);

    std::vector<CMat> bad{num::identity(2), num::identity(3)};
    CHECK_THROWS_AS(num::commutant_basis(bad), DimensionMismatch);
}

TEST_CASE("commutant of the two-dimensional S3 representation is trivial") {
    // generator images of the standard rep: a 3-cycle and a transposition,
    // realized on the sum-zero plane
    const double c = -0.5, s = std::sqrt(3.0) / 2.0;
    CMat rot = mat2(c, -s, s, c);
    CMat flip = mat2(1, 0, 0, -1);

    // independent oracle: brute-force X A = A X, X B = B X by elimination
    auto to_vv = [](const CMat& m) {
        std::vector<std::vector<cplx>> out(m.rows(), std::vector<cplx>(m.cols()));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
        return out;
    };
    const int oracle = oracles::commutant_dim({to_vv(rot), to_vv(flip)});
    CHECK(oracle == 1);

    auto basis = num::commutant_basis({rot, flip});
    CHECK(static_cast<int>(basis.size()) == oracle);
}
