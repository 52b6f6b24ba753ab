#include "tensorcat/morphmap.hpp"

namespace tensorcat::morphmap {

namespace {

long pow_l(long v, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= v;
    return r;
}

void guard_cap(const Word& rho, long total, const char* where) {
    if (total > rho.cap())
        throw CapExceeded(std::string(where) + ": word above cap");
}

} // namespace

CMat shift_in(const Word& rho, const Letter& sigma, int l, int m) {
    if (l < 0 || m < l) throw ShapeMismatch("shift_in: need 0 <= l <= m");
    const long v = sigma.obj->vdim;
    const long left = rho.vdim() * pow_l(v, l);
    const long right = pow_l(v, m - l);
    guard_cap(rho, left * v * v * right, "shift_in");
    const CMat& vec = (l % 2 == 0) ? sigma.rbar : sigma.r;
    return num::kron(num::identity(left), num::kron(vec, num::identity(right)));
}

CMat shift_out(const Word& rho, const Letter& sigma, int l, int m) {
    if (l < 0 || m < l + 2) throw ShapeMismatch("shift_out: need m >= l+2");
    const long v = sigma.obj->vdim;
    const long left = rho.vdim() * pow_l(v, l);
    const long right = pow_l(v, m - l - 2);
    guard_cap(rho, left * v * v * right, "shift_out");
    const CMat& vec = (l % 2 == 0) ? sigma.rbar : sigma.r;
    return num::kron(num::identity(left),
                     num::kron(vec.adjoint().eval(), num::identity(right)));
}

CMat pad_word_end(const Word& rho, const Letter& sigma, const CMat& s, int l, int m) {
    if (m < l) throw ShapeMismatch("pad_word_end: need m >= l");
    const long v = sigma.obj->vdim;
    const long sz = rho.vdim() * pow_l(v, l);
    if (s.rows() != sz || s.cols() != sz) throw ShapeMismatch("pad_word_end: wrong shape");
    return num::kron(s, num::identity(pow_l(v, m - l)));
}

ValidationReport check_shift_identity(const Word& rho, const Letter& sigma, int k_max,
                                      int m_max, const Tolerance& tol) {
    ValidationReport rep;
    const long v = sigma.obj->vdim;
    double worst = 0.0;
    int cases = 0;
    for (int k = 0; k <= k_max; ++k)
        for (int m = k; m <= m_max; ++m) {
            if (rho.vdim() * pow_l(v, m + 2) > rho.cap()) continue;
            const long dim = rho.vdim() * pow_l(v, m);
            const CMat in = shift_in(rho, sigma, k, m);
            if (k + 1 <= m) {
                const CMat comp = shift_out(rho, sigma, k + 1, m + 2) * in;
                worst = std::max(worst, (comp - num::identity(dim)).norm());
                ++cases;
            }
            if (k >= 1) {
                const CMat comp = shift_out(rho, sigma, k - 1, m + 2) * in;
                worst = std::max(worst, (comp - num::identity(dim)).norm());
                ++cases;
            }
        }
    if (cases == 0) throw Error("check_shift_identity: no case fits under the cap");
    rep.add("shift_cancellation", worst, tol.check_eps);
    return rep;
}

CMat MorphismMap::apply(const CMat& s) const {
    if (s.rows() != vrho_ * vphi_ || s.cols() != vrho_ * vphi_)
        throw ShapeMismatch("morphism map applied to a wrong-sized element");
    CMat y = num::kron_apply_mid(1, s, vphi_ * vpsi_, pre_);
    y = num::kron_apply_mid(vrho_, k, vpsi_, y);
    y = post_ * y;
    return factor * y;
}

MorphismMap morphism_map(const Word& rho, const Word& phi, const Word& psi, const CMat& k,
                         const Tolerance& tol, std::uint64_t seed) {
    MorphismMap f;
    f.rho = rho;
    f.phi = phi;
    f.psi = psi;
    f.k = k;
    f.vrho_ = rho.vdim();
    f.vphi_ = phi.vdim();
    f.vpsi_ = psi.vdim();
    if (k.rows() != f.vpsi_ * f.vpsi_ || k.cols() != f.vphi_ * f.vphi_)
        throw ShapeMismatch("morphism_map: K must map phi conj(phi) to psi conj(psi)");
    f.factor = std::sqrt(cat::statistical_dimension(psi) / cat::statistical_dimension(phi));

    const auto& pphi = phi.pair(tol);
    const auto& ppsi = psi.pair(tol);
    // the End words get realized; intermediates stay thin matrices
    guard_cap(rho, f.vrho_ * std::max(f.vphi_, f.vpsi_), "morphism_map");
    if (f.vrho_ * f.vphi_ * f.vphi_ * f.vpsi_ > (1L << 22))
        throw CapExceeded("morphism_map: intermediate object too large");
    f.pre_ = num::kron(num::identity(f.vrho_),
                       num::kron(pphi.rbar, num::identity(f.vpsi_)));
    // (1_{rho psi} x r_psi^*) as a thin matrix
    f.post_ = num::kron(num::identity(f.vrho_ * f.vpsi_), ppsi.r.adjoint().eval());

    const Word in_word = Word::concat(rho, phi);
    const Word out_word = Word::concat(rho, psi);
    f.in_basis = in_word.end_space(tol, seed).basis;
    f.out_basis = out_word.end_space(tol, seed).basis;
    f.matrix = num::zeros(static_cast<Eigen::Index>(f.out_basis.size()),
                          static_cast<Eigen::Index>(f.in_basis.size()));
    for (std::size_t i = 0; i < f.in_basis.size(); ++i) {
        const CMat img = f.apply(f.in_basis[i]);
        CMat rem = img;
        for (std::size_t j = 0; j < f.out_basis.size(); ++j) {
            const cplx c = (f.out_basis[j].adjoint() * img).trace();
            f.matrix(j, i) = c;
            rem -= c * f.out_basis[j];
        }
        if (rem.norm() > tol.check_eps * 100.0 * std::max(1.0, img.norm()))
            throw Error("morphism map leaves the endomorphism space, residual " +
                        std::to_string(rem.norm()));
    }
    return f;
}

ValidationReport check_morphism_map_properties(const Word& rho1, const Word& rho2,
                                               const Word& phi, const Word& psi,
                                               const Word& tau, const Tolerance& tol,
                                               std::uint64_t seed) {
    ValidationReport rep;
    const Word rho = Word::concat(rho1, rho2);
    const long vr = rho.vdim(), vphi = phi.vdim(), vpsi = psi.vdim(), vr1 = rho1.vdim();

    const Word pp = Word::concat(phi, phi.conj());
    const Word qq = Word::concat(psi, psi.conj());
    const Word tt = Word::concat(tau, tau.conj());
    const auto kspace = corep::hom(pp.realized(), qq.realized(), tol, seed);
    const auto lspace = corep::hom(qq.realized(), tt.realized(), tol, seed);
    if (kspace.dim() == 0 || lspace.dim() == 0)
        throw Error("check_morphism_map_properties: empty morphism space");

    num::Rng rng(seed ^ 0x5a5au);
    auto sample = [&](const corep::MorphismSpace& sp) {
        CMat m = num::zeros(sp.basis[0].rows(), sp.basis[0].cols());
        for (const auto& b : sp.basis) m += cplx(rng.gauss(), rng.gauss()) * b;
        return m;
    };
    const CMat kk = sample(kspace);
    const CMat ll = sample(lspace);

    const auto f_k = morphism_map(rho, phi, psi, kk, tol, seed);
    const auto f_l = morphism_map(rho, psi, tau, ll, tol, seed);
    const auto f_lk = morphism_map(rho, phi, tau, (ll * kk).eval(), tol, seed);

    {
        // (a) bimodule linearity over End(rho)
        const auto& dbasis = rho.end_space(tol, seed).basis;
        double r = 0.0;
        for (const auto& d1 : dbasis)
            for (const auto& d2 : dbasis)
                for (const auto& s : f_k.in_basis) {
                    const CMat lhs = f_k.apply(num::kron(d1, num::identity(vphi)) * s *
                                               num::kron(d2, num::identity(vphi)));
                    const CMat rhs = num::kron(d1, num::identity(vpsi)) * f_k.apply(s) *
                                     num::kron(d2, num::identity(vpsi));
                    r = std::max(r, (lhs - rhs).norm());
                }
        rep.add("bimodule_linearity", r, tol.check_eps * 100.0);
    }
    {
        // (b) injectivity of K -> f(K) plus the positive trace witness
        CMat lin(static_cast<Eigen::Index>(f_k.out_basis.size() * f_k.in_basis.size()),
                 kspace.dim());
        for (int b = 0; b < kspace.dim(); ++b) {
            const auto fb = morphism_map(rho, phi, psi, kspace.basis[b], tol, seed);
            lin.col(b) = num::vec_rm(fb.matrix);
        }
        const auto kernel = num::null_space(lin, tol);
        rep.add_flag("injectivity_rank", kernel.empty());

        if (vphi == vpsi && phi.name() == psi.name()) {
            const CMat kpos = (kk.adjoint() * kk).eval();
            const auto f_pos = morphism_map(rho, phi, phi, kpos, tol, seed);
            const CMat f1 = f_pos.apply(num::identity(vr * vphi));
            // close the map up and take the categorical trace over
            // rho phi conj(phi) phi
            const auto& pair_phi = phi.pair(tol);
            const CMat a = num::kron(num::identity(vr * vphi), pair_phi.r);
            const CMat b = num::kron(
                num::identity(vr),
                num::kron(pair_phi.rbar.adjoint().eval(), num::identity(vphi)));
            const Word wbig = Word::concat(Word::concat(rho, pp), phi);
            const cplx lhs = cat::categorical_trace(wbig, (a * f1 * b).eval(), tol);
            const Word wk = Word::concat(rho, pp);
            const cplx rhs =
                cat::categorical_trace(wk, num::kron(num::identity(vr), kpos), tol) /
                (cat::statistical_dimension(phi) * cat::statistical_dimension(phi));
            rep.add("positivity_witness_match", std::abs(lhs - rhs), tol.check_eps * 10.0);
            rep.add_flag("positivity_witness_positive", lhs.real() > tol.check_eps);
        }
    }
    {
        // (c) multiplicativity
        rep.add("multiplicativity", (f_lk.matrix - f_l.matrix * f_k.matrix).norm(),
                tol.check_eps * 100.0);
    }
    {
        // (d) adjoint compatibility for the categorical trace inner products
        const auto f_kstar = morphism_map(rho, psi, phi, kk.adjoint().eval(), tol, seed);
        const Word rphi = Word::concat(rho, phi);
        const Word rpsi = Word::concat(rho, psi);
        double r = 0.0;
        for (const auto& s : f_k.in_basis)
            for (const auto& tmat : f_k.out_basis) {
                const cplx lhs = cat::categorical_trace(
                    rpsi, (f_k.apply(s) * tmat.adjoint()).eval(), tol);
                const cplx rhs = cat::categorical_trace(
                    rphi, (s * f_kstar.apply(tmat).adjoint()).eval(), tol);
                r = std::max(r, std::abs(lhs - rhs));
            }
        rep.add("adjoint_compatibility", r, tol.check_eps * 10.0);
    }
    {
        // (e) unitality at K = 1_{phi conj(phi)}
        const auto f_id = morphism_map(rho, phi, phi, num::identity(vphi * vphi), tol, seed);
        rep.add("unitality", (f_id.matrix - num::identity(f_id.matrix.rows())).norm(),
                tol.check_eps * 10.0);
    }
    {
        // (f) restriction to a left tensor factor
        const auto f_small = morphism_map(rho2, phi, psi, kk, tol, seed);
        double r = 0.0;
        for (const auto& s : f_small.in_basis) {
            const CMat lhs = f_k.apply(num::kron(num::identity(vr1), s));
            const CMat rhs = num::kron(num::identity(vr1), f_small.apply(s));
            r = std::max(r, (lhs - rhs).norm());
        }
        rep.add("restriction", r, tol.check_eps * 100.0);
    }
    return rep;
}

CMat jones_in_word(const Word& rho, const Letter& sigma, int k, int len) {
    if (len < k + 2) throw ShapeMismatch("jones_in_word: ambient word too short");
    const long v = sigma.obj->vdim;
    guard_cap(rho, rho.vdim() * pow_l(v, len), "jones_in_word");
    const CMat& vec = (k % 2 == 0) ? sigma.rbar : sigma.r;
    const CMat p = (vec * vec.adjoint()) / static_cast<double>(v);
    return num::kron(num::identity(rho.vdim() * pow_l(v, k)),
                     num::kron(p, num::identity(pow_l(v, len - k - 2))));
}

CMat nested_jones_projection(const Word& rho, const Letter& sigma, int m) {
    const long v = sigma.obj->vdim;
    guard_cap(rho, rho.vdim() * pow_l(v, 2 * m), "nested_jones_projection");
    const Word sm = cat::sigma_word(sigma, m, rho.algebra(), rho.cap());
    const auto& pair = sm.pair();
    const double dm = cat::statistical_dimension(sm);
    const CMat p = (pair.rbar * pair.rbar.adjoint()) / dm;
    return num::kron(num::identity(rho.vdim()), p);
}

ValidationReport check_nested_jones_factorization(const Word& rho, const Letter& sigma,
                                                  int m, const Tolerance& tol,
                                                  std::uint64_t seed) {
    ValidationReport rep;
    const double d = static_cast<double>(sigma.obj->vdim);
    const CMat g = nested_jones_projection(rho, sigma, m);

    rep.add("g_projection",
            std::max((g * g - g).norm(), (g - g.adjoint().eval()).norm()), tol.check_eps);

    // g_m = d^{(m-1)m} f_{m-1,0} f_{m,1} ... f_{2m-2,m-1}
    {
        CMat prod = num::identity(g.rows());
        for (int j = 0; j <= m - 1; ++j) {
            // block f_{m-1+j, j} = f_{m-1+j} f_{m-2+j} ... f_j
            for (int k = m - 1 + j; k >= j; --k)
                prod = prod * jones_in_word(rho, sigma, k, 2 * m);
        }
        double scale = 1.0;
        for (int i = 0; i < (m - 1) * m; ++i) scale *= d;
        rep.add("nested_jones_factorization", (g - scale * prod).norm(),
                tol.check_eps * 10.0);
    }

    // f(K x L)(S g T) = f(K)(S) g f(L)(T)
    {
        const Word sm = cat::sigma_word(sigma, m, rho.algebra(), rho.cap());
        const Word s2m = cat::sigma_word(sigma, 2 * m, rho.algebra(), rho.cap());
        const Word pair_word = Word::concat(sm, sm.conj());
        const auto kspace = corep::hom(pair_word.realized(), pair_word.realized(), tol, seed);
        num::Rng rng(seed ^ 0xeb1u);
        auto sample = [&]() {
            CMat x = num::zeros(pair_word.vdim(), pair_word.vdim());
            for (const auto& b : kspace.basis) x += cplx(rng.gauss(), rng.gauss()) * b;
            return x;
        };
        const CMat kk = sample(), ll = sample();
        const auto f_kl = morphism_map(rho, s2m, s2m, num::kron(kk, ll), tol, seed);
        const auto f_kk = morphism_map(rho, sm, sm, kk, tol, seed);
        const auto f_ll = morphism_map(rho, sm, sm, ll, tol, seed);

        double r = 0.0;
        const auto& basis = f_kk.in_basis;
        for (const auto& s : basis)
            for (const auto& t : basis) {
                const CMat sp = pad_word_end(rho, sigma, s, m, 2 * m);
                const CMat tp = pad_word_end(rho, sigma, t, m, 2 * m);
                const CMat lhs = f_kl.apply(sp * g * tp);
                const CMat rhs = pad_word_end(rho, sigma, f_kk.apply(s), m, 2 * m) * g *
                                 pad_word_end(rho, sigma, f_ll.apply(t), m, 2 * m);
                r = std::max(r, (lhs - rhs).norm());
            }
        rep.add("nested_product_rule", r, tol.check_eps * 100.0);
    }
    return rep;
}

} // namespace tensorcat::morphmap
