#include "tensorcat/fixedpoint.hpp"

namespace tensorcat::fixedpoint {

DualRep dual_rep(const CorepPtr& s, const Tolerance& tol) {
    DualRep d;
    d.source = s;
    d.images = s->slices;
    // multiplicativity for the dual product (f_u f_v)(b_t) = Delta(b_t)(u,v)
    const auto& h = *s->algebra;
    double r = 0.0;
    for (int u = 0; u < h.dim; ++u)
        for (int v = 0; v < h.dim; ++v) {
            CMat rhs = num::zeros(s->vdim, s->vdim);
            for (int t = 0; t < h.dim; ++t) {
                const cplx c = h.comult[t](u, v);
                if (c != cplx(0)) rhs += c * d.images[t];
            }
            r = std::max(r, (d.images[u] * d.images[v] - rhs).norm());
        }
    if (r > tol.check_eps * 10.0)
        throw Error("dual representation is not multiplicative, residual " + std::to_string(r));
    return d;
}

AdjointAction adjoint_action(const DualRep& mu, const HopfPtr& k) {
    AdjointAction act;
    act.k = k;
    act.rep = mu;
    const long v = mu.source->vdim;
    act.vdim = v;
    const int n = k->dim;

    // mu(S_K(a_t)) for every basis functional
    std::vector<CMat> s_images(n, num::zeros(v, v));
    for (int t = 0; t < n; ++t)
        for (int w = 0; w < n; ++w) {
            const cplx c = k->antipode(w, t);
            if (c != cplx(0)) s_images[t] += c * mu.images[w];
        }

    for (int t = 0; t < n; ++t) {
        CMat op = num::zeros(v * v, v * v);
        for (int u = 0; u < n; ++u)
            for (int w = 0; w < n; ++w) {
                const cplx c = k->comult[t](u, w);
                if (c == cplx(0)) continue;
                // x -> mu(a_u) x s_images[w], on vec_rm coordinates
                op += c * num::kron(mu.images[u], s_images[w].transpose());
            }
        act.ops.push_back(op);
    }
    return act;
}

ValidationReport check_action_axioms(const AdjointAction& act, const Tolerance& tol) {
    ValidationReport rep;
    const auto& k = *act.k;
    const int n = k.dim;
    const long v = act.vdim;
    const long d2 = v * v;

    {
        // representation property and nondegeneracy
        double r = 0.0;
        for (int u = 0; u < n; ++u)
            for (int w = 0; w < n; ++w) {
                CMat rhs = num::zeros(d2, d2);
                for (int t = 0; t < n; ++t) {
                    const cplx c = k.mult[u * n + w](t);
                    if (c != cplx(0)) rhs += c * act.ops[t];
                }
                r = std::max(r, (act.ops[u] * act.ops[w] - rhs).norm());
            }
        CMat unit_op = num::zeros(d2, d2);
        for (int t = 0; t < n; ++t)
            if (k.unit(t) != cplx(0)) unit_op += k.unit(t) * act.ops[t];
        r = std::max(r, (unit_op - num::identity(d2)).norm());
        rep.add("representation", r, tol.check_eps * 10.0);
    }
    {
        // alpha(a)(xy) = sum alpha(a^(1))x alpha(a^(2))y on matrix units
        double r = 0.0;
        auto unit_mat = [&](long i, long j) {
            CMat e = num::zeros(v, v);
            e(i, j) = 1.0;
            return e;
        };
        auto apply = [&](const CMat& op, const CMat& x) {
            return num::unvec_rm(op * num::vec_rm(x), v, v);
        };
        for (int t = 0; t < n; ++t)
            for (long i = 0; i < v; ++i)
                for (long j = 0; j < v; ++j) {
                    const CMat x = unit_mat(i, j);
                    const CMat y = unit_mat(j, (i + 1) % v);
                    const CMat lhs = apply(act.ops[t], x * y);
                    CMat rhs = num::zeros(v, v);
                    for (int u = 0; u < n; ++u)
                        for (int w = 0; w < n; ++w) {
                            const cplx c = k.comult[t](u, w);
                            if (c != cplx(0))
                                rhs += c * (apply(act.ops[u], x) * apply(act.ops[w], y));
                        }
                    r = std::max(r, (lhs - rhs).norm());
                }
        rep.add("product_rule", r, tol.check_eps * 10.0);
    }
    {
        // alpha(a) 1 = eps(a) 1
        double r = 0.0;
        for (int t = 0; t < n; ++t) {
            const CMat lhs = num::unvec_rm(act.ops[t] * num::vec_rm(num::identity(v)), v, v);
            r = std::max(r, (lhs - k.counit(t) * num::identity(v)).norm());
        }
        rep.add("unit_rule", r, tol.check_eps * 10.0);
    }
    {
        // (alpha(a)x)* = alpha(S(a)*)x*
        double r = 0.0;
        num::Rng rng(97);
        const CMat x = rng.matrix(v, v);
        for (int t = 0; t < n; ++t) {
            const CMat lhs = num::unvec_rm(act.ops[t] * num::vec_rm(x), v, v).adjoint();
            // S(a_t)* as a coefficient vector over the K basis
            CVec coeff = act.k->star * (act.k->antipode.col(t)).conjugate();
            CMat rhs_op = num::zeros(v * v, v * v);
            for (int w = 0; w < n; ++w)
                if (coeff(w) != cplx(0)) rhs_op += coeff(w) * act.ops[w];
            const CMat rhs = num::unvec_rm(rhs_op * num::vec_rm(x.adjoint().eval()), v, v);
            r = std::max(r, (lhs - rhs).norm());
        }
        rep.add("star_rule", r, tol.check_eps * 100.0);
    }
    return rep;
}

FixedPoints fixed_points(const AdjointAction& act, const Tolerance& tol) {
    const auto& k = *act.k;
    const int n = k.dim;
    const long d2 = act.vdim * act.vdim;

    CMat sys(static_cast<Eigen::Index>(n) * d2, d2);
    for (int t = 0; t < n; ++t)
        sys.block(static_cast<Eigen::Index>(t) * d2, 0, d2, d2) =
            act.ops[t] - k.counit(t) * num::identity(d2);
    FixedPoints out;
    std::vector<CVec> vecs = num::null_space(sys, tol);
    for (const auto& v : vecs) out.basis.push_back(num::unvec_rm(v, act.vdim, act.vdim));

    const auto comm = num::commutant_basis(act.rep.images, tol);
    out.commutant_dim = static_cast<int>(comm.size());

    if (out.commutant_dim != static_cast<int>(out.basis.size())) {
        out.span_gap = 1.0;
        return out;
    }
    if (out.basis.empty()) return out;
    // principal angles between the two spans
    const int m = static_cast<int>(out.basis.size());
    CMat b1(d2, m), b2(d2, m);
    for (int i = 0; i < m; ++i) {
        b1.col(i) = num::vec_rm(out.basis[i]);
        b2.col(i) = num::vec_rm(comm[i]) / comm[i].norm();
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b1.adjoint() * b2);
    double gap = 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        gap = std::max(gap, std::abs(1.0 - svd.singularValues()(i)));
    out.span_gap = gap;
    return out;
}

ValidationReport check_tower_action_consistency(const CorepPtr& rho, const CorepPtr& tau,
                                                const HopfPtr& k, const Tolerance& tol) {
    const auto both = corep::tensor(rho, tau);
    const auto act_big = adjoint_action(dual_rep(both, tol), k);
    const auto act_tau = adjoint_action(dual_rep(tau, tol), k);
    const long vr = rho->vdim, vt = tau->vdim;

    ValidationReport rep;
    double r = 0.0;
    for (int t = 0; t < k->dim; ++t) {
        for (long i = 0; i < vt; ++i)
            for (long j = 0; j < vt; ++j) {
                CMat x = num::zeros(vt, vt);
                x(i, j) = 1.0;
                const CMat lhs = num::unvec_rm(
                    act_big.ops[t] * num::vec_rm(num::kron(num::identity(vr), x)),
                    vr * vt, vr * vt);
                const CMat inner = num::unvec_rm(act_tau.ops[t] * num::vec_rm(x), vt, vt);
                const CMat rhs = num::kron(num::identity(vr), inner);
                r = std::max(r, (lhs - rhs).norm());
            }
    }
    rep.add("tower_action_consistency", r, tol.check_eps * 10.0);
    return rep;
}

std::optional<int> outer_action_power(const Letter& sigma, int n_max, const HopfPtr& h,
                                      const Tolerance& tol, std::uint64_t seed) {
    cat::IrreducibleRegistry reg;
    reg.build(sigma, h, tol, seed);
    const Word ssb = cat::sigma_word(sigma, 2, h, 1 << 20);
    std::vector<long long> cur(reg.size(), 0);
    cur[0] = 1;
    const auto step = reg.class_vector(ssb);
    // classes of (sigma conj(sigma))^n by iterated fusion with the pair word
    for (int n = 1; n <= n_max; ++n) {
        std::vector<long long> next(reg.size(), 0);
        for (int j = 0; j < reg.size(); ++j) {
            if (cur[j] == 0) continue;
            for (int c = 0; c < reg.size(); ++c) {
                if (step[c] == 0) continue;
                const auto& fu = reg.fusion(j, c);
                for (int x = 0; x < reg.size(); ++x) next[x] += cur[j] * step[c] * fu[x];
            }
        }
        cur = std::move(next);
        bool full = true;
        for (int x = 0; x < reg.size(); ++x)
            if (cur[x] == 0) full = false;
        if (full) return n;
    }
    return std::nullopt;
}

ValidationReport check_conjugate_action_equivalence(const CorepPtr& s, const HopfPtr& k,
                                                    const Tolerance& tol) {
    const long v = s->vdim;
    const auto act = adjoint_action(dual_rep(s, tol), k);
    const auto pair_rep = corep::tensor(corep::conjugate(s), s);

    // U(e_ij) = (1/sqrt(v)) w_j (x) w_i on vec_rm coordinates
    CMat u = num::zeros(v * v, v * v);
    for (long i = 0; i < v; ++i)
        for (long j = 0; j < v; ++j) u(j * v + i, i * v + j) = 1.0 / std::sqrt(double(v));

    ValidationReport rep;
    // unitary for the normalized-trace inner product on End(V)
    rep.add("unitary", (double(v) * (u.adjoint() * u) - num::identity(v * v)).norm(),
            tol.check_eps);
    double r = 0.0;
    for (int t = 0; t < k->dim; ++t)
        r = std::max(r, (u * act.ops[t] - pair_rep->slices[t] * u).norm());
    rep.add("intertwines", r, tol.check_eps * 10.0);
    return rep;
}

} // namespace tensorcat::fixedpoint
