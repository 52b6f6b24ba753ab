#include "tensorcat/corep.hpp"

#include <cmath>

namespace tensorcat::corep {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = seed ^ (a * 0x9e3779b97f4a7c15ull) ^ (b * 0xc2b2ae3d27d4eb4full);
    z ^= z >> 29;
    z *= 0xff51afd7ed558ccdull;
    z ^= z >> 32;
    return z ? z : 1;
}

} // namespace

CVec Corepresentation::character() const {
    CVec chi(algebra->dim);
    for (int t = 0; t < algebra->dim; ++t) chi(t) = slices[t].trace();
    return chi;
}

CorepPtr make_corep(HopfPtr h, int vdim, std::vector<CMat> slices) {
    if (!h) throw ParseError("corepresentation without algebra");
    if (vdim < 1) throw ParseError("corepresentation with vdim < 1");
    if (static_cast<int>(slices.size()) != h->dim)
        throw DimensionMismatch("corepresentation needs one slice per basis element");
    for (const auto& s : slices) {
        if (s.rows() != vdim || s.cols() != vdim)
            throw DimensionMismatch("corepresentation slice has wrong shape");
        if (!num::all_finite(s)) throw ParseError("corepresentation slice has non-finite entries");
    }
    auto c = std::make_shared<Corepresentation>();
    c->algebra = std::move(h);
    c->vdim = vdim;
    c->slices = std::move(slices);
    return c;
}

CorepPtr identity_corep(const HopfPtr& h) {
    std::vector<CMat> slices;
    for (int t = 0; t < h->dim; ++t) {
        CMat m(1, 1);
        m(0, 0) = h->unit(t);
        slices.push_back(m);
    }
    return make_corep(h, 1, std::move(slices));
}

CorepPtr regular_corep(const HopfPtr& h) {
    const int n = h->dim;
    // orthonormalize the basis under <a,b> = tau(a b*)
    const CMat& gram = h->haar_pair_table();
    const auto eig = num::herm_eig(gram);
    Eigen::VectorXd lam = eig.values;
    CMat d_half = CMat::Zero(n, n), d_halfinv = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        if (lam(i) <= 0.0) throw NonFaithful("Haar Gram matrix not positive definite");
        d_half(i, i) = std::sqrt(lam(i));
        d_halfinv(i, i) = 1.0 / std::sqrt(lam(i));
    }
    const CMat D = d_halfinv * eig.vectors.adjoint();   // u_a = sum_i D(a,i) b_i
    const CMat Dinv = eig.vectors * d_half;             // b_j = sum_a Dinv(j,a) u_a
    std::vector<CMat> slices(n, CMat::Zero(n, n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int t = 0; t < n; ++t) {
                const cplx c = h->comult[i](j, t);
                if (c == cplx(0)) continue;
                // Delta(u_beta) = sum_alpha u_alpha (x) a_{alpha beta}
                for (int beta = 0; beta < n; ++beta) {
                    if (D(beta, i) == cplx(0)) continue;
                    for (int alpha = 0; alpha < n; ++alpha)
                        slices[t](alpha, beta) += D(beta, i) * Dinv(j, alpha) * c;
                }
            }
    return make_corep(h, n, std::move(slices));
}

CorepPtr from_group_rep(const HopfPtr& fun_g, const std::vector<CMat>& mats) {
    if (static_cast<int>(mats.size()) != fun_g->dim)
        throw DimensionMismatch("need one matrix per group element");
    return make_corep(fun_g, static_cast<int>(mats[0].rows()), mats);
}

CorepPtr from_grading(const HopfPtr& group_alg, const std::vector<int>& grades) {
    const int v = static_cast<int>(grades.size());
    std::vector<CMat> slices(group_alg->dim, CMat::Zero(v, v));
    for (int i = 0; i < v; ++i) {
        if (grades[i] < 0 || grades[i] >= group_alg->dim)
            throw ParseError("grade out of range");
        slices[grades[i]](i, i) = 1.0;
    }
    return make_corep(group_alg, v, std::move(slices));
}

CorepPtr standard_plane_corep(const HopfPtr& fun_g, const hopf::FiniteGroup& g) {
    if (g.point_action.empty()) throw ParseError("group carries no point action");
    const int npts = static_cast<int>(g.point_action[0].size());
    // orthonormal basis of the sum-zero hyperplane
    Eigen::MatrixXd basis(npts, npts - 1);
    for (int k = 0; k < npts - 1; ++k) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(npts);
        for (int i = 0; i <= k; ++i) v(i) = 1.0;
        v(k + 1) = -(k + 1.0);
        basis.col(k) = v / v.norm();
    }
    std::vector<CMat> mats;
    for (int e = 0; e < g.order; ++e) {
        Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(npts, npts);
        for (int x = 0; x < npts; ++x) perm(g.point_action[e][x], x) = 1.0;
        Eigen::MatrixXd m = basis.transpose() * perm * basis;
        mats.push_back(m.cast<cplx>());
    }
    return from_group_rep(fun_g, mats);
}

ValidationReport check_corep(const Corepresentation& s, const Tolerance& tol) {
    ValidationReport rep;
    const auto& h = *s.algebra;
    const int n = h.dim;
    {
        double r = 0.0;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                CMat rhs = CMat::Zero(s.vdim, s.vdim);
                for (int t = 0; t < n; ++t) {
                    const cplx c = h.comult[t](u, v);
                    if (c != cplx(0)) rhs += c * s.slices[t];
                }
                r = std::max(r, (s.slices[u] * s.slices[v] - rhs).norm());
            }
        rep.add("coassociativity", r, tol.check_eps);
    }
    {
        CMat acc = CMat::Zero(s.vdim, s.vdim);
        for (int t = 0; t < n; ++t) acc += h.counit(t) * s.slices[t];
        rep.add("counit", (acc - CMat::Identity(s.vdim, s.vdim)).norm(), tol.check_eps);
    }
    {
        // S(a_ij) = a_ji^*, compared slice-wise
        double r = 0.0;
        for (int u = 0; u < n; ++u) {
            CMat lhs = CMat::Zero(s.vdim, s.vdim), rhs = CMat::Zero(s.vdim, s.vdim);
            for (int t = 0; t < n; ++t) {
                if (h.antipode(u, t) != cplx(0)) lhs += h.antipode(u, t) * s.slices[t];
                if (h.star(u, t) != cplx(0)) rhs += h.star(u, t) * s.slices[t].adjoint();
            }
            r = std::max(r, (lhs - rhs).norm());
        }
        rep.add("unitarity", r, tol.check_eps);
    }
    return rep;
}

CorepPtr tensor(const CorepPtr& r, const CorepPtr& s) {
    if (r->algebra != s->algebra) throw AlgebraMismatch("tensor: different algebras");
    const int n = r->algebra->dim;
    const int v = r->vdim * s->vdim;
    std::vector<CMat> slices(n, CMat::Zero(v, v));
    for (int u = 0; u < n; ++u) {
        if (r->slices[u].isZero(0)) continue;
        for (int w = 0; w < n; ++w) {
            if (s->slices[w].isZero(0)) continue;
            const CVec& mv = r->algebra->mult[u * n + w];
            bool any = false;
            for (int t = 0; t < n; ++t)
                if (mv(t) != cplx(0)) { any = true; break; }
            if (!any) continue;
            const CMat k = num::kron(r->slices[u], s->slices[w]);
            for (int t = 0; t < n; ++t)
                if (mv(t) != cplx(0)) slices[t] += mv(t) * k;
        }
    }
    return make_corep(r->algebra, v, std::move(slices));
}

CorepPtr conjugate(const CorepPtr& s) {
    const int n = s->algebra->dim;
    std::vector<CMat> slices(n, CMat::Zero(s->vdim, s->vdim));
    for (int u = 0; u < n; ++u)
        for (int t = 0; t < n; ++t) {
            const cplx c = s->algebra->antipode(u, t);
            if (c != cplx(0)) slices[u] += c * s->slices[t].transpose();
        }
    return make_corep(s->algebra, s->vdim, std::move(slices));
}

int hom_dim(const Corepresentation& r, const Corepresentation& s) {
    const auto& h = *r.algebra;
    const CVec chi_r_star = h.apply_star(r.character());
    const cplx v = h.haar_of(h.product(s.character(), chi_r_star));
    const double d = std::round(v.real());
    if (std::abs(v - cplx(d)) > 1e-6)
        throw Error("hom_dim: character pairing is not an integer");
    return static_cast<int>(d);
}

CMat reynolds(const Corepresentation& r, const Corepresentation& s, const CMat& x) {
    CMat out = num::zeros(s.vdim, r.vdim);
    for (const auto& [si, ti, c] : r.algebra->haar_pair_nonzeros())
        out += c * (s.slices[si] * x * r.slices[ti].adjoint());
    return out;
}

namespace {

double intertwiner_residual(const Corepresentation& r, const Corepresentation& s,
                            const CMat& t) {
    double res = 0.0;
    for (int u = 0; u < r.algebra->dim; ++u)
        res = std::max(res, (t * r.slices[u] - s.slices[u] * t).norm());
    return res;
}

void finish_basis(MorphismSpace& ms, const Tolerance& tol) {
    for (auto& b : ms.basis) {
        CVec v = num::vec_rm(b);
        num::phase_fix(v);
        b = num::unvec_rm(v, b.rows(), b.cols());
        const double res = intertwiner_residual(*ms.source, *ms.target, b);
        if (res > tol.check_eps * 10.0)
            throw Error("hom: basis element fails the intertwiner equation, residual " +
                        std::to_string(res));
    }
}

} // namespace

MorphismSpace hom_via_nullspace(const CorepPtr& r, const CorepPtr& s, const Tolerance& tol) {
    if (r->algebra != s->algebra) throw AlgebraMismatch("hom: different algebras");
    const int n = r->algebra->dim;
    const Eigen::Index vr = r->vdim, vs = s->vdim;
    // T A_t - B_t T = 0 stacked over t, acting on vec_rm(T)
    CMat sys(n * vs * vr, vs * vr);
    const CMat idr = num::identity(vr), ids = num::identity(vs);
    for (int t = 0; t < n; ++t)
        sys.block(static_cast<Eigen::Index>(t) * vs * vr, 0, vs * vr, vs * vr) =
            num::kron(ids, r->slices[t].transpose()) - num::kron(s->slices[t], idr);
    MorphismSpace ms;
    ms.source = r;
    ms.target = s;
    for (const auto& v : num::null_space(sys, tol)) ms.basis.push_back(num::unvec_rm(v, vs, vr));
    finish_basis(ms, tol);
    return ms;
}

MorphismSpace hom(const CorepPtr& r, const CorepPtr& s, const Tolerance& tol,
                  std::uint64_t seed) {
    if (r->algebra != s->algebra) throw AlgebraMismatch("hom: different algebras");
    if (static_cast<long>(r->vdim) * s->vdim <= 256) return hom_via_nullspace(r, s, tol);

    const int d = hom_dim(*r, *s);
    MorphismSpace ms;
    ms.source = r;
    ms.target = s;
    if (d == 0) return ms;

    num::Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r->vdim),
                          static_cast<std::uint64_t>(s->vdim)));
    int probes = d + 4;
    for (int round = 0; round < 4 && ms.dim() < d; ++round) {
        std::vector<CMat> cand;
        for (const auto& b : ms.basis) cand.push_back(b);
        for (int k = 0; k < probes; ++k) {
            CMat p = reynolds(*r, *s, rng.matrix(s->vdim, r->vdim));
            const double nrm = num::fro(p);
            if (nrm > 1e-10) cand.push_back(p / nrm);
        }
        ms.basis = num::orthonormalize(cand, 1e-6);
        probes *= 2;
    }
    if (ms.dim() != d)
        throw Error("hom: projector rank " + std::to_string(ms.dim()) +
                    " does not match character dimension " + std::to_string(d));
    finish_basis(ms, tol);
    return ms;
}

DirectSum direct_sum(const std::vector<CorepPtr>& parts) {
    if (parts.empty()) throw DimensionMismatch("direct_sum: no parts");
    for (const auto& p : parts)
        if (p->algebra != parts[0]->algebra) throw AlgebraMismatch("direct_sum: different algebras");
    const int n = parts[0]->algebra->dim;
    int v = 0;
    for (const auto& p : parts) v += p->vdim;
    std::vector<CMat> slices(n, CMat::Zero(v, v));
    DirectSum out;
    int off = 0;
    for (const auto& p : parts) {
        for (int t = 0; t < n; ++t)
            slices[t].block(off, off, p->vdim, p->vdim) = p->slices[t];
        CMat iso = CMat::Zero(v, p->vdim);
        iso.block(off, 0, p->vdim, p->vdim) = CMat::Identity(p->vdim, p->vdim);
        out.isometries.push_back(iso);
        off += p->vdim;
    }
    out.total = make_corep(parts[0]->algebra, v, std::move(slices));
    return out;
}

std::vector<Component> decompose(const CorepPtr& s, const Tolerance& tol, std::uint64_t seed) {
    const int v = s->vdim;
    MorphismSpace end = hom(s, s, tol, seed);
    const int dimE = end.dim();

    std::vector<Component> out;
    if (dimE == 1) {
        Component c;
        c.rep = s;
        c.multiplicity = 1;
        c.isometries.push_back(CMat::Identity(v, v));
        c.projections.push_back(CMat::Identity(v, v));
        out.push_back(std::move(c));
        return out;
    }

    // center of End(s) in End-coordinates
    CMat sys(static_cast<Eigen::Index>(dimE) * v * v, dimE);
    for (int b = 0; b < dimE; ++b)
        for (int a = 0; a < dimE; ++a) {
            const CMat comm = end.basis[a] * end.basis[b] - end.basis[b] * end.basis[a];
            sys.block(static_cast<Eigen::Index>(b) * v * v, a, v * v, 1) = num::vec_rm(comm);
        }
    const auto center_coords = num::null_space(sys, tol);

    // deterministic Hermitian central element with generic spectrum
    num::Rng rng(mix_seed(seed ? seed : 1, static_cast<std::uint64_t>(v), 0xce27));
    CMat z = CMat::Zero(v, v);
    for (const auto& cc : center_coords) {
        CMat zk = CMat::Zero(v, v);
        for (int a = 0; a < dimE; ++a) zk += cc(a) * end.basis[a];
        const cplx w(rng.gauss(), rng.gauss());
        z += w * zk + std::conj(w) * zk.adjoint();
    }
    const auto zeig = num::herm_eig(z, tol);
    const auto clusters = num::cluster_ranges(zeig.values, 1e-7);

    // generic Hermitian element of End(s) to split each central block
    CMat y = CMat::Zero(v, v);
    for (int a = 0; a < dimE; ++a) {
        const cplx w(rng.gauss(), rng.gauss());
        y += w * end.basis[a] + std::conj(w) * end.basis[a].adjoint();
    }

    for (const auto& [b0, b1] : clusters) {
        const int rank = b1 - b0;
        CMat u(v, rank); // orthonormal basis of the central block's range
        for (int i = b0; i < b1; ++i) u.col(i - b0) = zeig.vectors.col(i);
        const CMat yc = u.adjoint() * y * u; // compressed, no complement pollution
        const auto yeig = num::herm_eig(yc, tol);
        const auto parts = num::cluster_ranges(yeig.values, 1e-7);

        Component comp;
        comp.multiplicity = static_cast<int>(parts.size());
        for (const auto& [c0, c1] : parts) {
            CMat w(rank, c1 - c0);
            for (int i = c0; i < c1; ++i) w.col(i - c0) = yeig.vectors.col(i);
            CMat iso = u * w; // v x d_pi isometry
            comp.isometries.push_back(iso);
            comp.projections.push_back(iso * iso.adjoint());
        }
        // subobject corepresentation off the first minimal projection
        const CMat& iso0 = comp.isometries[0];
        std::vector<CMat> sub;
        for (int t = 0; t < s->algebra->dim; ++t)
            sub.push_back(iso0.adjoint() * s->slices[t] * iso0);
        comp.rep = make_corep(s->algebra, static_cast<int>(iso0.cols()), std::move(sub));
        out.push_back(std::move(comp));
    }

    std::stable_sort(out.begin(), out.end(), [](const Component& a, const Component& b) {
        return a.rep->vdim < b.rep->vdim;
    });
    return out;
}

bool equivalent(const Corepresentation& a, const Corepresentation& b, const Tolerance& tol) {
    if (a.algebra != b.algebra || a.vdim != b.vdim) return false;
    return (a.character() - b.character()).norm() <=
           tol.check_eps * std::sqrt(static_cast<double>(a.vdim));
}

} // namespace tensorcat::corep
