#include "tensorcat/hopf.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tensorcat::hopf {

// ---------------------------------------------------------------- groups

int FiniteGroup::inverse(int i) const {
    for (int j = 0; j < order; ++j)
        if (table[i][j] == 0) return j;
    throw ParseError("group element has no inverse");
}

void FiniteGroup::validate() const {
    const int n = order;
    if (n <= 0 || static_cast<int>(table.size()) != n)
        throw ParseError("group table has wrong size");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw ParseError("group table not square");
        for (int v : row)
            if (v < 0 || v >= n) throw ParseError("group table entry out of range");
    }
    for (int i = 0; i < n; ++i)
        if (table[0][i] != i || table[i][0] != i)
            throw ParseError("index 0 is not the identity");
    for (int i = 0; i < n; ++i) {
        std::vector<bool> seen_r(n, false), seen_c(n, false);
        for (int j = 0; j < n; ++j) {
            seen_r[table[i][j]] = true;
            seen_c[table[j][i]] = true;
        }
        for (int j = 0; j < n; ++j)
            if (!seen_r[j] || !seen_c[j]) throw ParseError("group table row/column not a permutation");
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (table[table[i][j]][k] != table[i][table[j][k]])
                    throw ParseError("group table is not associative");
}

FiniteGroup FiniteGroup::cyclic(int n) {
    FiniteGroup g;
    g.order = n;
    g.table.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.table[i][j] = (i + j) % n;
    for (int i = 0; i < n; ++i) g.labels.push_back(std::to_string(i));
    g.point_action.assign(n, std::vector<int>(n, 0));
    for (int k = 0; k < n; ++k)
        for (int x = 0; x < n; ++x) g.point_action[k][x] = (x + k) % n;
    return g;
}

FiniteGroup FiniteGroup::symmetric(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);

    FiniteGroup g;
    g.order = static_cast<int>(perms.size());
    g.table.assign(g.order, std::vector<int>(g.order, 0));
    for (int i = 0; i < g.order; ++i)
        for (int j = 0; j < g.order; ++j) {
            std::vector<int> c(n);
            for (int x = 0; x < n; ++x) c[x] = perms[i][perms[j][x]];
            g.table[i][j] = index[c];
        }
    for (const auto& q : perms) {
        std::string s;
        for (int x : q) s += std::to_string(x);
        g.labels.push_back(s);
    }
    g.point_action = perms;
    return g;
}

// ------------------------------------------------------------- algebra ops

CVec HopfStarAlgebra::product(const CVec& a, const CVec& b) const {
    CVec out = CVec::Zero(dim);
    for (int i = 0; i < dim; ++i) {
        if (a(i) == cplx(0)) continue;
        for (int j = 0; j < dim; ++j) {
            if (b(j) == cplx(0)) continue;
            out += a(i) * b(j) * mult[i * dim + j];
        }
    }
    return out;
}

cplx HopfStarAlgebra::haar_of(const CVec& a) const {
    if (!has_haar()) throw NoSolution("Haar trace not computed");
    return haar.cwiseProduct(a).sum();
}

const CMat& HopfStarAlgebra::haar_pair_table() const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (!pair_cached_) {
        if (!has_haar()) throw NoSolution("Haar trace not computed");
        pair_table_ = CMat::Zero(dim, dim);
        for (int s = 0; s < dim; ++s)
            for (int t = 0; t < dim; ++t) {
                // b_t^* = sum_k star(k,t) b_k
                cplx v = 0.0;
                for (int k = 0; k < dim; ++k) {
                    const cplx c = star(k, t);
                    if (c == cplx(0)) continue;
                    v += c * haar.cwiseProduct(mult[s * dim + k]).sum();
                }
                pair_table_(s, t) = v;
            }
        pair_nonzeros_.clear();
        for (int s = 0; s < dim; ++s)
            for (int t = 0; t < dim; ++t)
                if (std::abs(pair_table_(s, t)) > 1e-14)
                    pair_nonzeros_.emplace_back(s, t, pair_table_(s, t));
        pair_cached_ = true;
    }
    return pair_table_;
}

const std::vector<std::tuple<int, int, cplx>>& HopfStarAlgebra::haar_pair_nonzeros() const {
    haar_pair_table();
    return pair_nonzeros_;
}

// ------------------------------------------------------------ validation

namespace {

double vec_dist(const CVec& a, const CVec& b) { return (a - b).norm(); }

} // namespace

ValidationReport check_axioms(const HopfStarAlgebra& h, const Tolerance& tol) {
    ValidationReport rep;
    const int n = h.dim;
    const double eps = tol.check_eps;

    auto e = [&](int i) {
        CVec v = CVec::Zero(n);
        v(i) = 1.0;
        return v;
    };

    {
        double r = 0.0;
        for (int i = 0; i < n; ++i) {
            r = std::max(r, vec_dist(h.product(h.unit, e(i)), e(i)));
            r = std::max(r, vec_dist(h.product(e(i), h.unit), e(i)));
        }
        rep.add("unit_law", r, eps);
    }
    {
        double r = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const CVec ij = h.mult[i * n + j];
                for (int k = 0; k < n; ++k)
                    r = std::max(r, vec_dist(h.product(ij, e(k)), h.product(e(i), h.mult[j * n + k])));
            }
        rep.add("associativity", r, eps);
    }
    {
        // (Delta (x) id)Delta = (id (x) Delta)Delta, compared as 3-tensors
        double r = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q)
                    for (int s = 0; s < n; ++s) {
                        cplx lhs = 0.0, rhs = 0.0;
                        for (int m = 0; m < n; ++m) {
                            lhs += h.comult[i](m, s) * h.comult[m](p, q);
                            rhs += h.comult[i](p, m) * h.comult[m](q, s);
                        }
                        r = std::max(r, std::abs(lhs - rhs));
                    }
        }
        rep.add("coassociativity", r, eps);
    }
    {
        double r = 0.0;
        for (int i = 0; i < n; ++i) {
            CVec left = CVec::Zero(n), right = CVec::Zero(n);
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    left(k) += h.counit(j) * h.comult[i](j, k);
                    right(j) += h.counit(k) * h.comult[i](j, k);
                }
            r = std::max(r, vec_dist(left, e(i)));
            r = std::max(r, vec_dist(right, e(i)));
        }
        rep.add("counit_law", r, eps);
    }
    {
        // Delta and eps are algebra homomorphisms
        double r = 0.0, rc = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CMat lhs = CMat::Zero(n, n);
                for (int k = 0; k < n; ++k) lhs += h.mult[i * n + j](k) * h.comult[k];
                CMat rhs = CMat::Zero(n, n);
                for (int u = 0; u < n; ++u)
                    for (int v = 0; v < n; ++v) {
                        const cplx cuv = h.comult[i](u, v);
                        if (cuv == cplx(0)) continue;
                        for (int w = 0; w < n; ++w)
                            for (int x = 0; x < n; ++x) {
                                const cplx cwx = h.comult[j](w, x);
                                if (cwx == cplx(0)) continue;
                                const CVec uw = h.mult[u * n + w];
                                const CVec vx = h.mult[v * n + x];
                                for (int p = 0; p < n; ++p) {
                                    if (uw(p) == cplx(0)) continue;
                                    rhs.row(p) += cuv * cwx * uw(p) * vx.transpose();
                                }
                            }
                    }
                r = std::max(r, (lhs - rhs).norm());
                rc = std::max(rc, std::abs(h.apply_counit(h.mult[i * n + j]) - h.counit(i) * h.counit(j)));
            }
        rep.add("comult_homomorphism", r, eps);
        rc = std::max(rc, std::abs(h.apply_counit(h.unit) - cplx(1.0)));
        rep.add("counit_homomorphism", rc, eps);
    }
    {
        // m(S (x) id)Delta(a) = eps(a) 1 = m(id (x) S)Delta(a)
        double r = 0.0;
        for (int i = 0; i < n; ++i) {
            CVec left = CVec::Zero(n), right = CVec::Zero(n);
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const cplx c = h.comult[i](j, k);
                    if (c == cplx(0)) continue;
                    left += c * h.product(h.apply_antipode(e(j)), e(k));
                    right += c * h.product(e(j), h.apply_antipode(e(k)));
                }
            r = std::max(r, vec_dist(left, h.counit(i) * h.unit));
            r = std::max(r, vec_dist(right, h.counit(i) * h.unit));
        }
        rep.add("antipode_convolution", r, eps);
    }
    rep.add("antipode_involutive", (h.antipode * h.antipode - CMat::Identity(n, n)).norm(), eps);
    rep.add("star_involution", (h.star * h.star.conjugate() - CMat::Identity(n, n)).norm(), eps);
    {
        double r = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const CVec lhs = h.star * h.mult[i * n + j].conjugate();
                const CVec rhs = h.product(h.apply_star(e(j)), h.apply_star(e(i)));
                r = std::max(r, vec_dist(lhs, rhs));
            }
        rep.add("star_antimultiplicative", r, eps);
        rep.add("star_unit", vec_dist(h.apply_star(h.unit), h.unit), eps);
    }
    {
        // Delta(a*) = Delta(a)^{* (x) *} and eps(a*) = conj(eps(a))
        double r = 0.0, rc = 0.0;
        for (int i = 0; i < n; ++i) {
            CMat lhs = CMat::Zero(n, n);
            for (int j = 0; j < n; ++j)
                if (h.star(j, i) != cplx(0)) lhs += h.star(j, i) * h.comult[j];
            const CMat rhs = h.star * h.comult[i].conjugate() * h.star.transpose();
            r = std::max(r, (lhs - rhs).norm());
            rc = std::max(rc, std::abs(h.apply_counit(h.apply_star(e(i))) - std::conj(h.counit(i))));
        }
        rep.add("hopf_star_comult", r, eps);
        rep.add("hopf_star_counit", rc, eps);
    }
    {
        // S(S(a*)*) = a
        double r = 0.0;
        for (int i = 0; i < n; ++i) {
            const CVec v = h.apply_antipode(h.apply_star(h.apply_antipode(h.apply_star(e(i)))));
            r = std::max(r, vec_dist(v, e(i)));
        }
        rep.add("antipode_star_compat", r, eps);
    }
    return rep;
}

CVec haar_trace(HopfStarAlgebra& h, const Tolerance& tol) {
    const int n = h.dim;
    // invariance equations, homogeneous in the unknown vector t = (tau(b_i))
    CMat sys = CMat::Zero(2 * n * n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < n; ++j) {
                sys(i * n + k, j) += h.comult[i](j, k);
                sys(n * n + i * n + k, j) += h.comult[i](k, j);
            }
            sys(i * n + k, i) -= h.unit(k);
            sys(n * n + i * n + k, i) -= h.unit(k);
        }
    const auto kernel = num::null_space(sys, tol);
    if (kernel.empty()) throw NoSolution("Haar system has no solution");
    if (kernel.size() > 1) throw NoSolution("Haar system solution is not unique");
    CVec t = kernel[0];
    const cplx norm = t.cwiseProduct(h.unit).sum();
    if (std::abs(norm) < tol.rank_eps) throw NoSolution("Haar solution not normalizable");
    t /= norm;

    // traciality
    double r = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r = std::max(r, std::abs(t.cwiseProduct(h.mult[i * n + j]).sum() -
                                     t.cwiseProduct(h.mult[j * n + i]).sum()));
    if (r > tol.check_eps) throw NoSolution("Haar functional is not tracial");

    // faithfulness: Gram matrix tau(b_i b_j^*) must be positive definite
    CMat gram = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx v = 0.0;
            for (int k = 0; k < n; ++k) {
                const cplx c = h.star(k, j);
                if (c == cplx(0)) continue;
                v += c * t.cwiseProduct(h.mult[i * n + k]).sum();
            }
            gram(i, j) = v;
        }
    num::HermEig eig;
    try {
        eig = num::herm_eig(gram, tol);
    } catch (const NotHermitian&) {
        throw NonFaithful("Haar Gram matrix is not Hermitian");
    }
    if (eig.values(0) <= tol.rank_eps * std::max(eig.values(eig.values.size() - 1), 1.0))
        throw NonFaithful("Haar trace is not faithful");

    h.haar = t;
    return t;
}

// ------------------------------------------------------- derived algebras

HopfStarAlgebra cop(const HopfStarAlgebra& h) {
    HopfStarAlgebra out = h;
    out.haar = CVec();
    for (int i = 0; i < h.dim; ++i) out.comult[i] = h.comult[i].transpose().eval();
    return out;
}

HopfStarAlgebra op(const HopfStarAlgebra& h) {
    HopfStarAlgebra out = h;
    out.haar = CVec();
    for (int i = 0; i < h.dim; ++i)
        for (int j = 0; j < h.dim; ++j) out.mult[i * h.dim + j] = h.mult[j * h.dim + i];
    return out;
}

HopfStarAlgebra dual(const HopfStarAlgebra& h) {
    const int n = h.dim;
    HopfStarAlgebra o;
    o.dim = n;
    for (int i = 0; i < n; ++i) o.basis_labels.push_back(h.basis_labels[i] + "^");
    // multiplication dual to comultiplication: (f_i f_j)(b_k) = Delta(b_k)(i,j)
    o.mult.assign(n * n, CVec::Zero(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) o.mult[i * n + j](k) = h.comult[k](i, j);
    // comultiplication dual to multiplication
    o.comult.assign(n, CMat::Zero(n, n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) o.comult[k](i, j) = h.mult[i * n + j](k);
    o.unit = h.counit;  // eps as an element of the dual
    o.counit = h.unit;  // evaluation at 1
    o.antipode = h.antipode.transpose();
    // f*(a) = conj(f(S(a)*)) on the dual basis
    o.star = (h.star.conjugate() * h.antipode).transpose();
    return o;
}

HopfStarAlgebra group_algebra(const FiniteGroup& g) {
    g.validate();
    const int n = g.order;
    HopfStarAlgebra h;
    h.dim = n;
    h.basis_labels = g.labels;
    h.unit = CVec::Zero(n);
    h.unit(0) = 1.0;
    h.mult.assign(n * n, CVec::Zero(n));
    h.comult.assign(n, CMat::Zero(n, n));
    h.counit = CVec::Ones(n);
    h.antipode = CMat::Zero(n, n);
    h.star = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) h.mult[i * n + j](g.table[i][j]) = 1.0;
        h.comult[i](i, i) = 1.0;
        const int inv = g.inverse(i);
        h.antipode(inv, i) = 1.0;
        h.star(inv, i) = 1.0;
    }
    return h;
}

HopfStarAlgebra fun_algebra(const FiniteGroup& g) {
    g.validate();
    const int n = g.order;
    HopfStarAlgebra h;
    h.dim = n;
    for (const auto& l : g.labels) h.basis_labels.push_back("d_" + l);
    h.unit = CVec::Ones(n);
    h.mult.assign(n * n, CVec::Zero(n));
    h.comult.assign(n, CMat::Zero(n, n));
    h.counit = CVec::Zero(n);
    h.counit(0) = 1.0;
    h.antipode = CMat::Zero(n, n);
    h.star = CMat::Identity(n, n);
    for (int i = 0; i < n; ++i) {
        h.mult[i * n + i](i) = 1.0;
        h.antipode(g.inverse(i), i) = 1.0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (g.table[j][k] == i) h.comult[i](j, k) = 1.0;
    }
    return h;
}

double structure_distance(const HopfStarAlgebra& a, const HopfStarAlgebra& b) {
    if (a.dim != b.dim) throw DimensionMismatch("structure_distance: dimensions differ");
    double r = (a.unit - b.unit).cwiseAbs().maxCoeff();
    r = std::max(r, (a.counit - b.counit).cwiseAbs().maxCoeff());
    r = std::max(r, (a.antipode - b.antipode).cwiseAbs().maxCoeff());
    r = std::max(r, (a.star - b.star).cwiseAbs().maxCoeff());
    for (int i = 0; i < a.dim; ++i) {
        r = std::max(r, (a.comult[i] - b.comult[i]).cwiseAbs().maxCoeff());
        for (int j = 0; j < a.dim; ++j)
            r = std::max(r, (a.mult[i * a.dim + j] - b.mult[i * a.dim + j]).cwiseAbs().maxCoeff());
    }
    return r;
}

HopfPtr finalize(HopfStarAlgebra h, const Tolerance& tol) {
    auto rep = check_axioms(h, tol);
    if (!rep.pass()) {
        std::string bad;
        for (const auto& it : rep.items)
            if (!it.pass) bad += it.name + " ";
        throw NoSolution("Hopf axioms fail: " + bad);
    }
    haar_trace(h, tol);
    return std::make_shared<const HopfStarAlgebra>(std::move(h));
}

} // namespace tensorcat::hopf
