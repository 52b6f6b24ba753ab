#pragma once

// Test-side oracles, kept independent of the library's linear-algebra
// paths: plain Gaussian elimination and character arithmetic computed
// straight from permutation data.

#include <complex>
#include <vector>

#include "tensorcat/hopf.hpp"

namespace oracles {

using cplx = std::complex<double>;

// Null-space basis by Gaussian elimination with partial pivoting.
inline std::vector<std::vector<cplx>> gauss_null_space(std::vector<std::vector<cplx>> a,
                                                       int cols, double eps = 1e-10) {
    const int rows = static_cast<int>(a.size());
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int best = -1;
        double mag = eps;
        for (int i = r; i < rows; ++i)
            if (std::abs(a[i][c]) > mag) {
                mag = std::abs(a[i][c]);
                best = i;
            }
        if (best < 0) continue;
        std::swap(a[r], a[best]);
        const cplx p = a[r][c];
        for (int j = 0; j < cols; ++j) a[r][j] /= p;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            const cplx f = a[i][c];
            if (std::abs(f) < eps) continue;
            for (int j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<cplx>> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<cplx> v(cols, 0.0);
        v[c] = 1.0;
        for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i) v[pivot_col[i]] = -a[i][c];
        basis.push_back(v);
    }
    return basis;
}

// Commutant dimension of a set of n x n matrices, via gauss_null_space on
// the stacked equations X g = g X.
inline int commutant_dim(const std::vector<std::vector<std::vector<cplx>>>& gens) {
    const int n = static_cast<int>(gens[0].size());
    std::vector<std::vector<cplx>> sys;
    for (const auto& g : gens) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<cplx> row(n * n, 0.0);
                // (X g - g X)_{ij} = sum_k X_ik g_kj - g_ik X_kj
                for (int k = 0; k < n; ++k) {
                    row[i * n + k] += g[k][j];
                    row[k * n + j] -= g[i][k];
                }
                sys.push_back(row);
            }
    }
    return static_cast<int>(gauss_null_space(sys, n * n).size());
}

// Characters of a finite group from its point action: trivial, sign
// (permutation parity) and the permutation character.
inline double perm_parity(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 == 0 ? 1.0 : -1.0;
}

inline int fixed_points(const std::vector<int>& p) {
    int f = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] == static_cast<int>(i)) ++f;
    return f;
}

struct GroupCharacters {
    std::vector<std::vector<cplx>> chars; // chars[k][g]
};

// S_n: trivial, sign, and the (n-1)-dimensional standard character.
inline GroupCharacters characters_symmetric(const tensorcat::hopf::FiniteGroup& g) {
    GroupCharacters gc;
    std::vector<cplx> triv(g.order, 1.0), sgn(g.order), stdc(g.order);
    for (int e = 0; e < g.order; ++e) {
        sgn[e] = perm_parity(g.point_action[e]);
        stdc[e] = fixed_points(g.point_action[e]) - 1.0;
    }
    gc.chars = {triv, sgn, stdc};
    return gc;
}

inline GroupCharacters characters_cyclic(int n) {
    GroupCharacters gc;
    for (int k = 0; k < n; ++k) {
        std::vector<cplx> chi(n);
        for (int j = 0; j < n; ++j)
            chi[j] = std::polar(1.0, 2.0 * M_PI * k * j / n);
        gc.chars.push_back(chi);
    }
    return gc;
}

// dim hom = (1/|G|) sum_g conj(chi_a(g)) chi_b(g)
inline int hom_dim_oracle(const std::vector<cplx>& chi_a, const std::vector<cplx>& chi_b) {
    cplx s = 0.0;
    for (std::size_t g = 0; g < chi_a.size(); ++g) s += std::conj(chi_a[g]) * chi_b[g];
    const double v = (s / static_cast<double>(chi_a.size())).real();
    return static_cast<int>(std::lround(v));
}

inline std::vector<cplx> chi_product(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> out(a.size());
    for (std::size_t g = 0; g < a.size(); ++g) out[g] = a[g] * b[g];
    return out;
}

inline std::vector<cplx> chi_conj_class(const tensorcat::hopf::FiniteGroup& g,
                                        const std::vector<cplx>& chi) {
    // character of the contragredient: chi(g^{-1})
    std::vector<cplx> out(chi.size());
    for (int e = 0; e < g.order; ++e) out[e] = chi[g.inverse(e)];
    return out;
}

} // namespace oracles
