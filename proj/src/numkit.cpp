#include "tensorcat/numkit.hpp"

#include <cmath>

namespace tensorcat::num {

CMat identity(Eigen::Index n) { return CMat::Identity(n, n); }
CMat zeros(Eigen::Index r, Eigen::Index c) { return CMat::Zero(r, c); }

double fro(const CMat& a) { return a.norm(); }

bool all_finite(const CMat& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const cplx v = a(i, j);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        }
    return true;
}

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMat kron_apply_mid(long left, const CMat& b, long right, const CMat& m) {
    const long bc = b.cols(), br = b.rows();
    if (m.rows() != left * bc * right)
        throw DimensionMismatch("kron_apply_mid: row count mismatch");
    CMat out(left * br * right, m.cols());
    CVec col(m.rows()), res;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        col = m.col(c);
        for (long l = 0; l < left; ++l) {
            Eigen::Map<const CMat> x(col.data() + l * bc * right, bc, right);
            CMat y = b * x;
            for (long i = 0; i < br; ++i)
                for (long j = 0; j < right; ++j)
                    out(l * br * right + i * right + j, c) = y(i, j);
        }
    }
    return out;
}

CVec vec_rm(const CMat& a) {
    CVec v(a.rows() * a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
    return v;
}

CMat unvec_rm(const CVec& v, Eigen::Index r, Eigen::Index c) {
    if (v.size() != r * c) throw DimensionMismatch("unvec_rm: size mismatch");
    CMat a(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) a(i, j) = v(i * c + j);
    return a;
}

void phase_fix(CVec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double m = std::abs(v(i));
        if (m > 1e-9) {
            v *= std::conj(v(i)) / m;
            return;
        }
    }
}

std::vector<CVec> null_space(const CMat& a, const Tolerance& tol) {
    const Eigen::Index n = a.cols();
    std::vector<CVec> basis;
    if (n == 0) return basis;
    if (a.rows() == 0 || fro(a) == 0.0) {
        for (Eigen::Index j = 0; j < n; ++j) {
            CVec e = CVec::Zero(n);
            e(j) = 1.0;
            basis.push_back(e);
        }
        return basis;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    // quantities here are O(1)-normalized, so singular values at or below
    // rank_eps carry no rank even when the matrix is not exactly zero
    const double cut = tol.rank_eps * std::max(smax, 1.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++rank;
    // ascending singular-value order: last column of V first
    for (Eigen::Index j = n - 1; j >= rank; --j) {
        CVec v = svd.matrixV().col(j);
        phase_fix(v);
        basis.push_back(v);
    }
    return basis;
}

HermEig herm_eig(const CMat& a, const Tolerance& tol) {
    if (a.rows() != a.cols()) throw DimensionMismatch("herm_eig: not square");
    const double scale = std::max(fro(a), 1.0);
    const double herm_res = fro(a - a.adjoint().eval());
    if (herm_res > tol.check_eps * scale)
        throw NotHermitian("herm_eig: matrix is not Hermitian, residual " +
                           std::to_string(herm_res));
    Eigen::MatrixXcd sym = 0.5 * (a + a.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
    HermEig out;
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
    for (Eigen::Index j = 0; j < out.vectors.cols(); ++j) {
        CVec v = out.vectors.col(j);
        phase_fix(v);
        out.vectors.col(j) = v;
    }
    return out;
}

std::vector<std::pair<int, int>> cluster_ranges(const Eigen::VectorXd& values,
                                                double rank_eps) {
    std::vector<std::pair<int, int>> ranges;
    const int n = static_cast<int>(values.size());
    if (n == 0) return ranges;
    const double scale = std::max(values.cwiseAbs().maxCoeff(), 1.0);
    int start = 0;
    for (int i = 1; i <= n; ++i) {
        if (i == n || values(i) - values(i - 1) > rank_eps * scale) {
            ranges.emplace_back(start, i);
            start = i;
        }
    }
    return ranges;
}

std::vector<CMat> commutant_basis(const std::vector<CMat>& gens,
                                  const Tolerance& tol) {
    if (gens.empty()) throw DimensionMismatch("commutant_basis: no generators");
    const Eigen::Index n = gens[0].rows();
    for (const auto& g : gens)
        if (g.rows() != n || g.cols() != n)
            throw DimensionMismatch("commutant_basis: generators must be square of equal size");
    // [X,g] = 0 as a linear system on vec_rm(X): (I (x) g^T - g (x) I) x = 0
    CMat sys(static_cast<Eigen::Index>(gens.size()) * n * n, n * n);
    const CMat id = identity(n);
    for (std::size_t k = 0; k < gens.size(); ++k) {
        sys.block(static_cast<Eigen::Index>(k) * n * n, 0, n * n, n * n) =
            kron(id, gens[k].transpose()) - kron(gens[k], id);
    }
    std::vector<CMat> out;
    for (const auto& v : null_space(sys, tol)) out.push_back(unvec_rm(v, n, n));
    return out;
}

std::vector<CMat> orthonormalize(const std::vector<CMat>& span, double drop_eps) {
    std::vector<CMat> basis;
    for (const auto& m : span) {
        CMat r = m;
        for (const auto& b : basis) {
            const cplx c = (b.adjoint() * r).trace();
            r -= c * b;
        }
        // second pass for numerical orthogonality
        for (const auto& b : basis) {
            const cplx c = (b.adjoint() * r).trace();
            r -= c * b;
        }
        const double nrm = fro(r);
        if (nrm > drop_eps) basis.push_back(r / nrm);
    }
    return basis;
}

std::uint64_t Rng::next_() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::gauss() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller on splitmix64 uniforms
    double u = 0.0, v = 0.0;
    do {
        u = (next_() >> 11) * 0x1.0p-53;
    } while (u <= 0.0);
    v = (next_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * M_PI * v);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * v);
}

CMat Rng::matrix(Eigen::Index r, Eigen::Index c) {
    CMat m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = cplx(gauss(), gauss());
    return m;
}

} // namespace tensorcat::num
