#pragma once

// Dense complex linear-algebra kernel shared by all modules.
// Everything here is deterministic: identical inputs give bit-identical
// outputs (fixed SVD/eigensolver path, basis phases fixed explicitly).

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tensorcat/common.hpp"

namespace tensorcat::num {

using cplx = std::complex<double>;
// Row-major so that kron index order matches the tensor-leg order used
// throughout: index of v (x) w is i*dim(w)+j.
using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVec = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

struct Tolerance {
    double rank_eps = 1e-9;   // relative to largest singular value
    double check_eps = 1e-8;  // absolute, on normalized quantities
};

CMat identity(Eigen::Index n);
CMat zeros(Eigen::Index r, Eigen::Index c);

double fro(const CMat& a);
bool all_finite(const CMat& a);

CMat kron(const CMat& a, const CMat& b);

// (I_left (x) b (x) I_right) * m without materializing the Kronecker factor.
CMat kron_apply_mid(long left, const CMat& b, long right, const CMat& m);

// Row-major flattening, index i*cols+j, and its inverse.
CVec vec_rm(const CMat& a);
CMat unvec_rm(const CVec& v, Eigen::Index r, Eigen::Index c);

// Make the first entry of v with |v_i| > 1e-9 real and positive.
void phase_fix(CVec& v);

// Orthonormal basis of {x : a x = 0}; singular values below
// rank_eps * sigma_max count as zero. Vectors come in ascending
// singular-value order, each phase-fixed.
std::vector<CVec> null_space(const CMat& a, const Tolerance& tol = {});

struct HermEig {
    Eigen::VectorXd values; // ascending
    CMat vectors;           // columns, phase-fixed
};

// Spectral decomposition of a Hermitian matrix. Throws NotHermitian when
// ||a - a*|| > check_eps * max(||a||, 1).
HermEig herm_eig(const CMat& a, const Tolerance& tol = {});

// Ranges [begin,end) of indices whose (ascending) values lie within
// rank_eps * scale of each other, scale = max(|values|, 1).
std::vector<std::pair<int, int>> cluster_ranges(const Eigen::VectorXd& values,
                                                double rank_eps);

// Orthonormal basis (as matrices, Hilbert-Schmidt inner product) of
// {X : X g = g X for all g in gens}. All gens must be square of equal size.
std::vector<CMat> commutant_basis(const std::vector<CMat>& gens,
                                  const Tolerance& tol = {});

// Gram-Schmidt a set of matrices into an orthonormal set, dropping
// directions whose residual norm falls below drop_eps.
std::vector<CMat> orthonormalize(const std::vector<CMat>& span, double drop_eps);

// Seeded deterministic Gaussian matrices (test probes, sample morphisms).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    double gauss();
    CMat matrix(Eigen::Index r, Eigen::Index c);

private:
    std::uint64_t next_();
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace tensorcat::num
