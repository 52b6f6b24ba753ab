#pragma once

// Morphism-map kernel: the maps induced on End(rho phi) -> End(rho psi) by
// K in hom(phi conj(phi), psi conj(psi)), the indexed shift operators for
// alternating words, nested Jones projections and their factorization.

#include "tensorcat/catcore.hpp"

namespace tensorcat::morphmap {

using cat::Letter;
using cat::Word;
using hopf::HopfPtr;
using num::CMat;
using num::cplx;
using num::Tolerance;

// Indexed shift operators over alternating words sigma(m) with a fixed
// rho prefix. The inserted conjugation vector depends on the parity of
// the insertion point l: rbar for l even, r for l odd.
//   shift_in(l, m):  rho sigma(m) -> rho sigma(m+2), defined for m >= l
//   shift_out(l, m): rho sigma(m) -> rho sigma(m-2), defined for m >= l+2
CMat shift_in(const Word& rho, const Letter& sigma, int l, int m);
CMat shift_out(const Word& rho, const Letter& sigma, int l, int m);

// S in End(rho sigma(l)) padded on the right into End(rho sigma(m)).
CMat pad_word_end(const Word& rho, const Letter& sigma, const CMat& s, int l, int m);

// The zig-zag cancellation shift_out(k+-1, m+2) o shift_in(k, m) = 1.
ValidationReport check_shift_identity(const Word& rho, const Letter& sigma, int k_max,
                                      int m_max, const Tolerance& tol = {});

struct MorphismMap {
    Word rho, phi, psi;
    CMat k;       // morphism phi conj(phi) -> psi conj(psi)
    double factor = 1.0;

    CMat apply(const CMat& s) const; // the induced map on a concrete element

    // matrix in the End bases (End(rho psi) x End(rho phi) coordinates)
    CMat matrix;
    std::vector<CMat> in_basis, out_basis;

private:
    friend MorphismMap morphism_map(const Word&, const Word&, const Word&, const CMat&,
                                    const Tolerance&, std::uint64_t);
    CMat pre_;  // 1_rho x rbar_phi x 1_psi, materialized (tall, thin)
    CMat post_; // (1_{rho psi} x r_psi^*)(1_rho x K x 1_psi), thin
    long vrho_ = 0, vphi_ = 0, vpsi_ = 0;
};

// Builds the induced map; throws ShapeMismatch when K has the wrong shape
// and CapExceeded when a required word realization is above the cap.
MorphismMap morphism_map(const Word& rho, const Word& phi, const Word& psi, const CMat& k,
                         const Tolerance& tol = {}, std::uint64_t seed = 0);

// Properties of the induced maps on full bases: bimodule linearity,
// injectivity with the positive trace witness, multiplicativity, adjoint
// compatibility for the trace inner products, unitality and restriction.
ValidationReport check_morphism_map_properties(const Word& rho1, const Word& rho2,
                                               const Word& phi, const Word& psi,
                                               const Word& tau, const Tolerance& tol = {},
                                               std::uint64_t seed = 0);

// Jones projection f_k with a rho prefix, padded into End(rho sigma(len)).
CMat jones_in_word(const Word& rho, const Letter& sigma, int k, int len);

// g_m = d^-m 1_rho x (rbar_{sigma(m)} rbar_{sigma(m)}^*) in End(rho (s sb)^m).
CMat nested_jones_projection(const Word& rho, const Letter& sigma, int m);

// The factorization g_m = d^{(m-1)m} f_{m-1,0} f_{m,1} ... f_{2m-2,m-1}
// and the product rule f(K x L)(S g_m T) = f(K)(S) g_m f(L)(T).
ValidationReport check_nested_jones_factorization(const Word& rho, const Letter& sigma,
                                                  int m, const Tolerance& tol = {},
                                                  std::uint64_t seed = 0);

} // namespace tensorcat::morphmap
