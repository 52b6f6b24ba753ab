#pragma once

// Finite-level fixed-point model: the dual representation of a
// corepresentation, the adjoint action of K = cop(dual(H)) on End(V),
// fixed points versus commutants, embedding consistency along the tower,
// and the outerness criterion.

#include "tensorcat/catcore.hpp"

namespace tensorcat::fixedpoint {

using cat::Letter;
using cat::Word;
using corep::CorepPtr;
using hopf::HopfPtr;
using num::CMat;
using num::cplx;
using num::CVec;
using num::Tolerance;

struct DualRep {
    CorepPtr source;
    std::vector<CMat> images; // image of the t-th dual basis functional
};

// rho^o(f)w = (id (x) f) rho(w); on the dual basis the images are exactly
// the coefficient slices. Verified multiplicative for the dual product.
DualRep dual_rep(const CorepPtr& s, const Tolerance& tol = {});

struct AdjointAction {
    HopfPtr k;    // K = cop(dual(H))
    DualRep rep;  // mu, a *-representation of K
    long vdim = 0;
    std::vector<CMat> ops; // alpha(a_t) on vec_rm(End(V)), v^2 x v^2 each
};

// alpha_mu(a) x = sum mu(a^(1)) x mu(S(a^(2))), Sweedler over K.
AdjointAction adjoint_action(const DualRep& mu, const HopfPtr& k);

// action axioms: representation property, product rule, unit rule,
// star compatibility — all on basis samples.
ValidationReport check_action_axioms(const AdjointAction& act, const Tolerance& tol = {});

struct FixedPoints {
    std::vector<CMat> basis; // from the invariance solve
    int commutant_dim = 0;   // via commutant of the mu images
    double span_gap = 0.0;   // largest principal-angle defect of the two spans
};

// {x : alpha(a)x = eps(a)x}, solved directly and via the commutant.
FixedPoints fixed_points(const AdjointAction& act, const Tolerance& tol = {});

// alpha_{(rho (x) tau)^c}(f)(1 (x) x) = 1 (x) alpha_{tau^c}(f) x on a basis.
ValidationReport check_tower_action_consistency(const CorepPtr& rho, const CorepPtr& tau,
                                                const HopfPtr& k, const Tolerance& tol = {});

// Smallest n <= n_max such that (sigma conj(sigma))^n contains every
// irreducible class of the ambient registry.
std::optional<int> outer_action_power(const Letter& sigma, int n_max, const HopfPtr& h,
                                      const Tolerance& tol = {}, std::uint64_t seed = 0);

// The unitary U : End(V) -> conj(V) (x) V, sqrt(v) e_ij -> w_j (x) w_i,
// intertwining the adjoint action with (conj(s) (x) s)^o.
ValidationReport check_conjugate_action_equivalence(const CorepPtr& s, const HopfPtr& k,
                                                    const Tolerance& tol = {});

} // namespace tensorcat::fixedpoint
