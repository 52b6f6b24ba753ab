#pragma once

// Unitary corepresentations sigma: V -> V (x) H of a finite-dimensional
// Hopf-*-algebra, stored slice-wise over the H basis:
//   sigma(v_j) = sum_i v_i (x) a_ij,   a_ij = sum_t slices[t](i,j) b_t.

#include <memory>
#include <vector>

#include "tensorcat/hopf.hpp"

namespace tensorcat::corep {

using hopf::HopfPtr;
using num::CMat;
using num::CVec;
using num::cplx;
using num::Tolerance;

class Corepresentation {
public:
    HopfPtr algebra;
    int vdim = 0;
    std::vector<CMat> slices; // one vdim x vdim matrix per H basis element

    CVec character() const; // chi(t) = tr slices[t], an element of H
};

using CorepPtr = std::shared_ptr<const Corepresentation>;

// Structural validation (shape, finiteness, vdim >= 1); throws on failure.
CorepPtr make_corep(HopfPtr h, int vdim, std::vector<CMat> slices);

CorepPtr identity_corep(const HopfPtr& h);

// Delta as a corepresentation of H on H, in a Haar-orthonormalized basis.
CorepPtr regular_corep(const HopfPtr& h);

// Unitary group representation (one matrix per element) as a Fun(G) corep.
CorepPtr from_group_rep(const HopfPtr& fun_g, const std::vector<CMat>& mats);

// G-graded space as a C[G] corepresentation (grades[i] = group index of v_i).
CorepPtr from_grading(const HopfPtr& group_alg, const std::vector<int>& grades);

// Permutation action on points restricted to the sum-zero hyperplane;
// for symmetric groups this is the (n-1)-dimensional standard representation.
CorepPtr standard_plane_corep(const HopfPtr& fun_g, const hopf::FiniteGroup& g);

ValidationReport check_corep(const Corepresentation& s, const Tolerance& tol = {});

CorepPtr tensor(const CorepPtr& r, const CorepPtr& s);
CorepPtr conjugate(const CorepPtr& s);

struct MorphismSpace {
    CorepPtr source, target;
    std::vector<CMat> basis; // target.vdim x source.vdim, HS-orthonormal
    int dim() const { return static_cast<int>(basis.size()); }
};

// dim hom(r,s) by the Haar-character pairing; exact integer.
int hom_dim(const Corepresentation& r, const Corepresentation& s);

// Orthonormal basis of the intertwiner space (r,s). Small systems go through
// the stacked null space; larger ones through the Haar-averaged projector
// with seeded probes. Deterministic for fixed inputs and seed.
MorphismSpace hom(const CorepPtr& r, const CorepPtr& s, const Tolerance& tol = {},
                  std::uint64_t seed = 0);

// Always the stacked-null-space route (reference path, small inputs).
MorphismSpace hom_via_nullspace(const CorepPtr& r, const CorepPtr& s,
                                const Tolerance& tol = {});

// Haar-averaged projection of an arbitrary matrix onto hom(r,s).
CMat reynolds(const Corepresentation& r, const Corepresentation& s, const CMat& x);

struct DirectSum {
    CorepPtr total;
    std::vector<CMat> isometries; // V_i : parts[i] -> total, sum V_i V_i* = 1
};
DirectSum direct_sum(const std::vector<CorepPtr>& parts);

struct Component {
    CorepPtr rep;                 // representative irreducible subobject
    int multiplicity = 0;
    std::vector<CMat> isometries; // V with V*V = 1, V V* = minimal projection
    std::vector<CMat> projections;
};

// Irreducible decomposition: End(s) -> center -> minimal central projections
// -> minimal projections with block isometries. Components are sorted by
// (irreducible dimension, then spectral discovery order).
std::vector<Component> decompose(const CorepPtr& s, const Tolerance& tol = {},
                                 std::uint64_t seed = 0);

// Equivalence of corepresentations (equal characters).
bool equivalent(const Corepresentation& a, const Corepresentation& b,
                const Tolerance& tol = {});

} // namespace tensorcat::corep
