#pragma once

// Finite-dimensional Hopf-*-algebras given by structure constants over a
// fixed basis, with the Haar trace computed from its invariance equations.

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "tensorcat/numkit.hpp"

namespace tensorcat::hopf {

using num::CMat;
using num::CVec;
using num::cplx;
using num::Tolerance;

struct FiniteGroup {
    int order = 0;
    std::vector<std::vector<int>> table; // table[i][j] = index of g_i g_j, identity = 0
    std::vector<std::string> labels;
    // optional: action of each element on points (permutation one-line form)
    std::vector<std::vector<int>> point_action;

    int inverse(int i) const;
    void validate() const; // throws ParseError on a broken group law

    static FiniteGroup cyclic(int n);
    static FiniteGroup symmetric(int n); // permutations in lexicographic order
};

class HopfStarAlgebra {
public:
    int dim = 0;
    std::vector<std::string> basis_labels;
    CVec unit;                // coefficients of 1 over the basis
    std::vector<CVec> mult;   // mult[i*dim+j] = coefficients of b_i b_j
    std::vector<CMat> comult; // comult[i](j,k) = coeff of b_j (x) b_k in Delta(b_i)
    CVec counit;              // eps(b_i)
    CMat antipode;            // S(b_i) = sum_j antipode(j,i) b_j
    CMat star;                // (b_i)* = sum_j star(j,i) b_j, antilinear extension
    CVec haar;                // tau(b_i); empty until haar_trace() ran

    HopfStarAlgebra() = default;
    HopfStarAlgebra(const HopfStarAlgebra& other) { copy_data_(other); }
    HopfStarAlgebra(HopfStarAlgebra&& other) noexcept { copy_data_(other); }
    HopfStarAlgebra& operator=(const HopfStarAlgebra& other) {
        if (this != &other) copy_data_(other);
        return *this;
    }
    HopfStarAlgebra& operator=(HopfStarAlgebra&& other) noexcept {
        if (this != &other) copy_data_(other);
        return *this;
    }

    bool has_haar() const { return haar.size() == dim; }

    CVec product(const CVec& a, const CVec& b) const;
    CVec apply_antipode(const CVec& a) const { return antipode * a; }
    CVec apply_star(const CVec& a) const { return star * a.conjugate(); }
    cplx apply_counit(const CVec& a) const { return counit.cwiseProduct(a).sum(); }
    cplx haar_of(const CVec& a) const;

    // tau(b_s b_t^*) for all (s,t); cached. Needs the Haar trace.
    const CMat& haar_pair_table() const;
    // nonzero entries of the pair table as (s, t, value)
    const std::vector<std::tuple<int, int, cplx>>& haar_pair_nonzeros() const;

private:
    void copy_data_(const HopfStarAlgebra& other) {
        dim = other.dim;
        basis_labels = other.basis_labels;
        unit = other.unit;
        mult = other.mult;
        comult = other.comult;
        counit = other.counit;
        antipode = other.antipode;
        star = other.star;
        haar = other.haar;
        pair_cached_ = false; // caches are rebuilt on demand
    }

    mutable std::mutex cache_mutex_;
    mutable CMat pair_table_;
    mutable std::vector<std::tuple<int, int, cplx>> pair_nonzeros_;
    mutable bool pair_cached_ = false;
};

using HopfPtr = std::shared_ptr<const HopfStarAlgebra>;

ValidationReport check_axioms(const HopfStarAlgebra& h, const Tolerance& tol = {});

// Solves the two-sided invariance system, stores the result in h.haar and
// verifies normalization, uniqueness, traciality and faithfulness.
// Throws NoSolution / NonFaithful on malformed input.
CVec haar_trace(HopfStarAlgebra& h, const Tolerance& tol = {});

HopfStarAlgebra cop(const HopfStarAlgebra& h);  // reversed comultiplication
HopfStarAlgebra op(const HopfStarAlgebra& h);   // reversed multiplication
// Dual Hopf-*-algebra on the dual basis; star via f*(a) = conj(f(S(a)*)).
HopfStarAlgebra dual(const HopfStarAlgebra& h);

HopfStarAlgebra group_algebra(const FiniteGroup& g); // C[G]
HopfStarAlgebra fun_algebra(const FiniteGroup& g);   // Fun(G)

// Max absolute entrywise difference of all structure tensors; requires
// equal dimension.
double structure_distance(const HopfStarAlgebra& a, const HopfStarAlgebra& b);

// Convenience: validate + Haar, returned as a shared handle.
HopfPtr finalize(HopfStarAlgebra h, const Tolerance& tol = {});

} // namespace tensorcat::hopf
