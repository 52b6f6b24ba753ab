#pragma once

// Towers of End spaces of tensor words in a generator letter and its
// conjugate: Bratteli data, trace weights, commuting squares, Jones
// projections, Markov relation, basic construction, standard invariant,
// principal graph and periodicity.
//
// Alternating towers: A^n = End(conj(sigma(n-1))), B^n = A-word + sigma,
// growing by prepending letters. Sigma-only towers: A^n = End(sigma^(n-1)),
// B^n = End(sigma^n), same embeddings.

#include <optional>

#include "tensorcat/catcore.hpp"

namespace tensorcat::tower {

using cat::IrreducibleRegistry;
using cat::Letter;
using cat::Word;
using hopf::HopfPtr;
using num::CMat;
using num::cplx;
using num::Tolerance;

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

enum class Mode { alternating, sigma_only };

struct TowerLevel {
    Word word;
    std::vector<long long> classes;     // multiplicity per registry class
    std::vector<double> trace_weights;  // d(class)/d(word) per registry class
    bool concrete = false;              // realized End space fits under the cap
    long long end_dim = 0;              // sum of squared multiplicities
};

struct Tower {
    Mode mode = Mode::alternating;
    Letter sigma;
    HopfPtr algebra;
    int cap = 256;
    Tolerance tol;
    std::uint64_t seed = 0;
    std::shared_ptr<IrreducibleRegistry> registry;

    std::vector<TowerLevel> a_levels, b_levels; // index n-1 holds level n
    // prepended letter turning level n into level n+1 (index n-1)
    std::vector<Letter> step_letters;
    // full registry-indexed inclusion matrices: a_inclusions[n-1] is
    // A^n in A^{n+1}, b_inclusions likewise, ab_inclusions[n-1] is A^n in B^n
    std::vector<IntMatrix> a_inclusions, b_inclusions, ab_inclusions;

    int depth() const { return static_cast<int>(a_levels.size()); }
};

// Throws DimensionOne when d(sigma) <= 1.
Tower build_tower(const Letter& sigma, int depth, Mode mode, const HopfPtr& h,
                  const Tolerance& tol = {}, std::uint64_t seed = 0, int cap = 256);

// Verifies Phi^l_{w s}(X x 1_s) = Phi^l_w(X) x 1_s over a basis of
// End(l w) at tower level n (l = prepended letter, w = A^n word).
ValidationReport check_commuting_square(const Tower& t, int n);

// Jones projection f_m in End(sigma(m+2)).
CMat jones_projection(const Tower& t, int m);
// f_m padded on the right into End(sigma(len)), len >= m+2.
CMat jones_projection_in(const Tower& t, int m, int len);

// Markov relation and f b f = Psi(b) f over a full basis of End(rho sigma).
ValidationReport check_markov(const Tower& t, const Word& rho);

struct BasicConstructionReport {
    bool condition_holds = false; // every class of rho sigma conj(sigma) lies in rho
    long long dim_b = 0, dim_c = 0, dim_d = 0;
    bool d_equals_c = false;
    double ideal_residual = 0.0;
    bool frobenius_symmetric = false; // dim(tau, pi sigma) = dim(pi, tau conj(sigma))
};
BasicConstructionReport check_basic_construction(const Tower& t, const Word& rho);

struct InvariantRow {
    std::vector<TowerLevel> entries;    // entry k
    std::vector<IntMatrix> inclusions;  // entry k in entry k+1
};

struct StandardInvariant {
    double index = 0.0; // d(sigma)^2
    bool irreducible = false;
    InvariantRow upper;                // End(sigma(k)), k = 0..depth
    InvariantRow lower;                // End(conj(sigma) sigma(k-1)), k = 0..depth
    std::vector<IntMatrix> vertical;   // lower_k in upper_{k+1}, prepend sigma
    double norm_squared = 0.0;         // ||stabilized A-B inclusion||^2 cross-check
};

// Mode sigma_only requires Assumption find_conjugate_power(...) to succeed.
StandardInvariant standard_invariant(const Letter& sigma, int depth, Mode mode,
                                     const HopfPtr& h, const Tolerance& tol = {},
                                     std::uint64_t seed = 0, int cap = 256);

struct PrincipalGraphData {
    std::vector<std::string> even_vertices, odd_vertices; // registry labels
    std::vector<int> even_classes, odd_classes;           // registry indices
    IntMatrix adjacency;                                  // even x odd
    int depth = 0;
    bool stabilized = false;
};

PrincipalGraphData principal_graph(const Letter& sigma, int max_depth, const HopfPtr& h,
                                   const Tolerance& tol = {}, std::uint64_t seed = 0,
                                   int cap = 256);

struct Periodicity {
    int period_start = 0; // level index (1-based) from which the pattern repeats
    int period = 0;
    bool primitive = false;
};

// Detects repetition of (class support, inclusion matrix) along the A row;
// throws NoStabilization if the computed depth shows no repetition.
Periodicity check_periodicity(const Tower& t);

// Wielandt-bounded primitivity test: some power is strictly positive.
bool is_primitive(const IntMatrix& m);

// Smallest nu in [2, nu_max] with conj(sigma) contained in sigma^(nu-1).
std::optional<int> find_conjugate_power(const Letter& sigma, int nu_max, const HopfPtr& h,
                                        const Tolerance& tol = {}, std::uint64_t seed = 0,
                                        int cap = 256);

} // namespace tensorcat::tower
