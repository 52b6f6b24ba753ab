#pragma once

// Tensor words over corepresentation letters, standard conjugation pairs,
// statistical dimension, categorical trace, conditional expectations,
// Frobenius reciprocity, decorated objects and the irreducible registry.
//
// Conventions. A standard pair for a word w is (r, rbar) with
// r : iota -> conj(w) (x) w and rbar : iota -> w (x) conj(w), stored as
// column vectors in the kron index order of numkit. conj(w) is the
// reversed word with every letter barred.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tensorcat/corep.hpp"

namespace tensorcat::cat {

using corep::Corepresentation;
using corep::CorepPtr;
using corep::MorphismSpace;
using hopf::HopfPtr;
using num::CMat;
using num::CVec;
using num::cplx;
using num::Tolerance;

struct Letter {
    CorepPtr obj;
    CorepPtr conj;
    CMat r;    // iota -> conj (x) obj, canonical sum over the basis
    CMat rbar; // iota -> obj (x) conj
    std::string name;
};

// Builds the conjugate corepresentation and the canonical pair; throws
// NotUnitary if c fails the unitarity check.
Letter make_letter(const CorepPtr& c, const std::string& name,
                   const Tolerance& tol = {});
Letter bar(const Letter& l);

struct StandardPair;

class Word {
public:
    Word() = default;
    static Word empty(HopfPtr h, int cap = 256);
    static Word single(const Letter& l, int cap = 256);
    static Word concat(const Word& a, const Word& b);

    Word append(const Letter& l) const;
    Word prepend(const Letter& l) const;
    Word conj() const;

    bool valid() const { return d_ != nullptr; }
    int length() const;
    const Letter& letter(int i) const;
    long vdim() const;
    int cap() const;
    HopfPtr algebra() const;
    std::string name() const;

    // Realized tensor corepresentation; throws CapExceeded above the cap.
    const CorepPtr& realized() const;
    // Cached orthonormal basis of End(w).
    const MorphismSpace& end_space(const Tolerance& tol = {},
                                   std::uint64_t seed = 0) const;
    // Cached standard pair (canonical for letters, composed for words).
    const StandardPair& pair(const Tolerance& tol = {}) const;

private:
    struct Data;
    std::shared_ptr<Data> d_;
};

// sigma(m): m letters alternating l, bar(l), l, ...
Word sigma_word(const Letter& l, int m, const HopfPtr& h, int cap = 256);

struct StandardPair {
    Word object;
    Word conjugate;
    CMat r;     // column vector, dim = vdim(conj) * vdim(w)
    CMat rbar;  // column vector, dim = vdim(w) * vdim(conj)
    double dvalue = 0.0;

    // r and rbar reshaped to matrices (conj-dim x w-dim resp. w x conj).
    CMat r_mat() const;
    CMat rbar_mat() const;
};

// Canonical pair for a single letter, iterated product composition for
// longer words. Verifies the two conjugation equations and standardness.
const StandardPair& standard_pair(const Word& w, const Tolerance& tol = {});

double statistical_dimension(const Word& w);

// tr_w(x) = (1/d) r* (1 (x) x) r, normalized faithful trace on End(w).
cplx categorical_trace(const Word& w, const CMat& x, const Tolerance& tol = {});

// Conditional expectation End(r s) -> End(s) (removes r on the left).
CMat expect_left(const Word& r, const Word& s, const CMat& x, const Tolerance& tol = {});
// Conditional expectation End(s r) -> End(s) (removes r on the right).
CMat expect_right(const Word& r, const Word& s, const CMat& x, const Tolerance& tol = {});

// Frobenius reciprocity: (r s, t) <-> (s, conj(r) t) and (s r, t) <-> (s, t conj(r)).
CMat frobenius_left(const Word& r, const Word& s, const Word& t, const CMat& m,
                    const Tolerance& tol = {});
CMat frobenius_left_inv(const Word& r, const Word& s, const Word& t, const CMat& m,
                        const Tolerance& tol = {});
CMat frobenius_right(const Word& r, const Word& s, const Word& t, const CMat& m,
                     const Tolerance& tol = {});
CMat frobenius_right_inv(const Word& r, const Word& s, const Word& t, const CMat& m,
                         const Tolerance& tol = {});

// Nonzero composite test for conjugacy of irreducible words: a witness pair
// (r, rbar) is returned iff s is conjugate to r.
std::optional<std::pair<CMat, CMat>> conjugacy_witness(const Word& r, const Word& s,
                                                       const Tolerance& tol = {},
                                                       std::uint64_t seed = 0);

struct DecoratedObject {
    Word word;
    CMat proj; // nonzero projection in End(word)
};
DecoratedObject make_decorated(const Word& w, const CMat& proj, const Tolerance& tol = {});
DecoratedObject decorated_tensor(const DecoratedObject& a, const DecoratedObject& b);
// {T in hom(a.word, b.word) : b.proj T a.proj = T}, orthonormal basis.
std::vector<CMat> decorated_hom(const DecoratedObject& a, const DecoratedObject& b,
                                const Tolerance& tol = {}, std::uint64_t seed = 0);

struct RegistryEntry {
    std::string label;
    CorepPtr rep;
    double dvalue = 0.0;
    int conj_index = -1;
};

// Irreducible classes reachable from iota by fusing with sigma and its
// conjugate; labels follow breadth-first discovery order, iota = "0".
class IrreducibleRegistry {
public:
    void build(const Letter& sigma, const HopfPtr& h, const Tolerance& tol = {},
               std::uint64_t seed = 0, int max_classes = 128);

    int size() const { return static_cast<int>(entries_.size()); }
    const RegistryEntry& entry(int i) const { return entries_.at(i); }
    const std::vector<RegistryEntry>& entries() const { return entries_; }

    // index of an irreducible corepresentation, -1 if not present
    int find(const Corepresentation& c) const;

    // multiplicity vector of rep_a (x) rep_b over the registry classes
    const std::vector<long long>& fusion(int a, int b) const;

    // class multiplicities of an arbitrary corepresentation (decomposes it)
    std::vector<long long> classes_of(const CorepPtr& c) const;

    // class multiplicities of a word, fused combinatorially letter by letter
    std::vector<long long> class_vector(const Word& w) const;

    bool closed_under_conjugation() const;

private:
    HopfPtr algebra_;
    Tolerance tol_;
    std::uint64_t seed_ = 0;
    std::vector<RegistryEntry> entries_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<int, int>, std::vector<long long>> fusion_cache_;
    mutable std::map<CorepPtr, std::vector<long long>> letter_cache_;
};

} // namespace tensorcat::cat
