#include "tensorcat/catcore.hpp"

#include <mutex>

namespace tensorcat::cat {

// ---------------------------------------------------------------- letters

Letter make_letter(const CorepPtr& c, const std::string& name, const Tolerance& tol) {
    auto rep = corep::check_corep(*c, tol);
    if (!rep.pass()) {
        const auto* uni = rep.find("unitarity");
        if (uni && !uni->pass)
            throw NotUnitary("letter '" + name + "' is not unitary, residual " +
                             std::to_string(uni->residual));
        throw Error("letter '" + name + "' is not a corepresentation");
    }
    Letter l;
    l.obj = c;
    l.conj = corep::conjugate(c);
    l.name = name;
    const int v = c->vdim;
    l.r = num::zeros(static_cast<Eigen::Index>(v) * v, 1);
    for (int j = 0; j < v; ++j) l.r(static_cast<Eigen::Index>(j) * v + j, 0) = 1.0;
    l.rbar = l.r;
    return l;
}

Letter bar(const Letter& l) {
    Letter b;
    b.obj = l.conj;
    b.conj = l.obj;
    b.r = l.rbar;
    b.rbar = l.r;
    b.name = l.name + "~";
    return b;
}

// ------------------------------------------------------------------ words

struct Word::Data {
    HopfPtr algebra;
    std::vector<Letter> letters;
    int cap = 256;

    std::mutex mutex;
    CorepPtr realized;
    std::shared_ptr<MorphismSpace> endspace;
    std::shared_ptr<StandardPair> pair;
};

Word Word::empty(HopfPtr h, int cap) {
    Word w;
    w.d_ = std::make_shared<Data>();
    w.d_->algebra = std::move(h);
    w.d_->cap = cap;
    return w;
}

Word Word::single(const Letter& l, int cap) {
    Word w = empty(l.obj->algebra, cap);
    w.d_->letters.push_back(l);
    return w;
}

Word Word::concat(const Word& a, const Word& b) {
    if (a.algebra() != b.algebra()) throw AlgebraMismatch("concat: different algebras");
    Word w = empty(a.algebra(), std::min(a.cap(), b.cap()));
    w.d_->letters = a.d_->letters;
    for (const auto& l : b.d_->letters) w.d_->letters.push_back(l);
    return w;
}

Word Word::append(const Letter& l) const {
    Word w = empty(algebra(), cap());
    w.d_->letters = d_->letters;
    w.d_->letters.push_back(l);
    return w;
}

Word Word::prepend(const Letter& l) const {
    Word w = empty(algebra(), cap());
    w.d_->letters.push_back(l);
    for (const auto& x : d_->letters) w.d_->letters.push_back(x);
    return w;
}

Word Word::conj() const {
    Word w = empty(algebra(), cap());
    for (auto it = d_->letters.rbegin(); it != d_->letters.rend(); ++it)
        w.d_->letters.push_back(bar(*it));
    return w;
}

int Word::length() const { return static_cast<int>(d_->letters.size()); }
const Letter& Word::letter(int i) const { return d_->letters.at(i); }
int Word::cap() const { return d_->cap; }
HopfPtr Word::algebra() const { return d_->algebra; }

long Word::vdim() const {
    long v = 1;
    for (const auto& l : d_->letters) v *= l.obj->vdim;
    return v;
}

std::string Word::name() const {
    if (d_->letters.empty()) return "1";
    std::string s;
    for (const auto& l : d_->letters) {
        if (!s.empty()) s += ".";
        s += l.name;
    }
    return s;
}

const CorepPtr& Word::realized() const {
    std::lock_guard<std::mutex> lock(d_->mutex);
    if (!d_->realized) {
        if (vdim() > d_->cap)
            throw CapExceeded("word " + name() + " has vdim " + std::to_string(vdim()) +
                              " above cap " + std::to_string(d_->cap));
        CorepPtr acc = corep::identity_corep(d_->algebra);
        for (const auto& l : d_->letters) acc = corep::tensor(acc, l.obj);
        // tensoring with the one-dimensional unit leaves vdim unchanged
        d_->realized = acc;
    }
    return d_->realized;
}

const MorphismSpace& Word::end_space(const Tolerance& tol, std::uint64_t seed) const {
    const CorepPtr& r = realized();
    std::lock_guard<std::mutex> lock(d_->mutex);
    if (!d_->endspace)
        d_->endspace = std::make_shared<MorphismSpace>(corep::hom(r, r, tol, seed));
    return *d_->endspace;
}

Word sigma_word(const Letter& l, int m, const HopfPtr& h, int cap) {
    Word w = Word::empty(h, cap);
    for (int i = 0; i < m; ++i) w = w.append(i % 2 == 0 ? l : bar(l));
    return w;
}

// --------------------------------------------------------- standard pairs

CMat StandardPair::r_mat() const {
    const long vc = conjugate.vdim(), vw = object.vdim();
    return num::unvec_rm(r.col(0), vc, vw);
}

CMat StandardPair::rbar_mat() const {
    const long vc = conjugate.vdim(), vw = object.vdim();
    return num::unvec_rm(rbar.col(0), vw, vc);
}

namespace detail {

// zig-zag composites as small matrix products on the reshaped pair
void verify_pair(const StandardPair& p, const Tolerance& tol) {
    const CMat rm = p.r_mat();       // vc x vw
    const CMat rbm = p.rbar_mat();   // vw x vc
    const long vw = p.object.vdim(), vc = p.conjugate.vdim();
    const CMat one_w = (rbm.conjugate() * rm).transpose();
    const CMat one_c = (rm.conjugate() * rbm).transpose();
    const double r1 = (one_w - num::identity(vw)).norm();
    const double r2 = (one_c - num::identity(vc)).norm();
    const double scale = std::sqrt(static_cast<double>(vw));
    if (r1 > tol.check_eps * scale || r2 > tol.check_eps * scale)
        throw Error("standard pair fails the conjugation equations for " + p.object.name());
    const cplx rr = (p.r.adjoint() * p.r)(0, 0);
    const cplx bb = (p.rbar.adjoint() * p.rbar)(0, 0);
    if (std::abs(rr - bb) > tol.check_eps * std::abs(rr))
        throw Error("conjugation pair is not standard for " + p.object.name());
}

StandardPair build_pair(const Word& w, const Tolerance& tol) {
    StandardPair p;
    p.object = w;
    p.conjugate = w.conj();
    CMat r = num::identity(1), rbar = num::identity(1);
    long vu = 1; // vdim of the prefix handled so far
    for (int i = 0; i < w.length(); ++i) {
        const Letter& l = w.letter(i);
        const long vl = l.obj->vdim;
        // (conpr): r_{u l} = (1_{conj l} x r_u x 1_l) o r_l
        r = num::kron(num::identity(vl), num::kron(r, num::identity(vl))) * l.r;
        // rbar_{u l} = (1_u x rbar_l x 1_{conj u}) o rbar_u
        rbar = num::kron(num::identity(vu), num::kron(l.rbar, num::identity(vu))) * rbar;
        vu *= vl;
    }
    p.r = r;
    p.rbar = rbar;
    p.dvalue = (r.adjoint() * r)(0, 0).real();
    verify_pair(p, tol);
    return p;
}

} // namespace detail

const StandardPair& Word::pair(const Tolerance& tol) const {
    std::lock_guard<std::mutex> lock(d_->mutex);
    if (!d_->pair) d_->pair = std::make_shared<StandardPair>(detail::build_pair(*this, tol));
    return *d_->pair;
}

const StandardPair& standard_pair(const Word& w, const Tolerance& tol) {
    return w.pair(tol);
}

double statistical_dimension(const Word& w) {
    double d = 1.0;
    for (int i = 0; i < w.length(); ++i) d *= w.letter(i).obj->vdim;
    return d;
}

cplx categorical_trace(const Word& w, const CMat& x, const Tolerance& tol) {
    const long v = w.vdim();
    if (x.rows() != v || x.cols() != v) throw ShapeMismatch("categorical_trace: wrong shape");
    const StandardPair& p = standard_pair(w, tol);
    const CMat rm = p.r_mat(); // vc x vw
    return (rm.conjugate() * x * rm.transpose()).trace() / p.dvalue;
}

CMat expect_left(const Word& r, const Word& s, const CMat& x, const Tolerance& tol) {
    const long vr = r.vdim(), vs = s.vdim();
    if (x.rows() != vr * vs || x.cols() != vr * vs)
        throw ShapeMismatch("expect_left: x must live on End(r s)");
    const StandardPair& p = standard_pair(r, tol);
    const CMat rm = p.r_mat();              // vc x vr
    const CMat g = rm.adjoint() * rm;       // vr x vr
    CMat out = num::zeros(vs, vs);
    for (long a = 0; a < vr; ++a)
        for (long b = 0; b < vr; ++b) {
            const cplx c = g(a, b);
            if (c == cplx(0)) continue;
            out += c * x.block(a * vs, b * vs, vs, vs);
        }
    return out / p.dvalue;
}

CMat expect_right(const Word& r, const Word& s, const CMat& x, const Tolerance& tol) {
    const long vr = r.vdim(), vs = s.vdim();
    if (x.rows() != vr * vs || x.cols() != vr * vs)
        throw ShapeMismatch("expect_right: x must live on End(s r)");
    const StandardPair& p = standard_pair(r, tol);
    const CMat rbm = p.rbar_mat();                        // vr x vc
    const CMat g = (rbm * rbm.adjoint()).conjugate();     // vr x vr
    CMat out = num::zeros(vs, vs);
    for (long i = 0; i < vs; ++i)
        for (long j = 0; j < vs; ++j) {
            cplx acc = 0.0;
            for (long a = 0; a < vr; ++a)
                for (long b = 0; b < vr; ++b)
                    acc += g(a, b) * x(i * vr + a, j * vr + b);
            out(i, j) = acc;
        }
    return out / p.dvalue;
}

CMat frobenius_left(const Word& r, const Word& s, const Word& t, const CMat& m,
                    const Tolerance& tol) {
    const long vr = r.vdim(), vs = s.vdim(), vt = t.vdim();
    if (m.rows() != vt || m.cols() != vr * vs)
        throw ShapeMismatch("frobenius_left: need a morphism (r s, t)");
    const StandardPair& p = standard_pair(r, tol);
    const long vc = p.conjugate.vdim();
    return num::kron(num::identity(vc), m) * num::kron(p.r, num::identity(vs));
}

CMat frobenius_left_inv(const Word& r, const Word& s, const Word& t, const CMat& m,
                        const Tolerance& tol) {
    const long vr = r.vdim(), vs = s.vdim(), vt = t.vdim();
    const StandardPair& p = standard_pair(r, tol);
    const long vc = p.conjugate.vdim();
    if (m.rows() != vc * vt || m.cols() != vs)
        throw ShapeMismatch("frobenius_left_inv: need a morphism (s, conj(r) t)");
    return num::kron(p.rbar.adjoint(), num::identity(vt)) * num::kron(num::identity(vr), m);
}

CMat frobenius_right(const Word& r, const Word& s, const Word& t, const CMat& m,
                     const Tolerance& tol) {
    const long vr = r.vdim(), vs = s.vdim(), vt = t.vdim();
    if (m.rows() != vt || m.cols() != vs * vr)
        throw ShapeMismatch("frobenius_right: need a morphism (s r, t)");
    const StandardPair& p = standard_pair(r, tol);
    const long vc = p.conjugate.vdim();
    return num::kron(m, num::identity(vc)) * num::kron(num::identity(vs), p.rbar);
}

CMat frobenius_right_inv(const Word& r, const Word& s, const Word& t, const CMat& m,
                         const Tolerance& tol) {
    const long vr = r.vdim(), vs = s.vdim(), vt = t.vdim();
    const StandardPair& p = standard_pair(r, tol);
    const long vc = p.conjugate.vdim();
    if (m.rows() != vt * vc || m.cols() != vs)
        throw ShapeMismatch("frobenius_right_inv: need a morphism (s, t conj(r))");
    return num::kron(num::identity(vt), p.r.adjoint()) * num::kron(m, num::identity(vr));
}

std::optional<std::pair<CMat, CMat>> conjugacy_witness(const Word& r, const Word& s,
                                                       const Tolerance& tol,
                                                       std::uint64_t seed) {
    if (r.end_space(tol, seed).dim() != 1 || s.end_space(tol, seed).dim() != 1)
        throw Error("conjugacy_witness requires irreducible words");
    const Word rs = Word::concat(r, s);
    const Word sr = Word::concat(s, r);
    const Word io = Word::empty(r.algebra(), r.cap());
    const auto cand_r = corep::hom(io.realized(), rs.realized(), tol, seed);
    const auto cand_rbar = corep::hom(io.realized(), sr.realized(), tol, seed);
    if (cand_r.dim() == 0 || cand_rbar.dim() == 0) return std::nullopt;
    const long vr = r.vdim(), vs = s.vdim();
    for (const auto& rv : cand_r.basis)
        for (const auto& bv : cand_rbar.basis) {
            const CMat rm = num::unvec_rm(rv.col(0), vr, vs);  // legs (r, s)
            const CMat rbm = num::unvec_rm(bv.col(0), vs, vr); // legs (s, r)
            const CMat comp = (rbm.conjugate() * rm).transpose();
            if (comp.norm() > tol.check_eps) return std::make_pair(rv, bv);
        }
    return std::nullopt;
}

// ------------------------------------------------------ decorated objects

DecoratedObject make_decorated(const Word& w, const CMat& proj, const Tolerance& tol) {
    const long v = w.vdim();
    if (proj.rows() != v || proj.cols() != v) throw ShapeMismatch("decoration has wrong shape");
    if ((proj * proj - proj).norm() > tol.check_eps * std::max(1.0, proj.norm()) ||
        (proj - proj.adjoint().eval()).norm() > tol.check_eps * std::max(1.0, proj.norm()))
        throw Error("decoration is not a projection");
    if (proj.norm() <= tol.check_eps) throw Error("decoration must be nonzero");
    return DecoratedObject{w, proj};
}

DecoratedObject decorated_tensor(const DecoratedObject& a, const DecoratedObject& b) {
    return DecoratedObject{Word::concat(a.word, b.word), num::kron(a.proj, b.proj)};
}

std::vector<CMat> decorated_hom(const DecoratedObject& a, const DecoratedObject& b,
                                const Tolerance& tol, std::uint64_t seed) {
    const auto full = corep::hom(a.word.realized(), b.word.realized(), tol, seed);
    std::vector<CMat> compressed;
    for (const auto& m : full.basis) compressed.push_back(b.proj * m * a.proj);
    return num::orthonormalize(compressed, 1e-6);
}

// ---------------------------------------------------------------- registry

void IrreducibleRegistry::build(const Letter& sigma, const HopfPtr& h, const Tolerance& tol,
                                std::uint64_t seed, int max_classes) {
    algebra_ = h;
    tol_ = tol;
    seed_ = seed;
    entries_.clear();
    fusion_cache_.clear();
    letter_cache_.clear();

    entries_.push_back({"0", corep::identity_corep(h), 1.0, 0});
    std::vector<int> queue{0};
    const Letter sig = sigma;
    const Letter sigb = bar(sigma);

    std::size_t head = 0;
    while (head < queue.size()) {
        const int i = queue[head++];
        for (const Letter* l : {&sig, &sigb}) {
            const auto prod = corep::tensor(entries_[i].rep, l->obj);
            for (const auto& comp : corep::decompose(prod, tol_, seed_)) {
                if (find(*comp.rep) >= 0) continue;
                if (static_cast<int>(entries_.size()) >= max_classes)
                    throw NoStabilization("registry exceeded max classes");
                entries_.push_back({std::to_string(entries_.size()), comp.rep,
                                    static_cast<double>(comp.rep->vdim), -1});
                queue.push_back(static_cast<int>(entries_.size()) - 1);
            }
        }
    }
    // conjugation closure
    for (auto& e : entries_) {
        const auto c = corep::conjugate(e.rep);
        const int j = find(*c);
        if (j < 0) throw Error("registry is not closed under conjugation");
        e.conj_index = j;
    }
}

int IrreducibleRegistry::find(const Corepresentation& c) const {
    for (int i = 0; i < size(); ++i) {
        if (entries_[i].rep->vdim != c.vdim) continue;
        if (corep::hom_dim(*entries_[i].rep, c) == 1) return i;
    }
    return -1;
}

const std::vector<long long>& IrreducibleRegistry::fusion(int a, int b) const {
    const auto key = std::make_pair(a, b);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = fusion_cache_.find(key);
        if (it != fusion_cache_.end()) return it->second;
    }
    const auto prod = corep::tensor(entries_.at(a).rep, entries_.at(b).rep);
    std::vector<long long> mult(size(), 0);
    for (const auto& comp : corep::decompose(prod, tol_, seed_)) {
        const int j = find(*comp.rep);
        if (j < 0) throw Error("fusion product leaves the registry");
        mult[j] += comp.multiplicity;
    }
    std::lock_guard<std::mutex> lock(mutex_);
    return fusion_cache_.emplace(key, std::move(mult)).first->second;
}

std::vector<long long> IrreducibleRegistry::classes_of(const CorepPtr& c) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = letter_cache_.find(c);
        if (it != letter_cache_.end()) return it->second;
    }
    std::vector<long long> mult(size(), 0);
    for (const auto& comp : corep::decompose(c, tol_, seed_)) {
        const int j = find(*comp.rep);
        if (j < 0) throw Error("corepresentation has classes outside the registry");
        mult[j] += comp.multiplicity;
    }
    std::lock_guard<std::mutex> lock(mutex_);
    letter_cache_.emplace(c, mult);
    return mult;
}

std::vector<long long> IrreducibleRegistry::class_vector(const Word& w) const {
    std::vector<long long> v(size(), 0);
    v[0] = 1;
    for (int i = 0; i < w.length(); ++i) {
        const auto lv = classes_of(w.letter(i).obj);
        std::vector<long long> next(size(), 0);
        for (int j = 0; j < size(); ++j) {
            if (v[j] == 0) continue;
            for (int c = 0; c < size(); ++c) {
                if (lv[c] == 0) continue;
                const auto& f = fusion(j, c);
                for (int k = 0; k < size(); ++k) next[k] += v[j] * lv[c] * f[k];
            }
        }
        v = std::move(next);
    }
    return v;
}

bool IrreducibleRegistry::closed_under_conjugation() const {
    for (const auto& e : entries_)
        if (e.conj_index < 0) return false;
    return true;
}

} // namespace tensorcat::cat
