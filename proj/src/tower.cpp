#include "tensorcat/tower.hpp"

#include <algorithm>
#include <set>

namespace tensorcat::tower {

namespace {

std::vector<int> support_of(const std::vector<long long>& classes) {
    std::vector<int> s;
    for (int i = 0; i < static_cast<int>(classes.size()); ++i)
        if (classes[i] > 0) s.push_back(i);
    return s;
}

// full registry-indexed fusion matrix for tensoring with a letter:
// prepend = false: F[phi][psi] = mult of psi in phi (x) letter
// prepend = true:  F[phi][psi] = mult of psi in letter (x) phi
IntMatrix letter_matrix(const IrreducibleRegistry& reg, const std::vector<long long>& lv,
                        bool prepend) {
    const int n = reg.size();
    IntMatrix f = IntMatrix::Zero(n, n);
    for (int phi = 0; phi < n; ++phi)
        for (int c = 0; c < n; ++c) {
            if (lv[c] == 0) continue;
            const auto& fu = prepend ? reg.fusion(c, phi) : reg.fusion(phi, c);
            for (int psi = 0; psi < n; ++psi) f(phi, psi) += lv[c] * fu[psi];
        }
    return f;
}

TowerLevel make_level(const Word& w, const IrreducibleRegistry& reg, int cap) {
    TowerLevel lvl;
    lvl.word = w;
    lvl.classes = reg.class_vector(w);
    const double d = cat::statistical_dimension(w);
    lvl.trace_weights.assign(reg.size(), 0.0);
    lvl.end_dim = 0;
    for (int k = 0; k < reg.size(); ++k) {
        lvl.trace_weights[k] = reg.entry(k).dvalue / d;
        lvl.end_dim += lvl.classes[k] * lvl.classes[k];
    }
    lvl.concrete = w.vdim() <= cap;
    return lvl;
}

IntMatrix restrict_matrix(const IntMatrix& full, const std::vector<int>& rows,
                          const std::vector<int>& cols) {
    IntMatrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = full(rows[i], cols[j]);
    return m;
}

std::vector<long long> fuse_once(const IrreducibleRegistry& reg,
                                 const std::vector<long long>& cur,
                                 const std::vector<long long>& lv) {
    std::vector<long long> next(reg.size(), 0);
    for (int j = 0; j < reg.size(); ++j) {
        if (cur[j] == 0) continue;
        for (int c = 0; c < reg.size(); ++c) {
            if (lv[c] == 0) continue;
            const auto& fu = reg.fusion(j, c);
            for (int k = 0; k < reg.size(); ++k) next[k] += cur[j] * lv[c] * fu[k];
        }
    }
    return next;
}

} // namespace

Tower build_tower(const Letter& sigma, int depth, Mode mode, const HopfPtr& h,
                  const Tolerance& tol, std::uint64_t seed, int cap) {
    if (depth < 1) throw Error("build_tower: depth must be at least 1");
    if (sigma.obj->vdim <= 1)
        throw DimensionOne("the tower construction needs d(sigma) > 1");

    Tower t;
    t.mode = mode;
    t.sigma = sigma;
    t.algebra = h;
    t.cap = cap;
    t.tol = tol;
    t.seed = seed;
    t.registry = std::make_shared<IrreducibleRegistry>();
    t.registry->build(sigma, h, tol, seed);
    const auto& reg = *t.registry;

    const auto sigma_classes = reg.classes_of(sigma.obj);
    const auto sigma_bar_classes = reg.classes_of(cat::bar(sigma).obj);

    for (int n = 1; n <= depth; ++n) {
        Word aw;
        if (mode == Mode::alternating) {
            aw = cat::sigma_word(sigma, n - 1, h, cap).conj();
        } else {
            aw = Word::empty(h, cap);
            for (int i = 0; i < n - 1; ++i) aw = aw.append(sigma);
        }
        const Word bw = aw.append(sigma);
        t.a_levels.push_back(make_level(aw, reg, cap));
        t.b_levels.push_back(make_level(bw, reg, cap));
    }
    for (int n = 1; n < depth; ++n) {
        const Letter step = t.a_levels[n].word.letter(0);
        t.step_letters.push_back(step);
        const bool prepends_sigma = (mode == Mode::sigma_only) || (n % 2 == 0);
        const auto& lv = prepends_sigma ? sigma_classes : sigma_bar_classes;
        const IntMatrix f = letter_matrix(reg, lv, true);
        t.a_inclusions.push_back(f);
        t.b_inclusions.push_back(f);
    }
    const IntMatrix ab = letter_matrix(reg, sigma_classes, false);
    for (int n = 1; n <= depth; ++n) t.ab_inclusions.push_back(ab);
    return t;
}

ValidationReport check_commuting_square(const Tower& t, int n) {
    if (n < 1 || n >= t.depth()) throw Error("check_commuting_square: level out of range");
    const Letter step = t.step_letters[n - 1];
    const Word rw = Word::single(step, t.cap);
    const Word sw = t.a_levels[n - 1].word;
    const Word stw = t.b_levels[n - 1].word; // s with sigma appended
    const long vsig = t.sigma.obj->vdim;

    const auto& basis = t.a_levels[n].word.end_space(t.tol, t.seed).basis;
    ValidationReport rep;
    double r = 0.0;
    for (const auto& x : basis) {
        const CMat lhs = cat::expect_left(rw, stw, num::kron(x, num::identity(vsig)), t.tol);
        const CMat rhs = num::kron(cat::expect_left(rw, sw, x, t.tol), num::identity(vsig));
        r = std::max(r, (lhs - rhs).norm());
    }
    rep.add("commuting_square", r, t.tol.check_eps);
    return rep;
}

CMat jones_projection(const Tower& t, int m) {
    if (m < 0) throw Error("jones_projection: negative index");
    const Letter& s = t.sigma;
    const long v = s.obj->vdim;
    const double d = static_cast<double>(v);
    double vm = 1.0;
    for (int i = 0; i < m; ++i) vm *= v;
    if (vm * v * v > t.cap) throw CapExceeded("jones_projection: word above cap");
    const CMat& vec = (m % 2 == 0) ? s.rbar : s.r;
    const CMat p = (vec * vec.adjoint()) / d;
    return num::kron(num::identity(static_cast<Eigen::Index>(vm)), p);
}

CMat jones_projection_in(const Tower& t, int m, int len) {
    if (len < m + 2) throw Error("jones_projection_in: ambient word too short");
    const long v = t.sigma.obj->vdim;
    double rest = 1.0;
    for (int i = 0; i < len - m - 2; ++i) rest *= v;
    double total = rest;
    for (int i = 0; i < m + 2; ++i) total *= v;
    if (total > t.cap) throw CapExceeded("jones_projection_in: word above cap");
    return num::kron(jones_projection(t, m), num::identity(static_cast<Eigen::Index>(rest)));
}

ValidationReport check_markov(const Tower& t, const Word& rho) {
    const Letter& s = t.sigma;
    const long v = s.obj->vdim;
    const double d = static_cast<double>(v);
    const Word rs = rho.append(s);
    const Word rssb = rs.append(cat::bar(s));
    const Word sw = Word::single(s, t.cap);

    const CMat p = (s.rbar * s.rbar.adjoint()) / d;
    const CMat f = num::kron(num::identity(rho.vdim()), p);

    const auto& basis = rs.end_space(t.tol, t.seed).basis;
    ValidationReport rep;
    double markov = 0.0, sandwich = 0.0;
    for (const auto& x : basis) {
        const CMat emb = num::kron(x, num::identity(v));
        const cplx lhs = cat::categorical_trace(rssb, (emb * f).eval(), t.tol);
        const cplx rhs = cat::categorical_trace(rs, x, t.tol) / (d * d);
        markov = std::max(markov, std::abs(lhs - rhs));

        // f b f = Psi^sigma_rho(b) f
        const CMat fbf = f * emb * f;
        const CMat psi = cat::expect_right(sw, rho, x, t.tol);
        const CMat rhs2 = num::kron(psi, num::identity(v * v)) * f;
        sandwich = std::max(sandwich, (fbf - rhs2).norm());
    }
    rep.add("markov_relation", markov, t.tol.check_eps);
    rep.add("expectation_sandwich", sandwich, t.tol.check_eps);
    // tr(f) = 1/d^2
    const cplx trf = cat::categorical_trace(rssb, f, t.tol);
    rep.add("jones_trace", std::abs(trf - cplx(1.0 / (d * d))), t.tol.check_eps);
    return rep;
}

BasicConstructionReport check_basic_construction(const Tower& t, const Word& rho) {
    const Letter& s = t.sigma;
    const long v = s.obj->vdim;
    const double d = static_cast<double>(v);
    const Word rs = rho.append(s);
    const Word rssb = rs.append(cat::bar(s));
    const auto& reg = *t.registry;

    BasicConstructionReport out;

    // combinatorial containment condition
    const auto rho_cls = reg.class_vector(rho);
    const auto top_cls = reg.class_vector(rssb);
    out.condition_holds = true;
    for (int k = 0; k < reg.size(); ++k)
        if (top_cls[k] > 0 && rho_cls[k] == 0) out.condition_holds = false;

    const auto& bbasis = rs.end_space(t.tol, t.seed).basis;
    const auto& cbasis = rssb.end_space(t.tol, t.seed).basis;
    out.dim_b = static_cast<long long>(bbasis.size());
    out.dim_c = static_cast<long long>(cbasis.size());

    const CMat p = (s.rbar * s.rbar.adjoint()) / d;
    const CMat f = num::kron(num::identity(rho.vdim()), p);

    std::vector<CMat> span;
    for (const auto& bi : bbasis) {
        const CMat l = num::kron(bi, num::identity(v)) * f;
        for (const auto& bj : bbasis)
            span.push_back(l * num::kron(bj, num::identity(v)));
    }
    const auto dbasis = num::orthonormalize(span, 1e-7);
    out.dim_d = static_cast<long long>(dbasis.size());
    out.d_equals_c = (out.dim_d == out.dim_c);

    // two-sided ideal property inside End(rho sigma conj(sigma))
    double ideal = 0.0;
    for (const auto& c : cbasis)
        for (const auto& x : dbasis) {
            for (const CMat& prod : {(c * x).eval(), (x * c).eval()}) {
                CMat r = prod;
                for (const auto& db : dbasis) r -= (db.adjoint() * prod).trace() * db;
                ideal = std::max(ideal, r.norm());
            }
        }
    out.ideal_residual = ideal;

    // Frobenius symmetry of the edge counts between the B and C summands
    const auto scls = reg.classes_of(s.obj);
    const auto sbcls = reg.classes_of(cat::bar(s).obj);
    const IntMatrix right_s = letter_matrix(reg, scls, false);
    const IntMatrix right_sb = letter_matrix(reg, sbcls, false);
    const auto rs_cls = reg.class_vector(rs);
    out.frobenius_symmetric = true;
    for (int pi = 0; pi < reg.size(); ++pi) {
        if (rho_cls[pi] == 0) continue;
        for (int tau = 0; tau < reg.size(); ++tau) {
            if (rs_cls[tau] == 0) continue;
            if (right_s(pi, tau) != right_sb(tau, pi)) out.frobenius_symmetric = false;
        }
    }
    return out;
}

StandardInvariant standard_invariant(const Letter& sigma, int depth, Mode mode,
                                     const HopfPtr& h, const Tolerance& tol,
                                     std::uint64_t seed, int cap) {
    if (sigma.obj->vdim <= 1)
        throw DimensionOne("the standard invariant needs d(sigma) > 1");
    if (mode == Mode::sigma_only) {
        if (!find_conjugate_power(sigma, 12, h, tol, seed, cap))
            throw Error("sigma-only mode requires the conjugate containment assumption");
    }
    IrreducibleRegistry reg;
    reg.build(sigma, h, tol, seed);

    const auto scls = reg.classes_of(sigma.obj);
    const auto sbcls = reg.classes_of(cat::bar(sigma).obj);
    const IntMatrix app_s = letter_matrix(reg, scls, false);
    const IntMatrix app_sb = letter_matrix(reg, sbcls, false);
    const IntMatrix pre_s = letter_matrix(reg, scls, true);

    StandardInvariant inv;
    inv.index = cat::statistical_dimension(Word::single(sigma, cap));
    inv.index *= inv.index;

    for (int k = 0; k <= depth; ++k) {
        const Word up = cat::sigma_word(sigma, k, h, cap);
        Word low = Word::empty(h, cap);
        if (k >= 1) low = cat::sigma_word(sigma, k - 1, h, cap).prepend(cat::bar(sigma));
        inv.upper.entries.push_back(make_level(up, reg, cap));
        inv.lower.entries.push_back(make_level(low, reg, cap));
        if (k < depth) {
            // sigma(k+1) appends sigma for even k; the lower word appends the
            // last letter of sigma(k), with conj(sigma) first
            inv.upper.inclusions.push_back(k % 2 == 0 ? app_s : app_sb);
            inv.lower.inclusions.push_back((k % 2 == 0) ? app_sb : app_s);
        }
        inv.vertical.push_back(pre_s);
    }

    inv.irreducible = (inv.upper.entries[1].end_dim == 1);

    // Perron norm of the stabilized principal graph adjacency
    const auto pg = principal_graph(sigma, 2 * depth + 8, h, tol, seed, cap);
    Eigen::MatrixXd adj = pg.adjacency.cast<double>();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(adj);
    const double nrm = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    inv.norm_squared = nrm * nrm;
    return inv;
}

PrincipalGraphData principal_graph(const Letter& sigma, int max_depth, const HopfPtr& h,
                                   const Tolerance& tol, std::uint64_t seed, int cap) {
    IrreducibleRegistry reg;
    reg.build(sigma, h, tol, seed);
    const auto scls = reg.classes_of(sigma.obj);
    const auto sbcls = reg.classes_of(cat::bar(sigma).obj);

    PrincipalGraphData g;
    std::set<int> even, odd;
    std::vector<long long> cur(reg.size(), 0);
    cur[0] = 1;
    even.insert(0);
    int unchanged = 0;
    for (int m = 1; m <= max_depth; ++m) {
        // walk one more letter of the alternating word sigma(m)
        cur = fuse_once(reg, cur, (m % 2 == 1) ? scls : sbcls);
        auto& side = (m % 2 == 1) ? odd : even;
        const std::size_t before = side.size();
        for (int k = 0; k < reg.size(); ++k)
            if (cur[k] > 0) side.insert(k);
        unchanged = (side.size() == before) ? unchanged + 1 : 0;
        g.depth = m;
        if (unchanged >= 2) {
            g.stabilized = true;
            break;
        }
    }
    g.even_classes.assign(even.begin(), even.end());
    g.odd_classes.assign(odd.begin(), odd.end());
    for (int k : g.even_classes) g.even_vertices.push_back(reg.entry(k).label);
    for (int k : g.odd_classes) g.odd_vertices.push_back(reg.entry(k).label);
    const IntMatrix app_s = letter_matrix(reg, scls, false);
    g.adjacency = restrict_matrix(app_s, g.even_classes, g.odd_classes);
    return g;
}

Periodicity check_periodicity(const Tower& t) {
    const int depth = t.depth();
    std::vector<std::vector<int>> supports;
    for (const auto& lvl : t.a_levels) supports.push_back(support_of(lvl.classes));

    auto restricted = [&](int n) { // inclusion A^{n+1} in A^{n+2}, 0-based n
        return restrict_matrix(t.a_inclusions[n], supports[n], supports[n + 1]);
    };

    for (int p = 1; 2 * p <= depth - 1; ++p) {
        for (int start = 0; start + 2 * p <= depth - 1; ++start) {
            bool ok = true;
            for (int n = start; n + p < depth && ok; ++n)
                if (supports[n] != supports[n + p]) ok = false;
            for (int n = start; n + p < depth - 1 && ok; ++n)
                if (restricted(n) != restricted(n + p)) ok = false;
            if (!ok) continue;

            IntMatrix comp = restricted(start);
            for (int i = 1; i < p; ++i) comp = comp * restricted(start + i);
            Periodicity out;
            out.period_start = start + 1;
            out.period = p;
            out.primitive = is_primitive(comp);
            return out;
        }
    }
    throw NoStabilization("tower shows no periodic pattern at depth " + std::to_string(depth));
}

bool is_primitive(const IntMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    const int n = static_cast<int>(m.rows());
    IntMatrix a = (m.array() > 0).cast<long long>().matrix();
    IntMatrix p = a;
    for (int k = 1; k <= n * n + 1; ++k) {
        if ((p.array() > 0).all()) return true;
        p = ((p * a).array() > 0).cast<long long>().matrix();
    }
    return false;
}

std::optional<int> find_conjugate_power(const Letter& sigma, int nu_max, const HopfPtr& h,
                                        const Tolerance& tol, std::uint64_t seed, int cap) {
    (void)cap;
    IrreducibleRegistry reg;
    reg.build(sigma, h, tol, seed);
    const auto scls = reg.classes_of(sigma.obj);
    const auto target = reg.classes_of(cat::bar(sigma).obj);

    std::vector<long long> acc(reg.size(), 0);
    acc[0] = 1;
    for (int e = 1; e + 1 <= nu_max; ++e) {
        acc = fuse_once(reg, acc, scls); // classes of sigma^e
        bool contained = true;
        for (int k = 0; k < reg.size(); ++k)
            if (target[k] > acc[k]) contained = false;
        if (contained) return e + 1;
    }
    return std::nullopt;
}

} // namespace tensorcat::tower
