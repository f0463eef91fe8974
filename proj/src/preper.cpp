#include "preper/preper.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace preper {

const char* method_name(PreperMethod m) {
    return m == PreperMethod::TropicalFilter ? "tropical-filter" : "exhaustive-search";
}

ExtRational evaluate(const SpecializedMap& m, const ExtRational& P) {
    // scratch reused across calls; the engine drives this in tight loops
    thread_local std::vector<Int> apow, bpow;
    thread_local Int fa, ga, mono;
    const int d = m.degree;
    apow.resize(d + 1);
    bpow.resize(d + 1);
    if (P.is_infinity()) { apow[1] = 1; bpow[1] = 0; }
    else { apow[1] = P.value().num(); bpow[1] = P.value().den(); }
    apow[0] = 1;
    bpow[0] = 1;
    for (int i = 2; i <= d; ++i) {
        mpz_mul(apow[i].get_mpz_t(), apow[i - 1].get_mpz_t(), apow[1].get_mpz_t());
        mpz_mul(bpow[i].get_mpz_t(), bpow[i - 1].get_mpz_t(), bpow[1].get_mpz_t());
    }
    fa = 0;
    ga = 0;
    for (int i = 0; i <= d; ++i) {
        if (m.F[i] == 0 && m.G[i] == 0) continue;
        mpz_mul(mono.get_mpz_t(), apow[i].get_mpz_t(), bpow[d - i].get_mpz_t());
        if (m.F[i] != 0) mpz_addmul(fa.get_mpz_t(), m.F[i].get_mpz_t(), mono.get_mpz_t());
        if (m.G[i] != 0) mpz_addmul(ga.get_mpz_t(), m.G[i].get_mpz_t(), mono.get_mpz_t());
    }
    if (ga == 0) {
        if (fa == 0) throw std::logic_error("evaluate: common zero (resultant is nonzero?)");
        return ExtRational::infinity();
    }
    return ExtRational(Rational(fa, ga));
}

namespace {

// Elimination-identity constant: with A1 F + A2 G = Res * x^(2d-1) and the
// analogous identity for y^(2d-1), any coprime integer point satisfies
// H(f(P)) >= H(P)^d / C where C = max of the coefficient 1-norm sums.
Int elimination_constant(const SpecializedMap& m) {
    const int d = m.degree;
    const int n = 2 * d;
    std::vector<std::vector<Int>> M(n, std::vector<Int>(n, Int(0)));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < n; ++i) {
            int k = d - (i - j);
            if (k >= 0 && k <= d) {
                M[i][j] = m.F[k];
                M[i][d + j] = m.G[k];
            }
        }
    auto minor_det = [&](int row, int col) {
        std::vector<std::vector<Int>> sub;
        for (int i = 0; i < n; ++i) {
            if (i == row) continue;
            std::vector<Int> r;
            for (int j = 0; j < n; ++j)
                if (j != col) r.push_back(M[i][j]);
            sub.push_back(std::move(r));
        }
        return int_matrix_det(std::move(sub));
    };
    Int c1 = 0, c2 = 0;
    for (int i = 0; i < n; ++i) {
        c1 += abs(minor_det(0, i));
        c2 += abs(minor_det(n - 1, i));
    }
    Int c = std::max(c1, c2);
    return c > 1 ? c : Int(1);
}

Rational cauchy_radius(const SpecializedMap& m) {
    // polynomial maps only: f(z) = sum F[i]/G[0] z^i; |z| > R implies the
    // orbit's absolute value strictly increases
    Rational lead(m.F[m.degree], m.G[0]);
    Rational sum(0);
    for (int i = 0; i < m.degree; ++i) sum += Rational(m.F[i], m.G[0]).abs();
    return Rational(1) + (Rational(1) + sum) / lead.abs();
}

struct PrimeWindow {
    uint64_t p;
    long lo, hi; // allowed v_p(z) range for non-exact orbits
    bool exact = false; // equality at lo required (clean negative polynomial slot)
};

void add_prime_support(std::set<uint64_t>& out, const Int& n) {
    if (n == 0) return;
    Int s = abs(n);
    for (uint32_t p : default_sieve().primes()) {
        if (s == 1 || Int(p) * p > s) break;
        if (mpz_divisible_ui_p(s.get_mpz_t(), p)) {
            out.insert(p);
            while (mpz_divisible_ui_p(s.get_mpz_t(), p))
                mpz_divexact_ui(s.get_mpz_t(), s.get_mpz_t(), p);
        }
    }
    if (s > 1) {
        Int lim(default_sieve().limit());
        if (s > lim * lim)
            throw arithmetic_limit_error("prime support: unfactorable coefficient");
        out.insert(s.get_ui());
    }
}

// Denominator structure for polynomial maps: every finite preperiodic
// u/w has v_p forced to v_p(a_0)/d at primes where only the constant slot
// is negative, v_p >= 0 at untouched primes, and v_p >= -(2M+1) at the
// finitely many primes with coefficient anomalies. Returns nullopt when the
// forced structure admits no finite preperiodic point at all.
std::optional<std::vector<PrimeWindow>> polynomial_windows(const SpecializedMap& m) {
    const int d = m.degree;
    const Int& lam = m.G[0];
    std::set<uint64_t> ps;
    add_prime_support(ps, lam);
    add_prime_support(ps, m.F[d]);
    std::vector<PrimeWindow> out;
    for (uint64_t p : ps) {
        long vl = padic_valuation(lam, p);
        long vd = m.F[d] == 0 ? VAL_INF : padic_valuation(m.F[d], p);
        bool clean = (vd - vl == 0);
        long tau = VAL_INF;
        if (m.F[0] != 0) tau = padic_valuation(m.F[0], p) - vl;
        long maxdev = 0;
        for (int i = 0; i <= d; ++i) {
            if (m.F[i] == 0) continue;
            long vi = padic_valuation(m.F[i], p) - vl;
            if (clean && i >= 1 && vi < 0) clean = false;
            maxdev = std::max(maxdev, std::labs(vi));
        }
        if (clean) {
            if (tau >= 0) continue; // v_p(z) >= 0, no denominator at p
            if (tau % d != 0) return std::nullopt; // no finite preperiodic point
            out.push_back({p, tau / d, tau / d, true});
        } else {
            out.push_back({p, -(2 * maxdev + 1), 0, false});
        }
    }
    return out;
}

// Safe valuation windows for the inverse shapes: outside these, valuations
// under iteration grow without bound (so the point is not preperiodic), and
// orbits through an exact hit are recovered by the backward-closure pass.
std::vector<PrimeWindow> inverse_windows(const SpecializedMap& m, bool dual) {
    const int d = m.degree;
    const Int& c = dual ? m.F[d] : m.F[0];
    std::set<uint64_t> ps;
    add_prime_support(ps, c);
    for (int i = 0; i <= d; ++i) add_prime_support(ps, m.G[i]);
    std::vector<PrimeWindow> out;
    for (uint64_t p : ps) {
        long tau = padic_valuation(c, p);
        long maxdev = 0;
        for (int i = 0; i <= d; ++i)
            if (m.G[i] != 0) maxdev = std::max(maxdev, padic_valuation(m.G[i], p));
        long w = 3 * (std::labs(tau) + maxdev + 1);
        out.push_back({p, -w, w, false});
    }
    return out;
}

// Exact windows for f = c / (a2 z (z - r)) with r rational and nonzero
// (degree 2, e = 1). Tracking sigma = v(z) + v(z - r) under iteration:
// sigma' = tau - sigma with the sign rules of the valuation pair, so a
// bounded orbit forces v_p(z) = tau/3 (tau < 0, 3 | tau), v_p(z) in
// [0, tau] (tau > 0), or v_p(z) = 0 (tau = 0) at every place where a2 and
// r are units. Returns nullopt when some place admits no valuation at all
// (then only exact-hit orbits remain, recovered by backward closure).
std::optional<std::vector<PrimeWindow>> crit2_shape_windows(const SpecializedMap& m) {
    const Int& c = m.F[0];
    const Int& g1 = m.G[1];
    const Int& g2 = m.G[2];
    std::set<uint64_t> ps;
    add_prime_support(ps, c);
    add_prime_support(ps, g1);
    add_prime_support(ps, g2);
    std::vector<PrimeWindow> out;
    for (uint64_t p : ps) {
        long v1 = padic_valuation(g1, p);
        long v2 = padic_valuation(g2, p);
        long tau = padic_valuation(c, p) - v2;
        if (v1 == v2) { // the finite root -g1/g2 is a p-unit
            if (tau == 0) continue; // v_p(z) = 0
            if (tau > 0) {
                out.push_back({p, 0, tau, false});
            } else {
                if (tau % 3 != 0) return std::nullopt;
                out.push_back({p, tau / 3, tau / 3, false});
            }
        } else {
            long maxdev = std::max({v1, v2, 0L});
            long w = 3 * (std::labs(tau) + maxdev + 1);
            out.push_back({p, -w, w, false});
        }
    }
    return out;
}

struct CandidateSet {
    std::vector<ExtRational> points;
    Int cutoff; // iteration escape cutoff (valid preperiodic height bound)
};

void push_box_candidates(std::vector<ExtRational>& out, const std::vector<PrimeWindow>& win,
                         const Int& height_cap, uint64_t cap) {
    // z = +- prod p^(e_p), e_p in [lo_p, hi_p]
    std::vector<Rational> partial{Rational(1)};
    for (const auto& w : win) {
        std::vector<Rational> next;
        Rational pw(Int(static_cast<unsigned long>(w.p)), Int(1));
        for (const auto& base : partial) {
            for (long e = w.lo; e <= w.hi; ++e) {
                if (w.exact && e != w.lo) break;
                Rational q = base;
                if (e > 0)
                    for (long i = 0; i < e; ++i) q *= pw;
                else
                    for (long i = 0; i < -e; ++i) q /= pw;
                next.push_back(q);
                if (next.size() > cap)
                    throw resource_limit_error("candidate box exceeds cap");
            }
        }
        partial.swap(next);
    }
    for (const auto& q : partial) {
        if (height(q) > height_cap) continue;
        out.push_back(ExtRational(q));
        out.push_back(ExtRational(-q));
    }
}

CandidateSet build_candidates(const SpecializedMap& m, const EngineOptions& opts) {
    const int d = m.degree;
    Int celim = elimination_constant(m);
    Int bweak;
    mpz_root(bweak.get_mpz_t(), celim.get_mpz_t(), d - 1);
    if (bweak < 1) bweak = 1;

    CandidateSet cs;
    cs.cutoff = bweak;
    cs.points.push_back(ExtRational::infinity());
    cs.points.push_back(ExtRational(Rational(0)));

    if (m.is_polynomial()) {
        auto windows = polynomial_windows(m);
        Rational radius = cauchy_radius(m);
        if (windows) {
            // enumerate denominators from the window structure
            std::vector<Int> dens{Int(1)};
            for (const auto& w : *windows) {
                std::vector<Int> next;
                Int pz(static_cast<unsigned long>(w.p));
                for (const auto& base : dens) {
                    long lo = -w.hi, hi = -w.lo; // v_p(den) range
                    if (w.exact) { lo = -w.lo; hi = lo; }
                    Int pe = 1;
                    for (long e = 0; e <= hi; ++e) {
                        if (e >= lo) next.push_back(base * pe);
                        pe *= pz;
                    }
                }
                dens.swap(next);
                if (dens.size() > opts.candidate_cap)
                    throw resource_limit_error("denominator set exceeds cap");
            }
            uint64_t total = 0;
            for (const Int& w : dens) {
                // |u| <= w * radius
                Int umax = (w * radius.num()) / radius.den();
                Int hcap = bweak * w;
                Int capped = std::min(umax, hcap); // height cap
                if (capped > Int(static_cast<unsigned long>(opts.candidate_cap)))
                    throw resource_limit_error("candidate set exceeds cap");
                total += 2 * mpz_get_ui(capped.get_mpz_t()) + 1;
                if (total > opts.candidate_cap)
                    throw resource_limit_error("candidate set exceeds cap");
                for (Int u = -capped; u <= capped; ++u) {
                    if (u == 0) continue;
                    Int g;
                    mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), w.get_mpz_t());
                    if (g != 1) continue;
                    cs.points.push_back(ExtRational(Rational(u, w)));
                }
            }
            // the combined bound is also a valid escape cutoff
            Int bpoly_num = 0;
            for (const Int& w : dens) bpoly_num = std::max(bpoly_num, w);
            Int bpoly = (bpoly_num * radius.num()) / radius.den() + 1;
            if (bpoly < 1) bpoly = 1;
            cs.cutoff = std::min(bweak, std::max(bpoly, Int(1)));
        }
        // windows == nullopt: denominator structure rules out finite
        // preperiodic points; candidates stay {0, inf} and the orbit test
        // settles them
        return cs;
    }

    // inverse shapes: F = c Y^d with G[0] = 0, or F = c X^d with G[d] = 0
    bool inv = m.F[0] != 0 && m.G[0] == 0;
    bool dual = m.F[d] != 0 && m.G[d] == 0 && m.G[0] != 0;
    for (int i = 1; i <= d && inv; ++i)
        if (m.F[i] != 0) inv = false;
    for (int i = 0; i < d && dual; ++i)
        if (m.F[i] != 0) dual = false;
    if (dual) {
        // expansion argument needs d - e >= 2
        int e = 0;
        for (int i = 0; i < d; ++i)
            if (m.G[i] != 0) e = i;
        if (d - e < 2) dual = false;
    }
    if (inv || dual) {
        if (inv && d == 2 && m.G[1] != 0) {
            auto win = crit2_shape_windows(m);
            if (win) push_box_candidates(cs.points, *win, bweak, opts.candidate_cap);
        } else {
            push_box_candidates(cs.points, inverse_windows(m, dual), bweak, opts.candidate_cap);
        }
        // exact-hit seeds: points mapping through zeros of the forms
        for (const auto& r : binary_form_roots(std::vector<Int>(m.G.begin(), m.G.end())))
            cs.points.push_back(r);
        cs.points.push_back(ExtRational(Rational(1)));
        cs.points.push_back(ExtRational(Rational(-1)));
        return cs;
    }

    // general fallback: every point up to the weak bound
    double est = 1.3 * mpz_get_d(bweak.get_mpz_t()) * mpz_get_d(bweak.get_mpz_t());
    if (est > static_cast<double>(opts.candidate_cap))
        throw resource_limit_error("general candidate enumeration would exceed cap (bound " +
                                   bweak.get_str() + ")");
    long bx = mpz_get_si(bweak.get_mpz_t());
    for_each_rational(bx, [&](const Rational& q) { cs.points.push_back(ExtRational(q)); });
    return cs;
}

enum class Verdict : uint8_t { Preperiodic, Escaping };

using VerdictMap = std::unordered_map<ExtRational, Verdict, ExtRationalHash>;

Verdict decide_orbit(const SpecializedMap& m, const ExtRational& start, const Int& cutoff,
                     VerdictMap& memo, std::vector<ExtRational>& path) {
    path.clear();
    ExtRational cur = start;
    Verdict verdict = Verdict::Escaping;
    for (;;) {
        auto it = memo.find(cur);
        if (it != memo.end()) { verdict = it->second; break; }
        if (std::find(path.begin(), path.end(), cur) != path.end()) {
            verdict = Verdict::Preperiodic;
            break;
        }
        if (height(cur) > cutoff) { verdict = Verdict::Escaping; memo.emplace(cur, verdict); break; }
        path.push_back(cur);
        cur = evaluate(m, cur);
        if (path.size() > 1'000'000)
            throw resource_limit_error("orbit walk exceeded step limit");
    }
    for (const auto& p : path) memo.emplace(p, verdict);
    return verdict;
}

} // namespace

Rational escape_bound(const SpecializedMap& m) {
    Int celim = elimination_constant(m);
    Int bweak;
    mpz_root(bweak.get_mpz_t(), celim.get_mpz_t(), m.degree - 1);
    if (bweak < 1) bweak = 1;
    if (!m.is_polynomial()) return Rational(bweak);
    auto windows = polynomial_windows(m);
    if (!windows) return Rational(1); // only infinity can be preperiodic
    Int wmax = 1;
    for (const auto& w : *windows) {
        Int pe = 1;
        Int pz(static_cast<unsigned long>(w.p));
        long e = std::max(0L, -w.lo); // maximal denominator exponent
        for (long i = 0; i < e; ++i) pe *= pz;
        wmax *= pe;
    }
    Rational bpoly = Rational(wmax) * cauchy_radius(m);
    return bpoly < Rational(bweak) ? bpoly : Rational(bweak);
}

PrePerResult compute_preper(const SpecializedMap& m, const EngineOptions& opts) {
    PrePerResult res;
    if (opts.use_filters && opts.family && opts.family->has_denominator_lemma()) {
        FilterVerdict v = apply_filters(*opts.family, m.t);
        if (v.decided) {
            auto set = materialize_verdict(m, v);
            res.portrait = assemble_portrait(m, set);
            res.method = PreperMethod::TropicalFilter;
            res.count = res.portrait.size();
            return res;
        }
    }

    CandidateSet cs = build_candidates(m, opts);
    VerdictMap memo;
    std::vector<ExtRational> scratch;
    std::set<ExtRational> preper;
    // settle the cheap starts first so later orbits terminate on memo hits
    for (const auto& p : cs.points)
        if (p.is_infinity() || height(p) <= 2)
            decide_orbit(m, p, cs.cutoff, memo, scratch);
    for (const auto& p : cs.points)
        if (decide_orbit(m, p, cs.cutoff, memo, scratch) == Verdict::Preperiodic) preper.insert(p);

    // backward closure: preimages of preperiodic points are preperiodic
    std::deque<ExtRational> queue(preper.begin(), preper.end());
    while (!queue.empty()) {
        ExtRational q = queue.front();
        queue.pop_front();
        for (const auto& pre : rational_preimages(m, q)) {
            if (preper.insert(pre).second) queue.push_back(pre);
        }
        if (preper.size() > 100'000)
            throw resource_limit_error("preperiodic closure unexpectedly large");
    }

    res.portrait = assemble_portrait(m, std::vector<ExtRational>(preper.begin(), preper.end()));
    res.method = PreperMethod::ExhaustiveSearch;
    res.search_bound_used = cs.cutoff;
    res.count = res.portrait.size();
    return res;
}

long cycle_length_bound(const SpecializedMap& m) {
    auto bad = bad_primes(m);
    uint64_t p = 2;
    for (uint32_t q : default_sieve().primes()) {
        if (std::find(bad.begin(), bad.end(), static_cast<uint64_t>(q)) == bad.end()) {
            p = q;
            break;
        }
    }
    return 3 * static_cast<long>(p) * static_cast<long>(p);
}

CountBound preper_count_bound(const SpecializedMap& m, double epsilon) {
    CountBound out;
    int s = bad_place_count(m);
    const int d = m.degree;
    Int pw;
    unsigned long expo = 16ul * static_cast<unsigned long>(s) * static_cast<unsigned long>(d) *
                         static_cast<unsigned long>(d) * static_cast<unsigned long>(d);
    mpz_ui_pow_ui(pw.get_mpz_t(), 2, expo);
    out.rational_bound = 5 * pw + 3;
    if (m.is_polynomial()) {
        double dd = d;
        double coeff = (dd * dd - 2 * dd + 2) / std::log(dd) + epsilon;
        out.polynomial_bound = coeff * s * std::log(static_cast<double>(s));
    }
    return out;
}

int Portrait::max_cycle() const {
    int mx = 0;
    for (const auto& [l, t] : types)
        if (t == 0) mx = std::max(mx, l);
    return mx;
}

bool Portrait::has_node(const ExtRational& p) const {
    return std::find(nodes.begin(), nodes.end(), p) != nodes.end();
}

bool Portrait::has_cycle_of_length(int l) const {
    for (const auto& [cl, t] : types)
        if (t == 0 && cl == l) return true;
    return false;
}

bool Portrait::has_type(int l, int tail) const {
    for (const auto& [cl, t] : types)
        if (cl == l && t == tail) return true;
    return false;
}

Portrait assemble_portrait(const SpecializedMap& m, const std::vector<ExtRational>& points) {
    Portrait p;
    p.nodes = points;
    std::sort(p.nodes.begin(), p.nodes.end());
    p.nodes.erase(std::unique(p.nodes.begin(), p.nodes.end()), p.nodes.end());
    std::map<ExtRational, int> index;
    for (int i = 0; i < p.size(); ++i) index[p.nodes[i]] = i;
    p.succ.resize(p.size());
    for (int i = 0; i < p.size(); ++i) {
        ExtRational img = evaluate(m, p.nodes[i]);
        auto it = index.find(img);
        if (it == index.end())
            throw std::logic_error("portrait not forward closed at " + p.nodes[i].str());
        p.succ[i] = it->second;
    }
    // locate cycles: iterate successor chains with coloring
    p.types.assign(p.size(), {0, -1});
    std::vector<int> state(p.size(), 0); // 0 unseen, 1 in progress, 2 done
    for (int i = 0; i < p.size(); ++i) {
        if (state[i] != 0) continue;
        std::vector<int> chain;
        int cur = i;
        while (state[cur] == 0) {
            state[cur] = 1;
            chain.push_back(cur);
            cur = p.succ[cur];
        }
        if (state[cur] == 1) {
            // found a new cycle starting at cur
            auto it = std::find(chain.begin(), chain.end(), cur);
            int len = static_cast<int>(chain.end() - it);
            for (auto jt = it; jt != chain.end(); ++jt) p.types[*jt] = {len, 0};
        }
        for (int v : chain) state[v] = 2;
    }
    // tails by walking forward until a labeled node
    std::function<std::pair<int, int>(int)> label = [&](int v) -> std::pair<int, int> {
        if (p.types[v].second >= 0) return p.types[v];
        auto nxt = label(p.succ[v]);
        p.types[v] = {nxt.first, nxt.second + 1};
        return p.types[v];
    };
    for (int i = 0; i < p.size(); ++i) label(i);
    return p;
}

namespace {

// AHU-style canonical string of the in-tree hanging at a node (edges point
// toward the cycle), excluding cycle predecessors.
std::string tree_key(int v, const std::vector<std::vector<int>>& preds,
                     const std::vector<char>& on_cycle) {
    std::vector<std::string> kids;
    for (int u : preds[v])
        if (!on_cycle[u]) kids.push_back(tree_key(u, preds, on_cycle));
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (const auto& k : kids) out += k;
    out += ")";
    return out;
}

} // namespace

std::string Portrait::canonical_key() const {
    const int n = size();
    std::vector<std::vector<int>> preds(n);
    for (int i = 0; i < n; ++i) preds[succ[i]].push_back(i);
    std::vector<char> on_cycle(n, 0);
    for (int i = 0; i < n; ++i)
        if (types[i].second == 0) on_cycle[i] = 1;
    std::vector<std::string> cycles;
    std::vector<char> seen(n, 0);
    for (int i = 0; i < n; ++i) {
        if (!on_cycle[i] || seen[i]) continue;
        // collect the cycle through i in successor order
        std::vector<int> cyc;
        int cur = i;
        do {
            cyc.push_back(cur);
            seen[cur] = 1;
            cur = succ[cur];
        } while (cur != i);
        std::vector<std::string> keys;
        for (int v : cyc) keys.push_back(tree_key(v, preds, on_cycle));
        // minimal rotation
        std::string best;
        for (size_t r = 0; r < keys.size(); ++r) {
            std::string cand;
            for (size_t k = 0; k < keys.size(); ++k) cand += keys[(r + k) % keys.size()] + "|";
            if (best.empty() || cand < best) best = cand;
        }
        cycles.push_back("[" + best + "]");
    }
    std::sort(cycles.begin(), cycles.end());
    std::string out;
    for (const auto& c : cycles) out += c;
    return out;
}

std::string Portrait::hash() const {
    std::string key = canonical_key();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::string portrait_to_json(const Rational& t, const PrePerResult& r) {
    nlohmann::json j;
    j["t"] = t.str();
    j["count"] = r.count;
    j["method"] = method_name(r.method);
    if (r.search_bound_used) j["search_bound"] = r.search_bound_used->get_str();
    j["nodes"] = nlohmann::json::array();
    for (const auto& n : r.portrait.nodes) j["nodes"].push_back(n.str());
    j["edges"] = r.portrait.succ;
    j["types"] = nlohmann::json::array();
    for (const auto& [l, tl] : r.portrait.types) j["types"].push_back({l, tl});
    j["portrait_hash"] = r.portrait.hash();
    return j.dump(2);
}

} // namespace preper
