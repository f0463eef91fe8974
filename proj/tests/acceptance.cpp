// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run via ctest or directly; expect a few minutes of work at the
// larger height bounds.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "preper/asymptotics.hpp"
#include "preper/census.hpp"

using namespace preper;
using clk = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << "[" << (ok ? "PASS" : "FAIL") << "] criterion " << id << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

double elapsed(clk::time_point start) {
    return std::chrono::duration<double>(clk::now() - start).count();
}

const FamilyLift& quad() { return family_registry().get("quadratic"); }

std::set<ExtRational> as_set(const std::vector<ExtRational>& v) {
    return std::set<ExtRational>(v.begin(), v.end());
}

void criterion1_figures() {
    auto t0 = clk::now();
    RegionCount m3 = count_image_phi(-3, 100);
    double dt1 = elapsed(t0);
    bool ok = m3.total == 53 && m3.n21 == 9 && m3.n42 == 35 && m3.n40 == 9 && dt1 < 1.0;

    t0 = clk::now();
    RegionCount p1 = count_image_phi(1, 100);
    double dt2 = elapsed(t0);
    ok = ok && p1.total == 64 && p1.n21 == 13 && p1.n42 == 41 && p1.n40 == 10 && dt2 < 1.0;

    t0 = clk::now();
    long psi = count_image_psi(100);
    double dt3 = elapsed(t0);
    ok = ok && psi == 65 && dt3 < 1.0;

    std::ostringstream d;
    d << "phi_-3: " << m3.n21 << "+" << m3.n42 << "+" << m3.n40 << "=" << m3.total
      << ", phi_1: " << p1.n21 << "+" << p1.n42 << "+" << p1.n40 << "=" << p1.total
      << ", psi: " << psi << ", times " << dt1 << "/" << dt2 << "/" << dt3 << "s";
    report(1, "figure reproduction (53, 64, 65 with class breakdowns)", ok, d.str());
}

void criterion2_exceptional_portraits() {
    const std::vector<std::pair<Rational, int>> expected{
        {Rational(0), 4}, {Rational(-1), 4}, {Rational(-2), 6},
        {Rational(1, 4), 3}, {Rational(-29, 16), 9},
    };
    bool ok = true;
    std::ostringstream d;
    for (const auto& [t, want] : expected) {
        EngineOptions opts;
        opts.family = &quad();
        PrePerResult r = compute_preper(quad().specialize(t), opts);
        if (r.count != want) ok = false;
        d << t.str() << "->" << r.count << " ";
    }
    report(2, "exceptional-parameter portraits have counts {4, 4, 6, 3, 9}", ok, d.str());
}

void criterion3_identity_suite() {
    bool ok = true;
    std::ostringstream d;
    for (long X : {29L, 50L, 100L}) {
        auto t0 = clk::now();
        CensusOptions opts;
        opts.workers = 1;
        CensusSummary s = run_census(quad(), X, opts);
        double dt = elapsed(t0);
        bool here = s.identities.applicable && s.identities.ne_ok && s.identities.r_ok &&
                    s.unclassified == 0 && large_cycle_scan(s, 3).empty();
        if (X == 100 && dt >= 30.0) here = false;
        ok = ok && here;
        d << "X=" << X << " NE=" << s.identities.ne_direct << "=" << s.identities.ne_from_classes
          << " R=" << s.identities.r_direct.get_str() << "=" << s.identities.r_from_classes.get_str()
          << " t=" << dt << "s; ";
    }
    report(3, "counting identities exact at X in {29, 50, 100}, no unclassified, Z_3 empty", ok,
           d.str());
}

void criterion4_constants() {
    Interval pi2 = Interval::pi() * Interval::pi();
    bool ok = (constant_Cqr(2, 1).value * pi2).within(Interval(4L), 1e-20);
    ok = ok && (constant_Cqr(4, 2).value * pi2).within(Interval(1L), 1e-20);
    ok = ok && (constant_Cqr(4, 0).value * pi2).within(Interval(1L), 1e-20);
    auto [c1, c2] = constant_C1C2();
    ok = ok && (c2.value / c1.value).within(Interval(4L), 1e-30);
    ok = ok && std::abs(c2.value.mid() - 4.607) < 0.005;
    Interval viaGamma = Interval(12L) / pi2 *
                        (constant_gamma(1).value + constant_gamma(-3).value);
    ok = ok && c2.value.within(viaGamma, 1e-20);
    report(4, "constants: C_{q,r} pi^2 identities, C2 = 4C1, C2 = 4.607 (3 s.f.), dual route",
           ok, "C2 = " + c2.decimal(12));
}

void criterion5_oracle_equivalence() {
    auto t0 = clk::now();
    std::mt19937_64 rng(0x5eed5eed);
    int checked = 0, bad = 0;
    while (checked < 200) {
        long a = static_cast<long>(rng() % 101) - 50;
        long b = 1 + static_cast<long>(rng() % 50);
        if (std::gcd(std::labs(a), b) != 1) continue;
        Rational t(a, b);
        if (height(t) > 50) continue;
        ++checked;
        SpecializedMap m = quad().specialize(t);
        EngineOptions opts;
        opts.family = &quad();
        PrePerResult r = compute_preper(m, opts);
        auto brute = oracle::brute_force_preper(m, 100, 200, Int(1000000));
        if (as_set(r.portrait.nodes) != brute) ++bad;
    }
    double dt = elapsed(t0);
    bool ok = bad == 0 && dt < 120.0;
    std::ostringstream d;
    d << checked << " parameters, " << bad << " mismatches, " << dt << "s";
    report(5, "engine equals brute-force oracle on 200 seeded parameters", ok, d.str());
}

void criterion6_tropical_soundness() {
    auto t0 = clk::now();
    long decided = 0, mismatches = 0;
    // exhaustive quadratic sweep (the acceptance requirement), plus the same
    // sweep for the crit2 family
    for (const char* name : {"quadratic", "crit2"}) {
        const FamilyLift& fam = family_registry().get(name);
        for (long b = 1; b <= 200; ++b) {
            for (long a = -200; a <= 200; ++a) {
                if (b > 1 && (a == 0 || std::gcd(std::labs(a), b) != 1)) continue;
                Rational t(a, b);
                if (fam.is_degenerate_at(t)) continue;
                FilterVerdict v = apply_filters(fam, t);
                if (!v.decided) continue;
                ++decided;
                SpecializedMap m = fam.specialize(t);
                EngineOptions opts;
                opts.family = &fam;
                opts.use_filters = false;
                PrePerResult r = compute_preper(m, opts);
                if (as_set(materialize_verdict(m, v)) != as_set(r.portrait.nodes)) ++mismatches;
            }
        }
    }
    std::ostringstream d;
    d << decided << " decided verdicts, " << mismatches << " mismatches, " << elapsed(t0) << "s";
    report(6, "tropical soundness: exhaustive sweep to height 200", mismatches == 0, d.str());
}

void criterion7_squarefull() {
    SquarefullCensus s100 = squarefull_census(100);
    bool ok = s100.count == 14;
    SquarefullCensus s1e6 = squarefull_census(1000000);
    double predicted = s1e6.predicted.mid();
    double rel = std::abs(static_cast<double>(s1e6.count) - predicted) / predicted;
    ok = ok && rel < 0.02;
    std::ostringstream d;
    d << "count(100) = " << s100.count << ", count(10^6) = " << s1e6.count << " vs "
      << predicted << " (rel " << rel
      << "; the zeta(2/3)/zeta(2) X^(1/3) correction is -6.8% at this X, so the 2% band "
         "around the sqrt(X) main term alone is not attainable)";
    report(7, "squarefull counts: exact 14 at 100, within 2% of zeta ratio at 10^6", ok, d.str());
}

void criterion8_trend_bands() {
    auto t0 = clk::now();
    auto [c1rep, c2rep] = constant_C1C2();
    double c1 = c1rep.value.mid();
    double c2 = c2rep.value.mid();
    std::vector<long> xs{100, 400, 1600};
    std::vector<double> ne, r;
    for (long X : xs) {
        CensusOptions opts;
        opts.workers = 2;
        CensusSummary s = run_census(quad(), X, opts);
        ne.push_back(static_cast<double>(s.NE) / X);
        r.push_back(s.R.get_d() / X);
    }
    bool band = std::abs(ne.back() - c1) <= 0.30 * c1 && std::abs(r.back() - c2) <= 0.30 * c2;
    auto monotone_toward = [](const std::vector<double>& seq, double limit) {
        for (size_t i = 1; i < seq.size(); ++i)
            if (std::abs(seq[i] - limit) > std::abs(seq[i - 1] - limit)) return false;
        return true;
    };
    bool ok = band && monotone_toward(ne, c1) && monotone_toward(r, c2);
    std::ostringstream d;
    d << "NE/X: " << ne[0] << ", " << ne[1] << ", " << ne[2] << " -> C1 = " << c1
      << "; R/X: " << r[0] << ", " << r[1] << ", " << r[2] << " -> C2 = " << c2 << "; "
      << elapsed(t0) << "s";
    report(8, "asymptotic bands at X = 1600 with monotone approach", ok, d.str());
}

void criterion9_determinism() {
    auto render = [&](int workers) {
        std::ostringstream os;
        CsvRowSink sink(os);
        CensusOptions opts;
        opts.workers = workers;
        run_census(quad(), 100, opts, &sink);
        return os.str();
    };
    std::string w1 = render(1);
    std::string w8 = render(8);
    report(9, "census CSV at X = 100 byte-identical for 1 and 8 workers", w1 == w8,
           std::to_string(w1.size()) + " bytes");
}

} // namespace

int main(int argc, char** argv) {
    auto t0 = clk::now();
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    auto want = [&](int id) { return only == 0 || only == id; };
    if (want(1)) criterion1_figures();
    if (want(2)) criterion2_exceptional_portraits();
    if (want(3)) criterion3_identity_suite();
    if (want(4)) criterion4_constants();
    if (want(5)) criterion5_oracle_equivalence();
    if (want(6)) criterion6_tropical_soundness();
    if (want(7)) criterion7_squarefull();
    if (want(8)) criterion8_trend_bands();
    if (want(9)) criterion9_determinism();
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << " in " << elapsed(t0) << "s" << std::endl;
    return failures == 0 ? 0 : 1;
}
