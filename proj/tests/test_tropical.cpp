#include <doctest.h>

#include <numeric>
#include <set>

#include "oracles.hpp"
#include "preper/preper.hpp"
#include "preper/tropical.hpp"

using namespace preper;

namespace {
std::set<ExtRational> as_set(const std::vector<ExtRational>& v) {
    return std::set<ExtRational>(v.begin(), v.end());
}
const std::set<ExtRational> kInfOnly{ExtRational::infinity()};
} // namespace

TEST_CASE("filter_additive") {
    // z^2 + t with v_p(t) = -1
    std::vector<long> vals{VAL_INF, VAL_INF, 0};
    auto v = filter_additive(vals, -1, 2);
    CHECK(v.decided);
    CHECK(as_set(v.base) == kInfOnly);
    CHECK(v.closure_depth == 0);

    CHECK(!filter_additive(vals, -2, 2).decided); // d | v_c

    // z^3 + t with v_p(t) = -2: 3 does not divide -2
    std::vector<long> vals3{VAL_INF, VAL_INF, VAL_INF, 0};
    CHECK(filter_additive(vals3, -2, 3).decided);
}

TEST_CASE("filter_additive is monotone in hypotheses") {
    // weakening v(a_d) = 0 to v(a_d) > 0 must return undecided
    CHECK(!filter_additive({VAL_INF, VAL_INF, 1}, -1, 2).decided);
    // a negative coefficient valuation must return undecided
    CHECK(!filter_additive({-1, VAL_INF, 0}, -1, 2).decided);
    CHECK(!filter_additive({VAL_INF, -2, 0}, -3, 2).decided);
    // nonnegative v_c must return undecided
    CHECK(!filter_additive({VAL_INF, VAL_INF, 0}, 0, 2).decided);
    CHECK(!filter_additive({VAL_INF, VAL_INF, 0}, 3, 2).decided);
}

TEST_CASE("filter_inverse") {
    // t/(z^2 - z) with v_p(t) = -1: 2 and 3 both miss
    auto v = filter_inverse(-1, 2, 1, {0, 0});
    CHECK(v.decided);
    CHECK(v.closure_depth == 1);
    // materialize on the crit2 specialization: f^{-1}(inf) = {0, 1}
    const FamilyLift& fam = family_registry().get("crit2");
    auto set = materialize_verdict(fam.specialize(Rational(1, 2)), v);
    CHECK(as_set(set) == std::set<ExtRational>{ExtRational(Rational(0)), ExtRational(Rational(1)),
                                               ExtRational::infinity()});

    CHECK(!filter_inverse(-3, 2, 1, {0, 0}).decided); // (d+1) | v_c
    CHECK(filter_inverse(-5, 3, 1, {0, 0, 0}).decided);
    CHECK(!filter_inverse(-1, 2, 1, {1, 0}).decided); // v(a_e) != 0
}

TEST_CASE("filter_inverse decided verdict verified by engine (d=3, e=1, v_c=-5)") {
    // f = T/(z + z^3), t = 1/32
    FamilyLift fam = inverse_template(1, {Rational(1), Rational(0), Rational(1)});
    Rational t(1, 32);
    auto v = apply_filters(fam, t);
    REQUIRE(v.decided);
    SpecializedMap m = fam.specialize(t);
    auto claimed = as_set(materialize_verdict(m, v));
    EngineOptions opts;
    opts.family = &fam;
    opts.use_filters = false;
    PrePerResult r = compute_preper(m, opts);
    CHECK(claimed == as_set(r.portrait.nodes));
    // and against the brute-force oracle
    CHECK(claimed == oracle::brute_force_preper(m, 40, 100, Int(1000000)));
}

TEST_CASE("filter_inverse_dual (remark variant, flagged for extra oracle testing)") {
    auto v = filter_inverse_dual(-1, 3, 1, {0, 0});
    CHECK(v.decided);
    CHECK(!filter_inverse_dual(-2, 3, 1, {0, 0}).decided); // (d-1) | v_c
    // f = T z^3 / (1 + z): direct family construction
    std::vector<PolyZ> F{PolyZ{}, PolyZ{}, PolyZ{}, PolyZ{Int(0), Int(1)}};
    std::vector<PolyZ> G{PolyZ{Int(1)}, PolyZ{Int(1)}, PolyZ{}, PolyZ{}};
    FamilyLift fam("dual31", 3, F, G,
                   {ExtRational(Rational(0)), ExtRational(Rational(-1)), ExtRational::infinity()});
    CHECK(fam.shape() == FamilyShape::InversePolyDual);
    CHECK(fam.has_denominator_lemma());
    Rational t(1, 5);
    auto fired = apply_filters(fam, t);
    REQUIRE(fired.decided);
    SpecializedMap m = fam.specialize(t);
    auto claimed = as_set(materialize_verdict(m, fired));
    EngineOptions opts;
    opts.family = &fam;
    opts.use_filters = false;
    CHECK(claimed == as_set(compute_preper(m, opts).portrait.nodes));
    CHECK(claimed == oracle::brute_force_preper(m, 40, 100, Int(1000000)));
}

TEST_CASE("filter_three_cycle") {
    auto main_case = filter_three_cycle(-1, 5, 3);
    CHECK(main_case.decided);
    CHECK(main_case.closure_depth == 0);
    CHECK(as_set(main_case.base) ==
          std::set<ExtRational>{ExtRational(Rational(0)), ExtRational(Rational(1)),
                                ExtRational::infinity()});
    auto e2 = filter_three_cycle(-1, 5, 2);
    CHECK(e2.decided);
    CHECK(e2.closure_depth == 1);
    auto e2d4 = filter_three_cycle(-1, 4, 2);
    CHECK(e2d4.decided);
    CHECK(e2d4.closure_depth == 3);
    CHECK(!filter_three_cycle(-2, 5, 3).decided);
    CHECK(!filter_three_cycle(-1, 4, 3).decided); // d >= e+2 fails
}

TEST_CASE("decided three-cycle verdict verified by engine on a concrete instance") {
    FamilyLift fam = three_cycle_template(5, 3);
    Rational t(1, 2); // v_2(t) = -1 and 2 does not divide d = 5
    auto v = apply_filters(fam, t);
    REQUIRE(v.decided);
    SpecializedMap m = fam.specialize(t);
    auto claimed = as_set(materialize_verdict(m, v));
    CHECK(claimed == std::set<ExtRational>{ExtRational(Rational(0)), ExtRational(Rational(1)),
                                           ExtRational::infinity()});
    EngineOptions opts;
    opts.family = &fam;
    opts.use_filters = false;
    opts.candidate_cap = 50'000'000;
    CHECK(claimed == as_set(compute_preper(m, opts).portrait.nodes));
}

TEST_CASE("ab_orbit follows the displayed piecewise formulas") {
    auto o1 = ab_orbit(0, 0, 5, 3, -1, 1);
    REQUIRE(o1.size() == 2);
    CHECK(o1[1] == std::pair<long, long>{-1, -1});

    auto o2 = ab_orbit(-1, -1, 5, 3, -1, 1);
    CHECK(o2[1] == std::pair<long, long>{1, 0});

    // vertical ray (0, 1): three steps return to the vertical ray with
    // b''' = -1 - (d-e)(-1 - d b) = 11 for d = 5, e = 3
    auto o3 = ab_orbit(0, 1, 5, 3, -1, 3);
    REQUIRE(o3.size() == 4);
    CHECK(o3[1] == std::pair<long, long>{-6, -6});
    CHECK(o3[2] == std::pair<long, long>{11, 0});
    CHECK(o3[3] == std::pair<long, long>{0, 11});

    CHECK_THROWS_AS(ab_orbit(1, 1, 5, 3), std::domain_error);
    CHECK_THROWS_AS(ab_orbit(-2, -1, 5, 3), std::domain_error);
}

TEST_CASE("ab_orbit escape along the vertical ray") {
    // the b-coordinate after 3k steps is strictly increasing in k
    for (long b = 1; b <= 50; ++b) {
        long prev = b;
        auto orbit = ab_orbit(0, b, 5, 3, -1, 15);
        for (int k = 1; k <= 5; ++k) {
            auto [ak, bk] = orbit[3 * k];
            CHECK(ak == 0);
            CHECK(bk > prev);
            prev = bk;
        }
    }
}

TEST_CASE("denominator lemma") {
    const FamilyLift& quad = family_registry().get("quadratic");
    CHECK(denominator_lemma(quad, Rational(1, 2)));     // 2 is not a square
    CHECK(!denominator_lemma(quad, Rational(-29, 16))); // 16 = 4^2
    CHECK(!denominator_lemma(quad, Rational(5)));       // integer denominator
    const FamilyLift& u3 = family_registry().get("unicritical3");
    CHECK(denominator_lemma(u3, Rational(5, 7))); // v_7 = -1, S empty

    // no lemma registered for a general-shape family
    std::vector<PolyZ> F{PolyZ{Int(0), Int(1)}, PolyZ{}, PolyZ{Int(1)}};
    std::vector<PolyZ> G{PolyZ{}, PolyZ{Int(1)}, PolyZ{Int(1)}};
    FamilyLift gen("gen", 2, F, G, {});
    CHECK(gen.shape() == FamilyShape::General);
    CHECK_THROWS_AS(denominator_lemma(gen, Rational(1, 2)), std::domain_error);
}

TEST_CASE("quadratic: square-denominator test prunes exactly the non-squares") {
    const FamilyLift& quad = family_registry().get("quadratic");
    for (long b = 1; b <= 30; ++b) {
        Rational t(1, b);
        bool square_den = mpz_perfect_square_p(Int(b).get_mpz_t()) != 0;
        CHECK(apply_filters(quad, t).decided == !square_den);
    }
}

TEST_CASE("tropical soundness: exhaustive sweeps at height 60") {
    // every decided verdict equals the engine's search with filters off;
    // the acceptance suite repeats this exhaustively at height 200
    for (const char* name : {"quadratic", "crit2"}) {
        const FamilyLift& fam = family_registry().get(name);
        long X = 60;
        long mismatches = 0;
        for (long b = 1; b <= X; ++b) {
            for (long a = -X; a <= X; ++a) {
                if (b > 1 && (a == 0 || std::gcd(std::labs(a), b) != 1)) continue;
                Rational t(a, b);
                if (fam.is_degenerate_at(t)) continue;
                FilterVerdict v = apply_filters(fam, t);
                if (!v.decided) continue;
                SpecializedMap m = fam.specialize(t);
                EngineOptions opts;
                opts.family = &fam;
                opts.use_filters = false;
                PrePerResult r = compute_preper(m, opts);
                if (as_set(materialize_verdict(m, v)) != as_set(r.portrait.nodes)) ++mismatches;
            }
        }
        CHECK(mismatches == 0);
    }
}
