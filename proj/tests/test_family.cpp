#include <doctest.h>

#include <fstream>
#include <random>

#include "oracles.hpp"
#include "preper/family.hpp"

using namespace preper;

TEST_CASE("quadratic family: resultant polynomial is 1") {
    FamilyLift fam = quadratic_family();
    CHECK(fam.resultant().degree == 0);
    CHECK(fam.resultant().poly == PolyZ{Int(1)});
    CHECK(fam.resultant().roots.empty());
    CHECK(fam.codegree() == 1);
    CHECK(fam.shape() == FamilyShape::Polynomial);
    CHECK(fam.gamma().size() == 1);
    CHECK(fam.gamma()[0].is_infinity());
    CHECK(fam.has_denominator_lemma());
    CHECK(fam.filter_excluded_primes().empty());
}

TEST_CASE("crit2 family: resultant polynomial is T^2 up to sign") {
    FamilyLift fam = crit2_family();
    PolyZ r = fam.resultant().poly;
    PolyZ t2{Int(0), Int(0), Int(1)};
    CHECK((r == t2 || r == poly_neg(t2)));
    // oracle: direct 4x4 Sylvester determinant by Laplace expansion
    PolyZ viaLaplace = oracle::laplace_det(sylvester_matrix(fam.F(), fam.G()));
    CHECK(r == viaLaplace);
    CHECK(fam.codegree() == 1);
    REQUIRE(fam.resultant().roots.size() == 1);
    CHECK(fam.resultant().roots[0] == Rational(0)); // domain excludes t = 0
    CHECK(fam.shape() == FamilyShape::InversePoly);
    CHECK(fam.shape_e() == 1);
    // generic portrait: 1 -> inf -> 0 -> inf
    std::set<ExtRational> gamma(fam.gamma().begin(), fam.gamma().end());
    CHECK(gamma == std::set<ExtRational>{ExtRational(Rational(0)), ExtRational(Rational(1)),
                                         ExtRational::infinity()});
}

TEST_CASE("non-unit resultant path: F = X^2 + T Y^2, G = T Y^2") {
    std::vector<PolyZ> F{PolyZ{Int(0), Int(1)}, PolyZ{}, PolyZ{Int(1)}};
    std::vector<PolyZ> G{PolyZ{Int(0), Int(1)}, PolyZ{}, PolyZ{}};
    PolyZ viaBareiss = sylvester_resultant(F, G);
    PolyZ viaLaplace = oracle::laplace_det(sylvester_matrix(F, G));
    CHECK(viaBareiss == viaLaplace);
    CHECK(poly_degree(viaBareiss) >= 1); // T divides it
    CHECK(poly_eval(viaBareiss, Int(0)) == 0);
    FamilyLift fam("nonunit", 2, F, G, {});
    CHECK(fam.is_degenerate_at(Rational(0)));
}

TEST_CASE("codegree examples") {
    CHECK(quadratic_family().codegree() == 1);
    CHECK(crit2_family().codegree() == 1);
    // f(z) = z^2 + T^2
    std::vector<PolyZ> F{PolyZ{Int(0), Int(0), Int(1)}, PolyZ{}, PolyZ{Int(1)}};
    std::vector<PolyZ> G{PolyZ{Int(1)}, PolyZ{}, PolyZ{}};
    FamilyLift fam("sq", 2, F, G, {ExtRational::infinity()});
    CHECK(fam.codegree() == 2);
}

TEST_CASE("degree bound deg R_f <= 2dd'") {
    for (const auto& name : family_registry().names()) {
        const FamilyLift& fam = family_registry().get(name);
        CHECK(fam.resultant().degree <= 2l * fam.degree() * fam.codegree());
    }
}

TEST_CASE("specialize quadratic") {
    FamilyLift fam = quadratic_family();
    SpecializedMap m = fam.specialize(Rational(1, 4));
    CHECK(m.F == std::vector<Int>{Int(1), Int(0), Int(4)});
    CHECK(m.G == std::vector<Int>{Int(4), Int(0), Int(0)});
    SpecializedMap m0 = fam.specialize(Rational(0));
    CHECK(m0.F == std::vector<Int>{Int(0), Int(0), Int(1)});
    CHECK(m0.G == std::vector<Int>{Int(1), Int(0), Int(0)});
    CHECK(m.is_polynomial());
}

TEST_CASE("degenerate parameter raises") {
    FamilyLift fam = crit2_family();
    CHECK_THROWS_AS(fam.specialize(Rational(0)), degenerate_parameter_error);
    CHECK(!fam.is_degenerate_at(Rational(1, 2)));
}

TEST_CASE("resultant ideal norm: quadratic gives b^4") {
    FamilyLift fam = quadratic_family();
    CHECK(resultant_ideal_norm(fam.specialize(Rational(1, 4))) == 256);
    CHECK(resultant_ideal_norm(fam.specialize(Rational(3))) == 1);
    for (long b = 1; b <= 100; ++b) {
        long a = (b % 3) + 1 + b; // any numerator coprime to b will do
        while (std::gcd(a, b) != 1) ++a;
        Int norm = resultant_ideal_norm(fam.specialize(Rational(a, b)));
        CHECK(norm == Int(b) * b * b * b);
    }
}

TEST_CASE("resultant ideal norm: crit2 at t = 1/2") {
    FamilyLift fam = crit2_family();
    SpecializedMap m = fam.specialize(Rational(1, 2));
    // oracle: direct Sylvester determinant of the normalized forms
    std::vector<PolyZ> F, G;
    for (const auto& c : m.F) F.push_back(c == 0 ? PolyZ{} : PolyZ{c});
    for (const auto& c : m.G) G.push_back(c == 0 ? PolyZ{} : PolyZ{c});
    PolyZ det = oracle::laplace_det(sylvester_matrix(F, G));
    REQUIRE(det.size() == 1);
    CHECK(resultant_ideal_norm(m) == abs(det[0]));
    CHECK(resultant_ideal_norm(m) == 4);
}

TEST_CASE("bad primes and place count") {
    FamilyLift fam = quadratic_family();
    auto bp = bad_primes(fam.specialize(Rational(1, 12)));
    CHECK(bp == std::vector<uint64_t>{2, 3});
    CHECK(bad_place_count(fam.specialize(Rational(1, 12))) == 3);
    CHECK(bad_primes(fam.specialize(Rational(5))).empty());
    CHECK(bad_place_count(fam.specialize(Rational(5))) == 1);
    CHECK(bad_primes(fam.specialize(Rational(1, 4))) == std::vector<uint64_t>{2});
}

TEST_CASE("good reduction") {
    FamilyLift fam = quadratic_family();
    CHECK(!good_reduction(fam.specialize(Rational(1, 4)), 2));
    CHECK(good_reduction(fam.specialize(Rational(1, 4)), 3));
    for (uint64_t p : {2, 3, 5, 7, 11})
        CHECK(good_reduction(fam.specialize(Rational(7)), p));
    // good_reduction(m, p) false exactly for p in bad_primes(m)
    SpecializedMap m = fam.specialize(Rational(7, 30));
    auto bp = bad_primes(m);
    for (uint64_t p : {2, 3, 5, 7, 11, 13})
        CHECK(good_reduction(m, p) == (std::find(bp.begin(), bp.end(), p) == bp.end()));
}

TEST_CASE("map height") {
    FamilyLift fam = quadratic_family();
    CHECK(map_height(fam.specialize(Rational(2, 3))) == 3);
    CHECK(map_height(fam.specialize(Rational(0))) == 1);
    FamilyLift c2 = crit2_family();
    CHECK(map_height(c2.specialize(Rational(5))) == 5);
}

TEST_CASE("builtin registry") {
    auto& reg = family_registry();
    CHECK(reg.contains("quadratic"));
    CHECK(reg.contains("crit2"));
    CHECK(reg.contains("unicritical3"));
    const FamilyLift& u3 = reg.get("unicritical3");
    CHECK(u3.degree() == 3);
    CHECK(u3.gamma().size() == 1);
    CHECK(u3.gamma()[0].is_infinity());
    CHECK_THROWS_AS(reg.get("nope"), std::domain_error);
}

TEST_CASE("template builders validate hypotheses") {
    CHECK_THROWS_AS(additive_template({Rational(1), Rational(2), Rational(0)}),
                    std::domain_error); // a_d = 0
    CHECK_THROWS_AS(inverse_template(1, {Rational(0), Rational(1)}), std::domain_error);
    FamilyLift t3 = three_cycle_template(5, 3);
    CHECK(t3.shape() == FamilyShape::ThreeCycle);
    CHECK(t3.filter_excluded_primes() == std::vector<uint64_t>{5});
}

TEST_CASE("specialization-resultant compatibility (Lemma 4.2 bookkeeping)") {
    // |R_f(t)| * lambda^(2d) = |Res(normalized forms)| * content^(2d), where
    // lambda clears denominators and content is the gcd divided out
    std::mt19937_64 rng(20240817);
    std::vector<const FamilyLift*> fams{&family_registry().get("quadratic"),
                                        &family_registry().get("crit2"),
                                        &family_registry().get("unicritical3")};
    int done = 0;
    while (done < 100) {
        const FamilyLift& fam = *fams[rng() % fams.size()];
        long a = static_cast<long>(rng() % 41) - 20;
        long b = 1 + static_cast<long>(rng() % 20);
        Rational t(a, b);
        if (fam.is_degenerate_at(t)) continue;
        ++done;
        const int d = fam.degree();
        // unnormalized: clear denominators with lambda = lcm of denominators
        Int lambda = 1;
        std::vector<Rational> fy, gy;
        for (const auto& c : fam.F()) {
            fy.push_back(poly_eval(c, t));
            mpz_lcm(lambda.get_mpz_t(), lambda.get_mpz_t(), fy.back().den().get_mpz_t());
        }
        for (const auto& c : fam.G()) {
            gy.push_back(poly_eval(c, t));
            mpz_lcm(lambda.get_mpz_t(), lambda.get_mpz_t(), gy.back().den().get_mpz_t());
        }
        std::vector<Int> Fu, Gu;
        Int content = 0;
        for (const auto& r : fy) {
            Fu.push_back(r.num() * (lambda / r.den()));
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), Fu.back().get_mpz_t());
        }
        for (const auto& r : gy) {
            Gu.push_back(r.num() * (lambda / r.den()));
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), Gu.back().get_mpz_t());
        }
        Rational rf = poly_eval(fam.resultant().poly, t);
        Int norm = resultant_ideal_norm(fam.specialize(t));
        // |R_f(t)| * lambda^(2d) == norm * content^(2d)
        Rational left = rf.abs();
        for (int i = 0; i < 2 * d; ++i) left *= Rational(lambda);
        Rational right(norm);
        for (int i = 0; i < 2 * d; ++i) right *= Rational(content);
        CHECK(left == right);
    }
}

TEST_CASE("json family round trip") {
    std::string path = "/tmp/preper_test_family.json";
    {
        std::ofstream out(path);
        out << R"({
  "name": "json_quadratic",
  "degree": 2,
  "F": [["0", "1"], [], ["1"]],
  "G": [["1"], [], []],
  "gamma": [{"point": "inf", "to": "inf"}]
})";
    }
    FamilyLift fam = load_family_json(path);
    CHECK(fam.name() == "json_quadratic");
    CHECK(fam.degree() == 2);
    CHECK(fam.shape() == FamilyShape::Polynomial);
    CHECK(resultant_ideal_norm(fam.specialize(Rational(1, 2))) == 16);
}
