#include "preper/family.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>

#include <json.hpp>

namespace preper {

bool SpecializedMap::is_polynomial() const {
    for (size_t i = 1; i < G.size(); ++i)
        if (G[i] != 0) return false;
    return G[0] != 0;
}

int codegree_of(const std::vector<PolyZ>& F, const std::vector<PolyZ>& G) {
    long dp = 0;
    for (const auto& c : F) dp = std::max(dp, poly_degree(c));
    for (const auto& c : G) dp = std::max(dp, poly_degree(c));
    return static_cast<int>(dp);
}

FamilyLift::FamilyLift(std::string name, int degree, std::vector<PolyZ> F,
                       std::vector<PolyZ> G, std::vector<ExtRational> gamma)
    : name_(std::move(name)), degree_(degree), F_(std::move(F)), G_(std::move(G)),
      gamma_(std::move(gamma)) {
    if (degree_ < 2) throw std::domain_error("FamilyLift: degree must be >= 2");
    if (F_.size() != static_cast<size_t>(degree_ + 1) || G_.size() != F_.size())
        throw std::domain_error("FamilyLift: coefficient vectors must have length d+1");
    for (auto& c : F_) c = poly_trim(std::move(c));
    for (auto& c : G_) c = poly_trim(std::move(c));

    // joint content normalization ("integral lift")
    Int content = 0;
    for (const auto& c : F_)
        for (const auto& x : c) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
    for (const auto& c : G_)
        for (const auto& x : c) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
    if (content == 0) throw std::domain_error("FamilyLift: zero family");
    if (content > 1) {
        for (auto& c : F_)
            for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
        for (auto& c : G_)
            for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
    }

    codegree_ = codegree_of(F_, G_);
    resultant_.poly = sylvester_resultant(F_, G_);
    resultant_.degree = poly_degree(resultant_.poly);
    if (resultant_.degree < 0)
        throw std::domain_error("FamilyLift '" + name_ +
                                "': resultant vanishes identically (degenerate family)");
    if (resultant_.degree > 2l * degree_ * codegree_)
        throw std::logic_error("FamilyLift: resultant degree exceeds 2dd'");
    resultant_.roots = rational_roots(resultant_.poly);

    detect_shape();
    compute_filter_places();
    verify_gamma();
}

bool FamilyLift::is_degenerate_at(const Rational& t) const {
    return poly_eval(resultant_.poly, t).is_zero();
}

SpecializedMap FamilyLift::specialize(const Rational& t) const {
    if (is_degenerate_at(t)) throw degenerate_parameter_error(t.str());
    std::vector<Rational> fy, gy;
    Int lcm = 1;
    for (const auto& c : F_) {
        fy.push_back(poly_eval(c, t));
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), fy.back().den().get_mpz_t());
    }
    for (const auto& c : G_) {
        gy.push_back(poly_eval(c, t));
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), gy.back().den().get_mpz_t());
    }
    SpecializedMap m;
    m.degree = degree_;
    m.t = t;
    Int content = 0;
    auto clear = [&](const Rational& r) {
        Int v = r.num() * (lcm / r.den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        return v;
    };
    for (const auto& r : fy) m.F.push_back(clear(r));
    for (const auto& r : gy) m.G.push_back(clear(r));
    for (auto& x : m.F) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
    for (auto& x : m.G) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
    return m;
}

void FamilyLift::detect_shape() {
    const int d = degree_;
    auto zero = [](const PolyZ& p) { return poly_is_zero(p); };
    auto constant = [](const PolyZ& p) { return poly_degree(p) <= 0; };

    bool g_only_y = !zero(G_[0]);
    for (int i = 1; i <= d && g_only_y; ++i)
        if (!zero(G_[i])) g_only_y = false;
    if (g_only_y) {
        shape_ = FamilyShape::Polynomial;
        return;
    }

    bool f_only_y = !zero(F_[0]);
    for (int i = 1; i <= d && f_only_y; ++i)
        if (!zero(F_[i])) f_only_y = false;
    if (f_only_y && zero(G_[0]) && !zero(G_[d])) {
        bool g_const = true;
        int e = 0;
        for (int i = 1; i <= d; ++i) {
            if (!constant(G_[i])) g_const = false;
            if (e == 0 && !zero(G_[i])) e = i;
        }
        if (g_const) {
            shape_ = FamilyShape::InversePoly;
            shape_e_ = e;
            return;
        }
    }

    bool f_only_x = !zero(F_[d]);
    for (int i = 0; i < d && f_only_x; ++i)
        if (!zero(F_[i])) f_only_x = false;
    if (f_only_x && zero(G_[d]) && !zero(G_[0])) {
        bool g_const = true;
        int e = 0;
        for (int i = 0; i < d; ++i) {
            if (!constant(G_[i])) g_const = false;
            if (!zero(G_[i])) e = i;
        }
        if (g_const && e < d) {
            shape_ = FamilyShape::InversePolyDual;
            shape_e_ = e;
            return;
        }
    }

    // (T z^e + 1) / (1 - z)^d
    {
        int e = -1;
        bool ok = F_[0] == PolyZ{Int(1)};
        for (int i = 1; i <= d && ok; ++i) {
            if (zero(F_[i])) continue;
            if (e >= 0 || poly_degree(F_[i]) != 1 || F_[i][0] != 0) { ok = false; break; }
            e = i;
        }
        if (ok && e >= 2 && d >= e + 2) {
            Int binom = 1;
            for (int i = 0; i <= d && ok; ++i) {
                if (i > 0) binom = binom * (d - i + 1) / i;
                Int expect = (i % 2 == 0) ? binom : -binom;
                if (i == 0) expect = 1;
                if (G_[i] != (expect == 0 ? PolyZ{} : PolyZ{expect})) ok = false;
            }
            if (ok) {
                shape_ = FamilyShape::ThreeCycle;
                shape_e_ = e;
                return;
            }
        }
    }

    shape_ = FamilyShape::General;
}

void FamilyLift::compute_filter_places() {
    // Places where the template hypotheses fail; empty when the family is
    // not one of the recognized templates.
    std::set<uint64_t> S;
    auto prime_support = [&](const Int& n) {
        std::set<uint64_t> out;
        if (n == 0) return out;
        Int m = abs(n);
        for (uint32_t p : default_sieve().primes()) {
            if (Int(p) * p > m) break;
            if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                out.insert(p);
                while (mpz_divisible_ui_p(m.get_mpz_t(), p))
                    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            }
        }
        if (m > 1) {
            if (m > Int(default_sieve().limit()) * Int(default_sieve().limit()))
                throw arithmetic_limit_error("filter places: unfactorable coefficient");
            out.insert(m.get_ui());
        }
        return out;
    };

    switch (shape_) {
    case FamilyShape::Polynomial: {
        // template a_d z^d + ... + a_0 + T: nonconstant slots constant in T,
        // parameter linear in the constant slot
        for (int i = 1; i <= degree_; ++i)
            if (poly_degree(F_[i]) > 0) return;
        if (poly_degree(F_[0]) != 1) return;
        for (uint64_t p : prime_support(G_[0][0])) S.insert(p);
        for (uint64_t p : prime_support(F_[0][1])) S.insert(p);
        if (!poly_is_zero(F_[degree_]))
            for (uint64_t p : prime_support(F_[degree_][0])) S.insert(p);
        break;
    }
    case FamilyShape::InversePoly: {
        if (poly_degree(F_[0]) != 1) return;
        for (uint64_t p : prime_support(F_[0][1])) S.insert(p);
        for (uint64_t p : prime_support(G_[shape_e_][0])) S.insert(p);
        for (uint64_t p : prime_support(G_[degree_][0])) S.insert(p);
        break;
    }
    case FamilyShape::InversePolyDual: {
        if (poly_degree(F_[degree_]) != 1) return;
        for (uint64_t p : prime_support(F_[degree_][1])) S.insert(p);
        for (uint64_t p : prime_support(G_[0][0])) S.insert(p);
        for (uint64_t p : prime_support(G_[shape_e_][0])) S.insert(p);
        break;
    }
    case FamilyShape::ThreeCycle:
        for (uint64_t p : prime_support(Int(degree_))) S.insert(p);
        break;
    case FamilyShape::General:
        return;
    }
    lemma_ok_ = true;
    filter_S_.assign(S.begin(), S.end());
}

void FamilyLift::verify_gamma() {
    gamma_edges_.clear();
    for (const auto& pt : gamma_) {
        Int a, b;
        if (pt.is_infinity()) { a = 1; b = 0; }
        else { a = pt.value().num(); b = pt.value().den(); }
        // formal image (F(a,b)(T) : G(a,b)(T))
        PolyZ fp, gp;
        std::vector<Int> apow(degree_ + 1), bpow(degree_ + 1);
        apow[0] = 1; bpow[0] = 1;
        for (int i = 1; i <= degree_; ++i) { apow[i] = apow[i - 1] * a; bpow[i] = bpow[i - 1] * b; }
        for (int i = 0; i <= degree_; ++i) {
            Int w = apow[i] * bpow[degree_ - i];
            if (w == 0) continue;
            fp = poly_add(fp, poly_mul(F_[i], PolyZ{w}));
            gp = poly_add(gp, poly_mul(G_[i], PolyZ{w}));
        }
        ExtRational image;
        if (poly_is_zero(gp) && poly_is_zero(fp))
            throw std::domain_error("FamilyLift: gamma point lands on indeterminacy");
        if (poly_is_zero(gp)) {
            image = ExtRational::infinity();
        } else if (poly_is_zero(fp)) {
            image = ExtRational(Rational(0));
        } else {
            // constant point iff fp and gp are proportional over Q
            size_t k = 0;
            while (k < gp.size() && gp[k] == 0) ++k;
            Int fk = fp.size() > k ? fp[k] : Int(0);
            if (poly_mul(fp, PolyZ{gp[k]}) != poly_mul(gp, PolyZ{fk}))
                throw std::domain_error("FamilyLift '" + name_ + "': gamma point " + pt.str() +
                                        " has nonconstant image (unsupported)");
            image = ExtRational(Rational(fk, gp[k]));
        }
        auto it = std::find(gamma_.begin(), gamma_.end(), image);
        if (it == gamma_.end())
            throw std::domain_error("FamilyLift '" + name_ + "': gamma is not forward closed at " +
                                    pt.str());
        gamma_edges_.push_back(static_cast<int>(it - gamma_.begin()));
    }
    // declared points must stay distinct under specialization; constants do
    std::set<std::string> seen;
    for (const auto& pt : gamma_)
        if (!seen.insert(pt.str()).second)
            throw std::domain_error("FamilyLift: duplicate gamma point");
}

std::vector<ExtRational> rational_preimages(const SpecializedMap& m, const ExtRational& q) {
    Int q0, q1;
    if (q.is_infinity()) { q0 = 1; q1 = 0; }
    else { q0 = q.value().num(); q1 = q.value().den(); }
    std::vector<Int> form(m.degree + 1);
    for (int i = 0; i <= m.degree; ++i) form[i] = q1 * m.F[i] - q0 * m.G[i];
    return binary_form_roots(form);
}

Int resultant_ideal_norm(const SpecializedMap& m) {
    Int r = sylvester_resultant_int(m.F, m.G);
    return abs(r);
}

std::vector<uint64_t> bad_primes(const SpecializedMap& m) {
    Int n = resultant_ideal_norm(m);
    std::vector<uint64_t> out;
    if (n <= 1) return out;
    if (n.fits_ulong_p()) {
        for (auto [p, e] : default_sieve().factorize(n.get_ui())) out.push_back(p);
        return out;
    }
    for (uint32_t p : default_sieve().primes()) {
        if (Int(p) * p > n) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.push_back(p);
            while (mpz_divisible_ui_p(n.get_mpz_t(), p))
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
        if (n.fits_ulong_p()) {
            for (auto [q, e] : default_sieve().factorize(n.get_ui()))
                out.push_back(q);
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    if (n > 1) {
        Int lim(default_sieve().limit());
        if (n > lim * lim)
            throw arithmetic_limit_error("bad_primes: unfactorable resultant norm");
        out.push_back(n.get_ui());
    }
    return out;
}

int bad_place_count(const SpecializedMap& m) {
    return 1 + static_cast<int>(bad_primes(m).size());
}

bool good_reduction(const SpecializedMap& m, uint64_t p) {
    Int n = resultant_ideal_norm(m);
    return !mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p));
}

Int map_height(const SpecializedMap& m) {
    Int h = 0;
    for (const auto& c : m.F) h = std::max(h, Int(abs(c)));
    for (const auto& c : m.G) h = std::max(h, Int(abs(c)));
    return h;
}

namespace {

std::vector<PolyZ> const_coeffs(const std::vector<Rational>& a, const Int& lcm) {
    std::vector<PolyZ> out;
    for (const auto& r : a) {
        Int v = r.num() * (lcm / r.den());
        out.push_back(v == 0 ? PolyZ{} : PolyZ{v});
    }
    return out;
}

} // namespace

FamilyLift quadratic_family() {
    // f_t(z) = z^2 + t, lift (X^2 + T Y^2 : Y^2)
    std::vector<PolyZ> F{PolyZ{Int(0), Int(1)}, PolyZ{}, PolyZ{Int(1)}};
    std::vector<PolyZ> G{PolyZ{Int(1)}, PolyZ{}, PolyZ{}};
    return FamilyLift("quadratic", 2, std::move(F), std::move(G),
                      {ExtRational::infinity()});
}

FamilyLift unicritical_family(int d) {
    if (d < 2) throw std::domain_error("unicritical_family: d >= 2");
    std::vector<PolyZ> F(d + 1), G(d + 1);
    F[0] = PolyZ{Int(0), Int(1)};
    F[d] = PolyZ{Int(1)};
    G[0] = PolyZ{Int(1)};
    return FamilyLift("unicritical" + std::to_string(d), d, std::move(F), std::move(G),
                      {ExtRational::infinity()});
}

FamilyLift crit2_family() {
    // f_t(z) = t / (z^2 - z), lift (T Y^2 : X^2 - X Y)
    std::vector<PolyZ> F{PolyZ{Int(0), Int(1)}, PolyZ{}, PolyZ{}};
    std::vector<PolyZ> G{PolyZ{}, PolyZ{Int(-1)}, PolyZ{Int(1)}};
    return FamilyLift("crit2", 2, std::move(F), std::move(G),
                      {ExtRational(Rational(0)), ExtRational(Rational(1)),
                       ExtRational::infinity()});
}

FamilyLift additive_template(const std::vector<Rational>& a, const std::string& name) {
    if (a.size() < 3) throw std::domain_error("additive_template: need degree >= 2");
    int d = static_cast<int>(a.size()) - 1;
    if (a.back().is_zero()) throw std::domain_error("additive_template: a_d must be nonzero");
    Int lcm = 1;
    for (const auto& r : a) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.den().get_mpz_t());
    std::vector<PolyZ> F = const_coeffs(a, lcm);
    // constant slot carries a_0 + T
    PolyZ c0 = F[0];
    c0.resize(2, Int(0));
    c0[1] = lcm;
    F[0] = poly_trim(std::move(c0));
    std::vector<PolyZ> G(d + 1);
    G[0] = PolyZ{lcm};
    return FamilyLift(name.empty() ? "additive_d" + std::to_string(d) : name, d, std::move(F),
                      std::move(G), {ExtRational::infinity()});
}

FamilyLift inverse_template(int e, const std::vector<Rational>& a, const std::string& name) {
    // f(z) = T / (a_e z^e + ... + a_d z^d)
    int d = e + static_cast<int>(a.size()) - 1;
    if (e < 1 || d < 2 || e > d) throw std::domain_error("inverse_template: need 1 <= e <= d, d >= 2");
    if (a.front().is_zero() || a.back().is_zero())
        throw std::domain_error("inverse_template: a_e and a_d must be nonzero");
    Int lcm = 1;
    for (const auto& r : a) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.den().get_mpz_t());
    std::vector<PolyZ> F(d + 1), G(d + 1);
    F[0] = PolyZ{Int(0), lcm};
    for (int i = e; i <= d; ++i) {
        Rational r = a[i - e];
        Int v = r.num() * (lcm / r.den());
        G[i] = (v == 0 ? PolyZ{} : PolyZ{v});
    }
    std::vector<ExtRational> gamma{ExtRational(Rational(0)), ExtRational::infinity()};
    // rational roots of the denominator are generic preimages of infinity
    std::vector<Int> gc;
    for (int i = 0; i <= d; ++i) gc.push_back(poly_is_zero(G[i]) ? Int(0) : G[i][0]);
    for (const auto& r : binary_form_roots(gc))
        if (std::find(gamma.begin(), gamma.end(), r) == gamma.end()) gamma.push_back(r);
    return FamilyLift(name.empty() ? "inverse_e" + std::to_string(e) + "_d" + std::to_string(d)
                                   : name,
                      d, std::move(F), std::move(G), std::move(gamma));
}

FamilyLift three_cycle_template(int d, int e, const std::string& name) {
    if (!(d >= e + 2 && e >= 2)) throw std::domain_error("three_cycle_template: need d >= e+2 >= 4");
    std::vector<PolyZ> F(d + 1), G(d + 1);
    F[0] = PolyZ{Int(1)};
    F[e] = PolyZ{Int(0), Int(1)};
    Int binom = 1;
    for (int i = 0; i <= d; ++i) {
        if (i > 0) binom = binom * (d - i + 1) / i;
        Int v = (i % 2 == 0) ? binom : -binom;
        if (i == 0) v = 1;
        G[i] = PolyZ{v};
    }
    return FamilyLift(name.empty() ? "threecycle_d" + std::to_string(d) + "_e" + std::to_string(e)
                                   : name,
                      d, std::move(F), std::move(G),
                      {ExtRational(Rational(0)), ExtRational(Rational(1)),
                       ExtRational::infinity()});
}

FamilyRegistry::FamilyRegistry() {
    add(quadratic_family());
    add(crit2_family());
    add(unicritical_family(3));
}

void FamilyRegistry::add(FamilyLift f) {
    std::string key = f.name();
    families_.emplace(key, std::move(f));
}

bool FamilyRegistry::contains(const std::string& name) const {
    return families_.count(name) > 0;
}

const FamilyLift& FamilyRegistry::get(const std::string& name) const {
    auto it = families_.find(name);
    if (it == families_.end())
        throw std::domain_error("unknown family '" + name + "'");
    return it->second;
}

std::vector<std::string> FamilyRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : families_) out.push_back(k);
    return out;
}

FamilyRegistry& family_registry() {
    static FamilyRegistry reg;
    return reg;
}

FamilyLift load_family_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open family file: " + path);
    nlohmann::json j;
    in >> j;
    std::string name = j.at("name").get<std::string>();
    int d = j.at("degree").get<int>();
    auto read_coeffs = [&](const nlohmann::json& arr) {
        std::vector<PolyZ> out;
        for (const auto& poly : arr) {
            PolyZ p;
            for (const auto& c : poly) p.push_back(Int(c.get<std::string>()));
            out.push_back(poly_trim(std::move(p)));
        }
        return out;
    };
    std::vector<PolyZ> F = read_coeffs(j.at("F"));
    std::vector<PolyZ> G = read_coeffs(j.at("G"));
    std::vector<ExtRational> gamma;
    if (j.contains("gamma"))
        for (const auto& g : j.at("gamma"))
            gamma.push_back(ExtRational::parse(g.at("point").get<std::string>()));
    FamilyLift lift(name, d, std::move(F), std::move(G), std::move(gamma));
    // declared edges, when present, must match the computed ones
    if (j.contains("gamma")) {
        size_t idx = 0;
        for (const auto& g : j.at("gamma")) {
            if (g.contains("to")) {
                ExtRational to = ExtRational::parse(g.at("to").get<std::string>());
                if (lift.gamma()[lift.gamma_edges()[idx]] != to)
                    throw std::domain_error("family '" + name + "': declared gamma edge at " +
                                            lift.gamma()[idx].str() + " disagrees with evaluation");
            }
            ++idx;
        }
    }
    return lift;
}

} // namespace preper
