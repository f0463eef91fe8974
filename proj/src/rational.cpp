#include "preper/rational.hpp"

#include <algorithm>
#include <numeric>

namespace preper {

Rational::Rational(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(Int(num), Int(den)) {}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(den(), num());
}

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Rational::parse: bad rational '" + s + "'");
    }
}

std::string Rational::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

size_t Rational::hash() const {
    auto mix = [](size_t h, size_t v) {
        return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
    };
    auto mpz_hash = [&](const mpz_class& z) {
        size_t h = static_cast<size_t>(mpz_sgn(z.get_mpz_t()));
        size_t n = mpz_size(z.get_mpz_t());
        for (size_t i = 0; i < n; ++i)
            h = mix(h, static_cast<size_t>(mpz_getlimbn(z.get_mpz_t(), i)));
        return h;
    };
    return mix(mpz_hash(q_.get_num()), mpz_hash(q_.get_den()));
}

ExtRational ExtRational::parse(const std::string& s) {
    if (s == "inf" || s == "oo" || s == "infinity") return infinity();
    return ExtRational(Rational::parse(s));
}

Int height(const Rational& t) {
    Int a = abs(t.num());
    return a > t.den() ? a : t.den();
}

Int height(const ExtRational& t) {
    return t.is_infinity() ? Int(1) : height(t.value());
}

long padic_valuation(const Int& n, uint64_t p) {
    if (n == 0) throw std::domain_error("padic_valuation: zero integer");
    Int m = abs(n);
    Int pz(static_cast<unsigned long>(p));
    long v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), pz.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t());
        ++v;
    }
    return v;
}

std::optional<long> padic_valuation(const Rational& t, uint64_t p) {
    if (t.is_zero()) return std::nullopt;
    // num and den are coprime, so at most one of the two counts is nonzero
    long vn = padic_valuation(t.num(), p);
    if (vn > 0) return vn;
    return -padic_valuation(t.den(), p);
}

std::optional<Rational> rational_square_root(const Rational& t) {
    if (t.sign() < 0) return std::nullopt;
    if (t.is_zero()) return Rational(0);
    if (!mpz_perfect_square_p(t.num().get_mpz_t())) return std::nullopt;
    if (!mpz_perfect_square_p(t.den().get_mpz_t())) return std::nullopt;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), t.num().get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), t.den().get_mpz_t());
    return Rational(rn, rd);
}

std::optional<Int> perfect_kth_root(const Int& n, unsigned k) {
    if (k == 0) throw std::domain_error("perfect_kth_root: k must be >= 1");
    if (n < 0) return std::nullopt;
    Int r;
    int exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    if (!exact) return std::nullopt;
    return r;
}

void for_each_height_pair(long X, const std::function<void(long, long)>& fn) {
    if (X < 1) throw std::domain_error("for_each_height_pair: X must be >= 1");
    for (long b = 1; b <= X; ++b) {
        for (long a = -X; a <= X; ++a) {
            if (b == 1) {
                fn(a, b);
            } else if (a != 0 && std::gcd(std::abs(a), b) == 1) {
                fn(a, b);
            }
        }
    }
}

void for_each_rational(long X, const std::function<void(const Rational&)>& fn) {
    for_each_height_pair(X, [&](long a, long b) { fn(Rational(a, b)); });
}

std::vector<Rational> enumerate_rationals(long X) {
    std::vector<Rational> out;
    for_each_rational(X, [&](const Rational& t) { out.push_back(t); });
    return out;
}

uint64_t count_rationals(long X) {
    if (X < 1) throw std::domain_error("count_rationals: X must be >= 1");
    // #{(a,b) in [1,X]^2 : gcd(a,b)=1} = sum_{k<=X} mu(k) * floor(X/k)^2
    std::vector<int8_t> mu(X + 1, 1);
    std::vector<bool> composite(X + 1, false);
    std::vector<long> primes;
    for (long i = 2; i <= X; ++i) {
        if (!composite[i]) { primes.push_back(i); mu[i] = -1; }
        for (long p : primes) {
            if (p * i > X) break;
            composite[p * i] = true;
            if (i % p == 0) { mu[p * i] = 0; break; }
            mu[p * i] = -mu[i];
        }
    }
    int64_t coprime_pairs = 0;
    for (long k = 1; k <= X; ++k) {
        if (mu[k] == 0) continue;
        int64_t q = X / k;
        coprime_pairs += static_cast<int64_t>(mu[k]) * q * q;
    }
    return 1 + 2 * static_cast<uint64_t>(coprime_pairs);
}

uint64_t count_p1(long X) { return count_rationals(X) + 1; }

} // namespace preper
