#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "preper/ints.hpp"

namespace preper {

using Int = mpz_class;

/// Arbitrary-precision rational in canonical form: gcd(|num|, den) = 1 and
/// den >= 1, with 0 represented as 0/1. Canonicalization is enforced by
/// every constructor; arithmetic preserves it.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    explicit Rational(const Int& n) : q_(n) {}
    Rational(const Int& num, const Int& den);
    Rational(long num, long den);

    /// Parses "a", "-a", or "a/b". Throws std::invalid_argument on junk.
    static Rational parse(const std::string& s);

    const Int& num() const { return q_.get_num(); }
    const Int& den() const { return q_.get_den(); }
    const mpq_class& mpq() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    Rational abs() const { return Rational(mpq_class(::abs(q_))); }
    Rational inverse() const;
    double to_double() const { return q_.get_d(); }

    /// "a" for integers, "a/b" otherwise.
    std::string str() const;

    size_t hash() const;

private:
    explicit Rational(const mpq_class& q) : q_(q) {}
    mpq_class q_;
    friend class ExtRational;
};

/// A rational number or the distinguished point at infinity.
class ExtRational {
public:
    ExtRational() : inf_(false), v_() {}
    ExtRational(const Rational& v) : inf_(false), v_(v) {}
    ExtRational(long n) : inf_(false), v_(n) {}
    static ExtRational infinity() { ExtRational e; e.inf_ = true; return e; }

    bool is_infinity() const { return inf_; }
    const Rational& value() const {
        if (inf_) throw std::domain_error("ExtRational: infinity has no finite value");
        return v_;
    }

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
        return a.v_ == b.v_;
    }
    friend bool operator!=(const ExtRational& a, const ExtRational& b) { return !(a == b); }
    friend bool operator<(const ExtRational& a, const ExtRational& b) {
        if (a.inf_ != b.inf_) return b.inf_; // finite points sort before infinity
        if (a.inf_) return false;
        return a.v_ < b.v_;
    }

    /// "a/b", "a", or "inf"; parse accepts the same.
    std::string str() const { return inf_ ? "inf" : v_.str(); }
    static ExtRational parse(const std::string& s);

    size_t hash() const { return inf_ ? 0x9e3779b97f4a7c15ull : v_.hash(); }

private:
    bool inf_;
    Rational v_;
};

/// Multiplicative height over Q: H(a/b) = max(|a|, b) in lowest terms.
Int height(const Rational& t);
/// H(infinity) = 1.
Int height(const ExtRational& t);

/// v_p(t) for t != 0; nullopt encodes the infinite valuation of 0.
std::optional<long> padic_valuation(const Rational& t, uint64_t p);

/// v_p of a nonzero integer.
long padic_valuation(const Int& n, uint64_t p);

/// Nonnegative rho with rho^2 = t, when t is a square in Q.
std::optional<Rational> rational_square_root(const Rational& t);

/// Exact d-th root of a nonnegative integer if it is a perfect power.
std::optional<Int> perfect_kth_root(const Int& n, unsigned k);

/// Visits every t in Q with height(t) <= X exactly once, ordered by
/// ascending denominator then ascending numerator.
void for_each_rational(long X, const std::function<void(const Rational&)>& fn);

/// Same order, materialized.
std::vector<Rational> enumerate_rationals(long X);

/// Raw (numerator, denominator) pairs in enumeration order; cheaper than
/// building Rationals when the consumer range-partitions work itself.
void for_each_height_pair(long X, const std::function<void(long, long)>& fn);

/// Exact #{t in Q : H(t) <= X} = 1 + 2 * #{(a,b) : 1<=a,b<=X, gcd(a,b)=1}.
uint64_t count_rationals(long X);

/// Exact #P^1(Q) up to height X (count_rationals + 1 for infinity).
uint64_t count_p1(long X);

struct RationalHash {
    size_t operator()(const Rational& r) const { return r.hash(); }
};
struct ExtRationalHash {
    size_t operator()(const ExtRational& r) const { return r.hash(); }
};

} // namespace preper
