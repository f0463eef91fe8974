#pragma once

#include <string>

#include <mpfr.h>

#include "preper/rational.hpp"

namespace preper {

/// Closed interval [lo, hi] with MPFR endpoints under directed rounding.
/// Every operation is outward-rounded, so the true real value is always
/// contained. Default working precision is 256 bits.
class Interval {
public:
    static constexpr mpfr_prec_t kPrec = 256;

    Interval();
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(Interval o);
    ~Interval();

    explicit Interval(long v);
    explicit Interval(const Int& v);
    explicit Interval(const Rational& v);

    static Interval pi();
    /// zeta(x) for an exact argument x > 1 (monotone decreasing there).
    static Interval zeta(const Rational& x);
    /// Smallest interval containing both arguments.
    static Interval hull(const Interval& a, const Interval& b);

    Interval operator+(const Interval& o) const;
    Interval operator-(const Interval& o) const;
    Interval operator*(const Interval& o) const;
    Interval operator/(const Interval& o) const;
    Interval operator-() const;

    Interval sqrt() const;
    Interval log() const;   // requires lo > 0
    Interval asinh() const;
    Interval asin() const;  // requires [lo, hi] within [-1, 1]

    bool contains_zero() const;
    bool contains(const Interval& o) const;   // o subset of this
    bool overlaps(const Interval& o) const;
    double width() const;
    double mid() const;

    /// |this - o| <= eps certified (interval distance bound).
    bool within(const Interval& o, double eps) const;

    /// Decimal string of `digits` significant digits on which both
    /// endpoints agree; throws if the interval is too wide for that.
    std::string decimal(int digits) const;

private:
    mpfr_t lo_, hi_;
    friend Interval make_interval_raw();
};

} // namespace preper
