#include "preper/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace preper {

Interval::Interval() {
    mpfr_init2(lo_, kPrec);
    mpfr_init2(hi_, kPrec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) {
    mpfr_init2(lo_, kPrec);
    mpfr_init2(hi_, kPrec);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
    mpfr_init2(lo_, kPrec);
    mpfr_init2(hi_, kPrec);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(Interval o) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval::Interval(long v) : Interval() {
    mpfr_set_si(lo_, v, MPFR_RNDD);
    mpfr_set_si(hi_, v, MPFR_RNDU);
}

Interval::Interval(const Int& v) : Interval() {
    mpfr_set_z(lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi_, v.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const Rational& v) : Interval() {
    mpfr_set_q(lo_, v.mpq().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, v.mpq().get_mpq_t(), MPFR_RNDU);
}

Interval Interval::pi() {
    Interval r;
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::zeta(const Rational& x) {
    if (x <= Rational(1)) throw std::domain_error("Interval::zeta: need x > 1");
    Interval arg(x);
    Interval r;
    // zeta is decreasing on (1, inf)
    mpfr_zeta(r.lo_, arg.hi_, MPFR_RNDD);
    mpfr_zeta(r.hi_, arg.lo_, MPFR_RNDU);
    return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
    Interval r;
    mpfr_set(r.lo_, mpfr_cmp(a.lo_, b.lo_) <= 0 ? a.lo_ : b.lo_, MPFR_RNDD);
    mpfr_set(r.hi_, mpfr_cmp(a.hi_, b.hi_) >= 0 ? a.hi_ : b.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::operator+(const Interval& o) const {
    Interval r;
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-(const Interval& o) const {
    Interval r;
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-() const {
    Interval r;
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator*(const Interval& o) const {
    Interval r;
    mpfr_t t;
    mpfr_init2(t, kPrec);
    bool first = true;
    auto consider = [&](const mpfr_t a, const mpfr_t b) {
        mpfr_mul(t, a, b, MPFR_RNDD);
        if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, a, b, MPFR_RNDU);
        if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
        first = false;
    };
    consider(lo_, o.lo_);
    consider(lo_, o.hi_);
    consider(hi_, o.lo_);
    consider(hi_, o.hi_);
    mpfr_clear(t);
    return r;
}

Interval Interval::operator/(const Interval& o) const {
    if (o.contains_zero()) throw std::domain_error("Interval: division by interval containing 0");
    Interval r;
    mpfr_t t;
    mpfr_init2(t, kPrec);
    bool first = true;
    auto consider = [&](const mpfr_t a, const mpfr_t b) {
        mpfr_div(t, a, b, MPFR_RNDD);
        if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
        mpfr_div(t, a, b, MPFR_RNDU);
        if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
        first = false;
    };
    consider(lo_, o.lo_);
    consider(lo_, o.hi_);
    consider(hi_, o.lo_);
    consider(hi_, o.hi_);
    mpfr_clear(t);
    return r;
}

Interval Interval::sqrt() const {
    if (mpfr_sgn(lo_) < 0) throw std::domain_error("Interval::sqrt of negative interval");
    Interval r;
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::log() const {
    if (mpfr_sgn(lo_) <= 0) throw std::domain_error("Interval::log needs lo > 0");
    Interval r;
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::asinh() const {
    Interval r;
    mpfr_asinh(r.lo_, lo_, MPFR_RNDD);
    mpfr_asinh(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::asin() const {
    if (mpfr_cmp_si(lo_, -1) < 0 || mpfr_cmp_si(hi_, 1) > 0)
        throw std::domain_error("Interval::asin outside [-1, 1]");
    Interval r;
    mpfr_asin(r.lo_, lo_, MPFR_RNDD);
    mpfr_asin(r.hi_, hi_, MPFR_RNDU);
    return r;
}

bool Interval::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Interval::contains(const Interval& o) const {
    return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(o.hi_, hi_) <= 0;
}

bool Interval::overlaps(const Interval& o) const {
    return mpfr_cmp(lo_, o.hi_) <= 0 && mpfr_cmp(o.lo_, hi_) <= 0;
}

double Interval::width() const {
    mpfr_t t;
    mpfr_init2(t, kPrec);
    mpfr_sub(t, hi_, lo_, MPFR_RNDU);
    double w = mpfr_get_d(t, MPFR_RNDU);
    mpfr_clear(t);
    return w;
}

double Interval::mid() const {
    mpfr_t t;
    mpfr_init2(t, kPrec);
    mpfr_add(t, lo_, hi_, MPFR_RNDN);
    mpfr_div_ui(t, t, 2, MPFR_RNDN);
    double m = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return m;
}

bool Interval::within(const Interval& o, double eps) const {
    // max possible |x - y| over x in this, y in o
    mpfr_t d1, d2;
    mpfr_init2(d1, kPrec);
    mpfr_init2(d2, kPrec);
    mpfr_sub(d1, hi_, o.lo_, MPFR_RNDU);
    mpfr_sub(d2, o.hi_, lo_, MPFR_RNDU);
    double worst = std::max(mpfr_get_d(d1, MPFR_RNDU), mpfr_get_d(d2, MPFR_RNDU));
    mpfr_clear(d1);
    mpfr_clear(d2);
    return worst <= eps;
}

std::string Interval::decimal(int digits) const {
    auto render = [&](const mpfr_t v) {
        char* s = nullptr;
        // digits + guard digits, fixed-point style via %.*Rg
        int n = mpfr_asprintf(&s, "%.*Rg", digits + 4, v);
        if (n < 0) throw std::runtime_error("Interval::decimal: mpfr_asprintf failed");
        std::string out(s);
        mpfr_free_str(s);
        return out;
    };
    std::string a = render(lo_), b = render(hi_);
    // agreed prefix, counting significant digits
    std::string prefix;
    int sig = 0;
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i] != b[i]) break;
        prefix += a[i];
        if (std::isdigit(static_cast<unsigned char>(a[i])) &&
            !(sig == 0 && a[i] == '0'))
            ++sig;
        if (sig >= digits) break;
    }
    if (sig < digits)
        throw std::runtime_error("Interval::decimal: interval too wide for " +
                                 std::to_string(digits) + " digits");
    return prefix;
}

} // namespace preper
