#include "preper/asymptotics.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <unordered_set>

namespace preper {

namespace {

// d = gcd(c b^2 - 4 a^2, 4 b^2) depends only on b mod 4 (for c = 1 mod 4,
// c < 4, gcd(a, b) = 1)
long d_of_class(long b) {
    if (b % 2 == 1) return 1;
    if (b % 4 == 2) return 16;
    return 4;
}

} // namespace

RegionCount count_image_phi(int c, long X) {
    if (c != 1 && c != -3) throw std::domain_error("count_image_phi: c must be 1 or -3");
    if (X < 1) throw std::domain_error("count_image_phi: X >= 1");
    RegionCount rc;
    rc.c = c;
    rc.X = X;
    for (long b = 1;; ++b) {
        long d = d_of_class(b);
        // b <= sqrt(dX)/2  <=>  4 b^2 <= dX; the odd class has the smallest
        // d, so b beyond sqrt(16X)/2 ends every class
        if (4 * b * b > 16 * X) break;
        if (4 * b * b > d * X) continue;
        long M = d * X + c * b * b; // a <= sqrt(M)/2, i.e. 4a^2 <= M
        if (M < 4) continue;
        long amax = static_cast<long>(isqrt64(static_cast<uint64_t>(M / 4)));
        if (amax < 1) continue;
        long cnt = coprime_count(static_cast<uint64_t>(b), amax);
        if (b % 2 == 1) rc.n21 += cnt;
        else if (b % 4 == 2) rc.n42 += cnt;
        else rc.n40 += cnt;
    }
    rc.total = rc.n21 + rc.n42 + rc.n40;
    return rc;
}

long count_image_psi(long X) {
    if (X < 1) throw std::domain_error("count_image_psi: X >= 1");
    // if H(psi(r)) <= X then H(r) <= 2 sqrt(X) (forced preimage bound)
    long bound = 1 + static_cast<long>(isqrt64(static_cast<uint64_t>(4 * X)));
    std::unordered_set<Rational, RationalHash> values;
    Int Xz(X);
    for_each_rational(bound, [&](const Rational& r) {
        Rational v = r * r - r;
        if (height(v) <= Xz) values.insert(v);
    });
    return static_cast<long>(values.size());
}

int64_t coprime_count_Fb(uint64_t b, int64_t Y) { return coprime_count(b, Y); }

Rational totient_sum_Hqr(int q, int r, long Y) {
    Rational sum(0);
    for (long b = 1; b <= Y; ++b) {
        if (b % q != r) continue;
        auto ms = multiplicative_suite(static_cast<uint64_t>(b));
        sum += Rational(Int(static_cast<unsigned long>(ms.phi)), Int(b));
    }
    return sum;
}

Interval weighted_sum_Gqr(int q, int r, long Y, int c) {
    Interval sum(0L);
    Interval y2(Rational(4 * Y * Y));
    for (long b = 1; b <= Y; ++b) {
        if (b % q != r) continue;
        auto ms = multiplicative_suite(static_cast<uint64_t>(b));
        Interval radicand = y2 + Interval(Rational(c * b * b));
        Interval term = radicand.sqrt() *
                        Interval(Rational(Int(static_cast<unsigned long>(ms.phi)), Int(b)));
        sum = sum + term;
    }
    return sum;
}

ConstantReport constant_Cqr(int q, int r) {
    if (q != 2 && q != 4) throw std::domain_error("constant_Cqr: q must be 2 or 4");
    auto suite = multiplicative_suite(static_cast<uint64_t>(q));
    Interval pi = Interval::pi();
    Interval v = Interval(6L) / (pi * pi);
    v = v / Interval(static_cast<long>(suite.phi));
    // product over primes dividing q; for q in {2, 4} that is p = 2
    long p = 2;
    long bracket = (r % p == 0) ? 1 : 0;
    v = v * Interval(p - bracket) / Interval(p + 1);
    ConstantReport rep;
    rep.name = "C_{" + std::to_string(q) + "," + std::to_string(r) + "}";
    rep.value = v;
    rep.formula = "(6/pi^2) (1/phi(q)) prod_{p|q} (p - [p|r])/(p + 1)";
    return rep;
}

Interval Cqr_series(int q, int r, long K) {
    // a_k = mu(k) gcd(k, q) [gcd(k, q) | r]
    Rational partial(0);
    for (long k = 1; k <= K; ++k) {
        auto ms = multiplicative_suite(static_cast<uint64_t>(k));
        if (ms.mu == 0) continue;
        long g = std::gcd(k, static_cast<long>(q));
        if (r % g != 0) continue;
        Rational term(Int(ms.mu * g), Int(k) * Int(k));
        partial += term;
    }
    partial /= Rational(q);
    // |tail| <= (1/q) sum_{k>K} q/k^2 <= 1/K
    Interval tail = Interval(1L) / Interval(K);
    Interval center(partial);
    return Interval::hull(center - tail, center + tail);
}

ConstantReport constant_gamma(int c) {
    ConstantReport rep;
    rep.name = "gamma(" + std::to_string(c) + ")";
    if (c == 1) {
        Interval s5 = Interval(5L).sqrt();
        Interval phi_gold = (Interval(1L) + s5) / Interval(2L);
        rep.value = s5 / Interval(2L) + Interval(2L) * phi_gold.log();
        rep.formula = "sqrt(5)/2 + 2 log((1+sqrt 5)/2)";
    } else if (c == -3) {
        Interval pi = Interval::pi();
        rep.value = Interval(Rational(1, 2)) +
                    Interval(2L) * pi / (Interval(3L) * Interval(3L).sqrt());
        rep.formula = "1/2 + 2 pi/(3 sqrt 3)";
    } else {
        rep.value = gamma_generic(c);
        rep.formula = "sqrt(4+c)/2 + (2/sqrt|c|) A(sqrt|c|/2)";
    }
    return rep;
}

Interval gamma_generic(int c) {
    if (c == 0 || c <= -4) throw std::domain_error("gamma_generic: need c > -4, c != 0");
    Interval ac(std::labs(c));
    Interval sac = ac.sqrt();
    Interval arg = sac / Interval(2L);
    Interval A = c > 0 ? arg.asinh() : arg.asin();
    return Interval(4L + c).sqrt() / Interval(2L) + Interval(2L) / sac * A;
}

std::pair<ConstantReport, ConstantReport> constant_C1C2() {
    Interval pi = Interval::pi();
    Interval s3 = Interval(3L).sqrt();
    Interval s5 = Interval(5L).sqrt();
    Interval phi_gold = (Interval(1L) + s5) / Interval(2L);
    Interval inner = Interval(2L) * pi / (Interval(3L) * s3) + phi_gold +
                     Interval(2L) * phi_gold.log();
    Interval c2 = Interval(12L) / (pi * pi) * inner;
    // independent route: (12/pi^2)(gamma(1) + gamma(-3))
    Interval check = Interval(12L) / (pi * pi) *
                     (constant_gamma(1).value + constant_gamma(-3).value);
    if (!c2.overlaps(check))
        throw std::logic_error("C2 evaluations disagree");
    ConstantReport rep2{"C2", c2, "(12/pi^2)(2pi/(3 sqrt 3) + (1+sqrt 5)/2 + 2 log((1+sqrt 5)/2))"};
    ConstantReport rep1{"C1", c2 / Interval(4L), "C2 / 4"};
    return {rep1, rep2};
}

SquarefullCensus squarefull_census(uint64_t X) {
    SquarefullCensus out;
    out.X = X;
    for (uint64_t m = 1; m * m * m <= X; ++m) {
        auto ms = multiplicative_suite(m);
        if (ms.mu == 0) continue; // m must be squarefree
        out.count += isqrt64(X / (m * m * m));
    }
    Interval z32 = Interval::zeta(Rational(3, 2));
    Interval z3 = Interval::zeta(Rational(3));
    out.predicted = z32 / z3 * Interval(Int(X)).sqrt();
    return out;
}

std::vector<TrendRow> convergence_report(const std::function<double(long)>& value_at,
                                         double slope, const std::vector<long>& checkpoints) {
    std::vector<TrendRow> out;
    for (long X : checkpoints) {
        TrendRow row;
        row.X = X;
        row.value = value_at(X);
        row.ratio = row.value / static_cast<double>(X);
        row.slope = slope;
        row.residual_norm =
            (row.value - slope * X) / (std::sqrt(static_cast<double>(X)) * std::log(X));
        out.push_back(row);
    }
    return out;
}

} // namespace preper
