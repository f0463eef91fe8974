#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "preper/interval.hpp"

namespace preper {

/// Lattice count of the image of phi_c(t) = c/4 - t^2 up to height X,
/// split by the residue class of the denominator: (2,1) with d = 1,
/// (4,2) with d = 16, (4,0) with d = 4.
struct RegionCount {
    int c = 0;
    long X = 0;
    long n21 = 0, n42 = 0, n40 = 0;
    long total = 0;
};

/// c must be 1 or -3. Exact integer-lattice count, no floating point.
RegionCount count_image_phi(int c, long X);

/// Exact #{psi(r) : r in Q, H(psi(r)) <= X} for psi(r) = r^2 - r, by
/// enumerating r up to the forced preimage bound and deduplicating.
long count_image_psi(long X);

/// F_b(Y) = #{1 <= a <= Y : gcd(a, b) = 1}.
int64_t coprime_count_Fb(uint64_t b, int64_t Y);

/// H_{q,r}(Y) = sum of phi(b)/b over b <= Y, b = r (mod q); exact.
Rational totient_sum_Hqr(int q, int r, long Y);

/// G_{q,r}(Y) = sum of sqrt(4Y^2 + c b^2) phi(b)/b over the same b, with
/// certified interval endpoints.
Interval weighted_sum_Gqr(int q, int r, long Y, int c);

struct ConstantReport {
    std::string name;
    Interval value;
    std::string formula;
    std::string decimal(int digits = 30) const { return value.decimal(digits); }
};

/// C_{q,r} = (6/pi^2) (1/phi(q)) prod_{p | q} (p - [p|r])/(p + 1).
ConstantReport constant_Cqr(int q, int r);

/// Truncated defining series (1/q) sum_{k<=K} a_k/k^2 with a certified
/// tail bound of 1/K; the returned interval contains the true constant.
Interval Cqr_series(int q, int r, long K);

/// gamma(c) = sqrt(4+c)/2 + (2/sqrt|c|) A(sqrt|c|/2) with A = arsinh for
/// c > 0 and arcsin for c < 0; closed forms for c = 1 and c = -3.
ConstantReport constant_gamma(int c);
Interval gamma_generic(int c);

/// C2 = 4 C1 = (12/pi^2)(2pi/(3 sqrt 3) + (1+sqrt 5)/2 + 2 log((1+sqrt 5)/2)),
/// cross-checked against (12/pi^2)(gamma(1) + gamma(-3)).
std::pair<ConstantReport, ConstantReport> constant_C1C2();

struct SquarefullCensus {
    uint64_t X = 0;
    uint64_t count = 0;   // exact, via the b^2 m^3 parametrization
    Interval predicted;   // zeta(3/2)/zeta(3) sqrt(X)
};

SquarefullCensus squarefull_census(uint64_t X);

struct TrendRow {
    long X;
    double value;
    double ratio;          // value / X
    double slope;          // predicted limit of ratio
    double residual_norm;  // (value - slope X) / (sqrt X log X)
};

/// Diagnostic table; no pass/fail.
std::vector<TrendRow> convergence_report(const std::function<double(long)>& value_at,
                                         double slope, const std::vector<long>& checkpoints);

} // namespace preper
