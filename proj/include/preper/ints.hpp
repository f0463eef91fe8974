#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace preper {

using std::int64_t;
using std::uint64_t;

/// Thrown when a computation would exceed the configured integer range or
/// factorization capability.
struct arithmetic_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// floor(sqrt(n)) with exact post-check.
uint64_t isqrt64(uint64_t n);

/// floor(n^(1/k)) with exact post-check, k >= 1.
uint64_t ikroot64(uint64_t n, unsigned k);

/// Checked n^k over uint64; throws arithmetic_limit_error on overflow.
uint64_t checked_pow64(uint64_t base, unsigned exp);

/// Deterministic prime sieve and trial-division factorizer.
///
/// Factorization is complete for all n whose second-largest prime factor is
/// at most the sieve limit; beyond that an arithmetic_limit_error is thrown
/// rather than returning a possibly wrong answer.
class PrimeSieve {
public:
    explicit PrimeSieve(uint32_t limit = 1'000'000);

    uint32_t limit() const { return limit_; }
    const std::vector<uint32_t>& primes() const { return primes_; }
    bool is_prime(uint64_t n) const;

    /// Prime factorization as (p, exponent) pairs, p ascending.
    std::vector<std::pair<uint64_t, int>> factorize(uint64_t n) const;

    /// Smallest prime factor for n <= limit (1 maps to 1).
    uint32_t spf(uint32_t n) const { return n <= 1 ? n : spf_[n]; }

private:
    uint32_t limit_;
    std::vector<uint32_t> spf_;
    std::vector<uint32_t> primes_;
};

/// Process-wide sieve with the default limit.
const PrimeSieve& default_sieve();

struct MultiplicativeSuite {
    uint64_t phi;
    int mu;       // 0 if not squarefree, else (-1)^omega
    int omega;    // number of distinct prime factors
    uint64_t tau; // number of divisors
};

/// phi, mu, omega, tau of n >= 1, all exact.
MultiplicativeSuite multiplicative_suite(uint64_t n);

/// True iff every prime dividing n divides it at least twice.
bool is_squarefull(uint64_t n);

/// Golomb factorization n = b^2 * m^3 with m squarefree; nullopt if n is not
/// squarefull.
std::optional<std::pair<uint64_t, uint64_t>> squarefull_decompose(uint64_t n);

/// All positive divisors of n, ascending.
std::vector<uint64_t> divisors(uint64_t n);

/// #{1 <= a <= y : gcd(a, b) = 1} by Moebius inclusion-exclusion over the
/// prime divisors of b.
int64_t coprime_count(uint64_t b, int64_t y);

} // namespace preper
