#include "preper/ints.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace preper {

uint64_t isqrt64(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

uint64_t ikroot64(uint64_t n, unsigned k) {
    if (k == 0) throw arithmetic_limit_error("ikroot64: k must be >= 1");
    if (k == 1 || n <= 1) return n;
    if (k == 2) return isqrt64(n);
    uint64_t r = static_cast<uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    auto le = [&](uint64_t x) { // x^k <= n without overflow
        uint64_t acc = 1;
        for (unsigned i = 0; i < k; ++i) {
            if (x != 0 && acc > n / x) return false;
            acc *= x;
        }
        return acc <= n;
    };
    while (r > 0 && !le(r)) --r;
    while (le(r + 1)) ++r;
    return r;
}

uint64_t checked_pow64(uint64_t base, unsigned exp) {
    uint64_t acc = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && acc > UINT64_MAX / base)
            throw arithmetic_limit_error("checked_pow64: overflow");
        acc *= base;
    }
    return acc;
}

PrimeSieve::PrimeSieve(uint32_t limit) : limit_(limit), spf_(limit + 1, 0) {
    for (uint32_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = i;
            primes_.push_back(i);
        }
        for (uint32_t p : primes_) {
            if (p > spf_[i] || static_cast<uint64_t>(p) * i > limit) break;
            spf_[p * i] = p;
        }
    }
}

bool PrimeSieve::is_prime(uint64_t n) const {
    if (n < 2) return false;
    if (n <= limit_) return spf_[n] == n;
    if (n > static_cast<uint64_t>(limit_) * limit_)
        throw arithmetic_limit_error("is_prime: argument beyond sieve range");
    for (uint32_t p : primes_) {
        if (static_cast<uint64_t>(p) * p > n) break;
        if (n % p == 0) return false;
    }
    return true;
}

std::vector<std::pair<uint64_t, int>> PrimeSieve::factorize(uint64_t n) const {
    if (n == 0) throw arithmetic_limit_error("factorize: n must be >= 1");
    std::vector<std::pair<uint64_t, int>> out;
    if (n <= limit_) { // fast path via smallest-prime-factor table
        uint32_t m = static_cast<uint32_t>(n);
        while (m > 1) {
            uint32_t p = spf_[m];
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            out.emplace_back(p, e);
        }
        return out;
    }
    for (uint32_t p : primes_) {
        if (static_cast<uint64_t>(p) * p > n) break;
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) {
        // remaining cofactor has no prime factor <= limit; it is prime iff
        // it is below limit^2
        if (n > static_cast<uint64_t>(limit_) * limit_)
            throw arithmetic_limit_error("factorize: cofactor beyond sieve certification range");
        out.emplace_back(n, 1);
        std::sort(out.begin(), out.end());
    }
    return out;
}

const PrimeSieve& default_sieve() {
    static const PrimeSieve sieve;
    return sieve;
}

MultiplicativeSuite multiplicative_suite(uint64_t n) {
    if (n == 0) throw arithmetic_limit_error("multiplicative_suite: n must be >= 1");
    auto fac = default_sieve().factorize(n);
    MultiplicativeSuite s{1, 1, 0, 1};
    bool squarefree = true;
    for (auto [p, e] : fac) {
        uint64_t pe1 = checked_pow64(p, static_cast<unsigned>(e - 1));
        s.phi *= pe1 * (p - 1);
        s.tau *= static_cast<uint64_t>(e + 1);
        s.omega += 1;
        if (e > 1) squarefree = false;
    }
    s.mu = squarefree ? (s.omega % 2 == 0 ? 1 : -1) : 0;
    return s;
}

bool is_squarefull(uint64_t n) {
    if (n == 0) return false;
    for (auto [p, e] : default_sieve().factorize(n))
        if (e < 2) return false;
    return true;
}

std::optional<std::pair<uint64_t, uint64_t>> squarefull_decompose(uint64_t n) {
    if (n == 0) return std::nullopt;
    uint64_t b = 1, m = 1;
    for (auto [p, e] : default_sieve().factorize(n)) {
        if (e < 2) return std::nullopt;
        if (e % 2 == 1) { // e = 2x + 3, x >= 0
            m *= p;
            b *= checked_pow64(p, static_cast<unsigned>((e - 3) / 2));
        } else {
            b *= checked_pow64(p, static_cast<unsigned>(e / 2));
        }
    }
    return std::make_pair(b, m);
}

std::vector<uint64_t> divisors(uint64_t n) {
    std::vector<uint64_t> out{1};
    for (auto [p, e] : default_sieve().factorize(n)) {
        size_t sz = out.size();
        uint64_t pe = 1;
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * pe);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int64_t coprime_count(uint64_t b, int64_t y) {
    if (y <= 0) return 0;
    if (b == 1) return y;
    std::vector<uint64_t> ps;
    for (auto [p, e] : default_sieve().factorize(b)) ps.push_back(p);
    int64_t total = 0;
    size_t subsets = size_t{1} << ps.size();
    for (size_t mask = 0; mask < subsets; ++mask) {
        uint64_t d = 1;
        int bits = 0;
        for (size_t i = 0; i < ps.size(); ++i)
            if (mask & (size_t{1} << i)) { d *= ps[i]; ++bits; }
        int64_t term = y / static_cast<int64_t>(d);
        total += (bits % 2 == 0) ? term : -term;
    }
    return total;
}

} // namespace preper
