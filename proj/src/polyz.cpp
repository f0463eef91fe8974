#include "preper/polyz.hpp"

#include <algorithm>
#include <set>

namespace preper {

PolyZ poly_trim(PolyZ p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

bool poly_is_zero(const PolyZ& p) {
    for (const auto& c : p)
        if (c != 0) return false;
    return true;
}

long poly_degree(const PolyZ& p) {
    for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

Int poly_content(const PolyZ& p) {
    Int g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

PolyZ poly_add(const PolyZ& a, const PolyZ& b) {
    PolyZ r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return poly_trim(std::move(r));
}

PolyZ poly_sub(const PolyZ& a, const PolyZ& b) {
    PolyZ r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return poly_trim(std::move(r));
}

PolyZ poly_neg(const PolyZ& a) {
    PolyZ r = a;
    for (auto& c : r) c = -c;
    return r;
}

PolyZ poly_mul(const PolyZ& a, const PolyZ& b) {
    if (poly_is_zero(a) || poly_is_zero(b)) return {};
    PolyZ r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return poly_trim(std::move(r));
}

PolyZ poly_div_exact(const PolyZ& a0, const PolyZ& b0) {
    PolyZ a = poly_trim(a0), b = poly_trim(b0);
    if (b.empty()) throw std::domain_error("poly_div_exact: division by zero polynomial");
    if (a.empty()) return {};
    long da = poly_degree(a), db = poly_degree(b);
    if (da < db) throw std::domain_error("poly_div_exact: not divisible (degree)");
    PolyZ q(da - db + 1, Int(0));
    const Int& lead = b[db];
    for (long k = da - db; k >= 0; --k) {
        const Int& top = a[db + k];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()))
            throw std::domain_error("poly_div_exact: not divisible (coefficient)");
        Int c;
        mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
        q[k] = c;
        for (long i = 0; i <= db; ++i) a[i + k] -= c * b[i];
    }
    if (!poly_is_zero(a)) throw std::domain_error("poly_div_exact: nonzero remainder");
    return poly_trim(std::move(q));
}

Int poly_eval(const PolyZ& p, const Int& x) {
    Int acc = 0;
    for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i) acc = acc * x + p[i];
    return acc;
}

Rational poly_eval(const PolyZ& p, const Rational& x) {
    Rational acc(0);
    for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i)
        acc = acc * x + Rational(p[i]);
    return acc;
}

std::string poly_str(const PolyZ& p, const std::string& var) {
    if (poly_is_zero(p)) return "0";
    std::string out;
    for (long i = poly_degree(p); i >= 0; --i) {
        if (p[i] == 0) continue;
        if (!out.empty()) out += (p[i] > 0 ? " + " : " - ");
        else if (p[i] < 0) out += "-";
        Int a = abs(p[i]);
        bool unit = (a == 1) && i > 0;
        if (!unit) out += a.get_str();
        if (i > 0) {
            if (!unit) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

namespace {

template <typename T>
struct ring_ops;

template <>
struct ring_ops<PolyZ> {
    static bool is_zero(const PolyZ& x) { return poly_is_zero(x); }
    static PolyZ one() { return PolyZ{Int(1)}; }
    static PolyZ mul(const PolyZ& a, const PolyZ& b) { return poly_mul(a, b); }
    static PolyZ sub(const PolyZ& a, const PolyZ& b) { return poly_sub(a, b); }
    static PolyZ div(const PolyZ& a, const PolyZ& b) { return poly_div_exact(a, b); }
    static PolyZ neg(const PolyZ& a) { return poly_neg(a); }
};

template <>
struct ring_ops<Int> {
    static bool is_zero(const Int& x) { return x == 0; }
    static Int one() { return 1; }
    static Int mul(const Int& a, const Int& b) { return a * b; }
    static Int sub(const Int& a, const Int& b) { return a - b; }
    static Int div(const Int& a, const Int& b) {
        Int q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
    static Int neg(const Int& a) { return -a; }
};

// Bareiss fraction-free elimination over an integral domain.
template <typename T>
T bareiss_det(std::vector<std::vector<T>> m) {
    using R = ring_ops<T>;
    const size_t n = m.size();
    if (n == 0) return R::one();
    T prev = R::one();
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (R::is_zero(m[k][k])) {
            size_t swap_row = k + 1;
            while (swap_row < n && R::is_zero(m[swap_row][k])) ++swap_row;
            if (swap_row == n) return T{}; // singular
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                T t = R::sub(R::mul(m[i][j], m[k][k]), R::mul(m[i][k], m[k][j]));
                m[i][j] = R::div(t, prev);
            }
            m[i][k] = T{};
        }
        prev = m[k][k];
    }
    T det = m[n - 1][n - 1];
    return sign == 1 ? det : R::neg(det);
}

} // namespace

PolyZ polyz_matrix_det(std::vector<std::vector<PolyZ>> m) {
    return bareiss_det<PolyZ>(std::move(m));
}

Int int_matrix_det(std::vector<std::vector<Int>> m) {
    return bareiss_det<Int>(std::move(m));
}

std::vector<std::vector<PolyZ>> sylvester_matrix(const std::vector<PolyZ>& F,
                                                 const std::vector<PolyZ>& G) {
    if (F.size() != G.size() || F.size() < 2)
        throw std::domain_error("sylvester_matrix: F, G must share degree >= 1");
    const long d = static_cast<long>(F.size()) - 1;
    const long n = 2 * d;
    std::vector<std::vector<PolyZ>> m(n, std::vector<PolyZ>(n));
    // column j < d holds F shifted down by j; column d+j holds G shifted by j
    for (long j = 0; j < d; ++j) {
        for (long i = 0; i < n; ++i) {
            long k = d - (i - j); // coefficient index, X^k Y^(d-k)
            if (k >= 0 && k <= d) {
                m[i][j] = F[k];
                m[i][d + j] = G[k];
            }
        }
    }
    return m;
}

PolyZ sylvester_resultant(const std::vector<PolyZ>& F, const std::vector<PolyZ>& G) {
    return polyz_matrix_det(sylvester_matrix(F, G));
}

Int sylvester_resultant_int(const std::vector<Int>& F, const std::vector<Int>& G) {
    if (F.size() == 3 && G.size() == 3) {
        // classical closed form for a pair of binary quadratics
        Int u = F[2] * G[0] - F[0] * G[2];
        Int v = F[2] * G[1] - F[1] * G[2];
        Int w = F[1] * G[0] - F[0] * G[1];
        return u * u - v * w;
    }
    std::vector<PolyZ> Fp, Gp;
    for (const auto& c : F) Fp.push_back(c == 0 ? PolyZ{} : PolyZ{c});
    for (const auto& c : G) Gp.push_back(c == 0 ? PolyZ{} : PolyZ{c});
    PolyZ r = sylvester_resultant(Fp, Gp);
    return r.empty() ? Int(0) : r[0];
}

namespace {

std::vector<Int> mpz_divisors(const Int& n0) {
    Int n = abs(n0);
    if (n == 0) throw std::domain_error("mpz_divisors: zero");
    std::vector<Int> out{Int(1)};
    Int rem = n;
    for (uint32_t p : default_sieve().primes()) {
        if (Int(p) * Int(p) > rem) break;
        if (!mpz_divisible_ui_p(rem.get_mpz_t(), p)) continue;
        int e = 0;
        while (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
            mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
            ++e;
        }
        size_t sz = out.size();
        Int pe = 1;
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * pe);
        }
        if (out.size() > 2'000'000)
            throw arithmetic_limit_error("mpz_divisors: too many divisors");
    }
    if (rem > 1) {
        // cofactor certified prime iff below sieve limit squared
        Int lim(default_sieve().limit());
        if (rem > lim * lim)
            throw arithmetic_limit_error("mpz_divisors: unfactorable cofactor");
        size_t sz = out.size();
        for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * rem);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<Rational> rational_roots(const PolyZ& p0) {
    PolyZ p = poly_trim(p0);
    std::vector<Rational> roots;
    if (p.empty()) throw std::domain_error("rational_roots: zero polynomial");
    // factor out powers of T
    size_t shift = 0;
    while (shift < p.size() && p[shift] == 0) ++shift;
    if (shift > 0) {
        roots.push_back(Rational(0));
        p.erase(p.begin(), p.begin() + shift);
    }
    long d = poly_degree(p);
    if (d <= 0) return roots;
    if (d == 1) {
        roots.push_back(Rational(-p[0], p[1]));
    } else if (d == 2) {
        Int disc = p[1] * p[1] - 4 * p[2] * p[0];
        if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t())) {
            Int s;
            mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
            roots.push_back(Rational(-p[1] + s, 2 * p[2]));
            if (s != 0) roots.push_back(Rational(-p[1] - s, 2 * p[2]));
        }
    } else {
        for (const Int& u : mpz_divisors(p[0])) {
            for (const Int& w : mpz_divisors(p[d])) {
                for (int sign : {1, -1}) {
                    Rational r(sign * u, w);
                    if (poly_eval(p, r).is_zero()) roots.push_back(r);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::vector<ExtRational> binary_form_roots(const std::vector<Int>& coeffs) {
    if (coeffs.empty()) throw std::domain_error("binary_form_roots: empty form");
    std::vector<ExtRational> out;
    bool all_zero = true;
    for (const auto& c : coeffs)
        if (c != 0) all_zero = false;
    if (all_zero) throw std::domain_error("binary_form_roots: zero form");
    if (coeffs.back() == 0) out.push_back(ExtRational::infinity());
    PolyZ p(coeffs.begin(), coeffs.end());
    if (!poly_is_zero(p))
        for (const auto& r : rational_roots(p)) out.push_back(ExtRational(r));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace preper
