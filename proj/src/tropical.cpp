#include "preper/tropical.hpp"

#include <algorithm>
#include <set>

namespace preper {

namespace {

bool divides(long d, long v) { return v % d == 0; }

FilterVerdict decided(std::vector<ExtRational> base, int depth, std::string witness) {
    FilterVerdict v;
    v.decided = true;
    v.base = std::move(base);
    v.closure_depth = depth;
    v.witness = std::move(witness);
    return v;
}

} // namespace

FilterVerdict filter_additive(const std::vector<long>& coeff_vals, long v_c, int d) {
    if (d < 2) throw std::domain_error("filter_additive: d >= 2");
    if (coeff_vals.size() != static_cast<size_t>(d + 1))
        throw std::domain_error("filter_additive: need v(a_0)..v(a_d)");
    for (long v : coeff_vals)
        if (v < 0) return FilterVerdict::undecided();
    if (coeff_vals[d] != 0) return FilterVerdict::undecided();
    if (!(v_c < 0) || divides(d, v_c)) return FilterVerdict::undecided();
    return decided({ExtRational::infinity()}, 0, "additive");
}

FilterVerdict filter_inverse(long v_c, int d, int e, const std::vector<long>& coeff_vals) {
    if (d < 2 || e < 1 || e > d) throw std::domain_error("filter_inverse: need d >= 2, 1 <= e <= d");
    if (coeff_vals.size() != static_cast<size_t>(d - e + 1))
        throw std::domain_error("filter_inverse: need v(a_e)..v(a_d)");
    for (long v : coeff_vals)
        if (v < 0) return FilterVerdict::undecided();
    if (coeff_vals.front() != 0 || coeff_vals.back() != 0) return FilterVerdict::undecided();
    if (!(v_c < 0) || divides(d, v_c) || divides(d + 1, v_c)) return FilterVerdict::undecided();
    return decided({ExtRational(Rational(0)), ExtRational::infinity()}, 1, "inverse");
}

FilterVerdict filter_inverse_dual(long v_c, int d, int e, const std::vector<long>& coeff_vals) {
    if (d < 2 || e < 0 || e >= d)
        throw std::domain_error("filter_inverse_dual: need d >= 2, 0 <= e < d");
    if (coeff_vals.size() != static_cast<size_t>(e + 1))
        throw std::domain_error("filter_inverse_dual: need v(a_0)..v(a_e)");
    for (long v : coeff_vals)
        if (v < 0) return FilterVerdict::undecided();
    if (coeff_vals.front() != 0 || coeff_vals.back() != 0) return FilterVerdict::undecided();
    if (!(v_c < 0) || divides(d, v_c) || divides(d - 1, v_c)) return FilterVerdict::undecided();
    return decided({ExtRational(Rational(0)), ExtRational::infinity()}, 1, "inverse-dual");
}

FilterVerdict filter_three_cycle(long v_c, int d, int e) {
    if (v_c != -1) return FilterVerdict::undecided();
    std::vector<ExtRational> base{ExtRational(Rational(0)), ExtRational(Rational(1)),
                                  ExtRational::infinity()};
    if (e >= 3 && d >= e + 2) return decided(std::move(base), 0, "three-cycle");
    if (e == 2 && d >= 5) return decided(std::move(base), 1, "three-cycle-e2");
    if (e == 2 && d == 4) return decided(std::move(base), 3, "three-cycle-e2d4");
    return FilterVerdict::undecided();
}

std::vector<std::pair<long, long>> ab_orbit(long a, long b, int d, int e, long v_c, int steps) {
    auto consistent = [](long a, long b) {
        if (a > 0) return b == 0;
        if (b > 0) return a == 0;
        return a == b; // both <= 0: negatives must coincide, (0,0) allowed
    };
    if (!consistent(a, b)) throw std::domain_error("ab_orbit: inconsistent (a, b)");
    std::vector<std::pair<long, long>> out{{a, b}};
    for (int s = 0; s < steps; ++s) {
        long na, nb;
        if (a > 0 && b == 0) {
            na = std::min(static_cast<long>(e) * a + v_c, 0L);
            nb = a;
        } else if (a == 0 && b > 0) {
            na = v_c - static_cast<long>(d) * b;
            nb = na;
        } else if (a == b && a < 0) {
            na = v_c - static_cast<long>(d - e) * a;
            nb = 0;
        } else { // a == b == 0
            na = v_c;
            nb = v_c;
        }
        a = na;
        b = nb;
        if (!consistent(a, b)) throw std::domain_error("ab_orbit: left the consistent region");
        out.emplace_back(a, b);
    }
    return out;
}

namespace {

long val_or_inf(const Rational& r, uint64_t p) {
    auto v = padic_valuation(r, p);
    return v ? *v : VAL_INF;
}

// Valuation of the parameter slot c(t) at p; for shape families the slot is
// the unique nonconstant lift coefficient divided by the relevant scale.
Rational parameter_slot(const FamilyLift& fam, const Rational& t) {
    switch (fam.shape()) {
    case FamilyShape::Polynomial:
        return poly_eval(fam.F()[0], t) / Rational(fam.G()[0][0]);
    case FamilyShape::InversePoly:
        return poly_eval(fam.F()[0], t);
    case FamilyShape::InversePolyDual:
        return poly_eval(fam.F()[fam.degree()], t);
    case FamilyShape::ThreeCycle:
        return poly_eval(fam.F()[fam.shape_e()], t);
    default:
        throw std::domain_error("parameter_slot: no template shape");
    }
}

} // namespace

FilterVerdict apply_filters(const FamilyLift& fam, const Rational& t) {
    if (fam.shape() == FamilyShape::General || !fam.has_denominator_lemma())
        return FilterVerdict::undecided();
    const int d = fam.degree();
    const int e = fam.shape_e();
    Rational c = parameter_slot(fam, t);
    if (c.is_zero()) return FilterVerdict::undecided();
    // candidate places: primes of the denominator of the slot value
    std::vector<uint64_t> ps;
    {
        Int den = c.den();
        for (uint32_t p : default_sieve().primes()) {
            if (den == 1 || Int(p) * p > den) break;
            if (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
                ps.push_back(p);
                while (mpz_divisible_ui_p(den.get_mpz_t(), p))
                    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), p);
            }
        }
        if (den > 1) {
            Int lim(default_sieve().limit());
            if (den > lim * lim) return FilterVerdict::undecided(); // cannot certify
            ps.push_back(den.get_ui());
        }
    }
    const auto& S = fam.filter_excluded_primes();
    for (uint64_t p : ps) {
        if (std::find(S.begin(), S.end(), p) != S.end()) continue;
        long v_c = val_or_inf(c, p);
        if (v_c >= 0) continue;
        FilterVerdict v;
        switch (fam.shape()) {
        case FamilyShape::Polynomial: {
            std::vector<long> vals(d + 1, VAL_INF);
            vals[0] = VAL_INF; // constant part folded into c
            for (int i = 1; i <= d; ++i)
                if (!poly_is_zero(fam.F()[i]))
                    vals[i] = val_or_inf(Rational(fam.F()[i][0], fam.G()[0][0]), p);
            v = filter_additive(vals, v_c, d);
            break;
        }
        case FamilyShape::InversePoly: {
            std::vector<long> vals;
            Rational mu(fam.F()[0][1]); // c(t) = mu * t (+ const), a_i = G_i / mu
            for (int i = e; i <= d; ++i)
                vals.push_back(poly_is_zero(fam.G()[i])
                                   ? VAL_INF
                                   : val_or_inf(Rational(fam.G()[i][0]) / mu, p));
            v = filter_inverse(v_c, d, e, vals);
            break;
        }
        case FamilyShape::InversePolyDual: {
            std::vector<long> vals;
            Rational mu(fam.F()[d][1]);
            for (int i = 0; i <= e; ++i)
                vals.push_back(poly_is_zero(fam.G()[i])
                                   ? VAL_INF
                                   : val_or_inf(Rational(fam.G()[i][0]) / mu, p));
            v = filter_inverse_dual(v_c, d, e, vals);
            break;
        }
        case FamilyShape::ThreeCycle: {
            if (padic_valuation(Int(d), p) != 0) break;
            v = filter_three_cycle(v_c, d, e);
            break;
        }
        default:
            break;
        }
        if (v.decided) {
            v.witness += " at p=" + std::to_string(p);
            return v;
        }
    }
    return FilterVerdict::undecided();
}

std::vector<ExtRational> materialize_verdict(const SpecializedMap& m, const FilterVerdict& v) {
    if (!v.decided) throw std::domain_error("materialize_verdict: undecided");
    std::set<ExtRational> set(v.base.begin(), v.base.end());
    for (int k = 0; k < v.closure_depth; ++k) {
        std::set<ExtRational> next = set;
        for (const auto& q : set)
            for (const auto& pre : rational_preimages(m, q)) next.insert(pre);
        if (next == set) break;
        set.swap(next);
    }
    return std::vector<ExtRational>(set.begin(), set.end());
}

bool denominator_lemma(const FamilyLift& fam, const Rational& t) {
    if (!fam.has_denominator_lemma())
        throw std::domain_error("no denominator lemma registered for family '" + fam.name() + "'");
    FilterVerdict v = apply_filters(fam, t);
    if (!v.decided) return false;
    if (v.closure_depth == 0) {
        std::set<ExtRational> base(v.base.begin(), v.base.end());
        std::set<ExtRational> gamma(fam.gamma().begin(), fam.gamma().end());
        return base == gamma;
    }
    SpecializedMap m = fam.specialize(t);
    auto set = materialize_verdict(m, v);
    std::set<ExtRational> got(set.begin(), set.end());
    std::set<ExtRational> gamma(fam.gamma().begin(), fam.gamma().end());
    return got == gamma;
}

} // namespace preper
