#pragma once

#include <string>
#include <vector>

#include "preper/family.hpp"

namespace preper {

/// Sentinel valuation for zero coefficients (v(0) = +infinity).
inline constexpr long VAL_INF = 1L << 40;

/// Outcome of a valuation-dynamics filter. When decided, the full set of
/// rational preperiodic points is the closure base ∪ f^{-1}(base) ∪ ... up
/// to closure_depth preimage layers (depth 0 means base itself).
struct FilterVerdict {
    bool decided = false;
    std::vector<ExtRational> base;
    int closure_depth = 0;
    std::string witness;

    static FilterVerdict undecided() { return {}; }
};

/// f = a_d z^d + ... + a_1 z + a_0 + c, coeff_vals = {v(a_0), ..., v(a_d)}.
/// Decides PrePer = {inf} when v(a_i) >= 0 for all i, v(a_d) = 0,
/// v_c < 0, and d does not divide v_c.
FilterVerdict filter_additive(const std::vector<long>& coeff_vals, long v_c, int d);

/// f = c / (a_e z^e + ... + a_d z^d), coeff_vals = {v(a_e), ..., v(a_d)}.
/// Decides PrePer = {0, inf} ∪ f^{-1}(inf) when v(a_i) >= 0,
/// v(a_e) = v(a_d) = 0, v_c < 0, d and d+1 both fail to divide v_c.
FilterVerdict filter_inverse(long v_c, int d, int e, const std::vector<long>& coeff_vals);

/// f = c z^d / (a_0 + ... + a_e z^e), coeff_vals = {v(a_0), ..., v(a_e)};
/// same conclusion under v(a_0) = v(a_e) = 0, d > e, v_c < 0 and d, d-1
/// both failing to divide v_c.
FilterVerdict filter_inverse_dual(long v_c, int d, int e, const std::vector<long>& coeff_vals);

/// f = (c z^e + 1) / (1 - z)^d with v(d) = 0 at the working place.
/// For v_c = -1: e >= 3, d >= e+2 >= 5 gives {0, 1, inf}; e = 2, d >= 5
/// gives the depth-1 preimage closure; e = 2, d = 4 gives depth 3.
FilterVerdict filter_three_cycle(long v_c, int d, int e);

/// Piecewise-linear action on the valuation pair (a, b) = (v(z), v(z-1))
/// for the three-cycle shape. Returns the trajectory including the start
/// (steps+1 entries). Inconsistent states are rejected.
std::vector<std::pair<long, long>> ab_orbit(long a, long b, int d, int e, long v_c = -1,
                                            int steps = 1);

/// Scans the denominator primes of t and applies the family's registered
/// filter at each place outside the excluded set. Returns the first firing
/// verdict, or undecided.
FilterVerdict apply_filters(const FamilyLift& family, const Rational& t);

/// True when a registered denominator lemma certifies
/// PrePer(f_t, Q) = (Gamma)_t without orbit search. Throws when the family
/// has no denominator lemma registered.
bool denominator_lemma(const FamilyLift& family, const Rational& t);

/// Materializes a decided verdict into the explicit point set for one map.
std::vector<ExtRational> materialize_verdict(const SpecializedMap& m, const FilterVerdict& v);

} // namespace preper
