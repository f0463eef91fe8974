#pragma once

#include <vector>

#include "preper/rational.hpp"

namespace preper {

/// Integer polynomial in one variable, coefficients ascending; the zero
/// polynomial is the empty vector. Trailing zero coefficients are trimmed.
using PolyZ = std::vector<Int>;

PolyZ poly_trim(PolyZ p);
bool poly_is_zero(const PolyZ& p);
long poly_degree(const PolyZ& p); // -1 for the zero polynomial
Int poly_content(const PolyZ& p); // gcd of coefficients, 0 for zero poly

PolyZ poly_add(const PolyZ& a, const PolyZ& b);
PolyZ poly_sub(const PolyZ& a, const PolyZ& b);
PolyZ poly_mul(const PolyZ& a, const PolyZ& b);
PolyZ poly_neg(const PolyZ& a);

/// Exact quotient a / b; throws std::domain_error when b does not divide a
/// over Z[T].
PolyZ poly_div_exact(const PolyZ& a, const PolyZ& b);

Int poly_eval(const PolyZ& p, const Int& x);
Rational poly_eval(const PolyZ& p, const Rational& x);

std::string poly_str(const PolyZ& p, const std::string& var = "T");

/// Determinant of a square matrix over Z[T] by fraction-free Bareiss
/// elimination (exact; divisions are exact in Z[T]).
PolyZ polyz_matrix_det(std::vector<std::vector<PolyZ>> m);

/// Determinant of an integer matrix, fraction-free Bareiss.
Int int_matrix_det(std::vector<std::vector<Int>> m);

/// Sylvester matrix of two binary degree-d forms given as coefficient
/// vectors F[i] = coeff of X^i Y^(d-i), and its resultant over Z[T].
std::vector<std::vector<PolyZ>> sylvester_matrix(const std::vector<PolyZ>& F,
                                                 const std::vector<PolyZ>& G);
PolyZ sylvester_resultant(const std::vector<PolyZ>& F, const std::vector<PolyZ>& G);

/// Integer resultant of two integer binary forms of the same degree.
Int sylvester_resultant_int(const std::vector<Int>& F, const std::vector<Int>& G);

/// All rational roots of p (exact; via the rational root theorem with
/// complete factorization of the leading and constant coefficients).
/// Throws arithmetic_limit_error if those coefficients cannot be factored
/// within the sieve's certification range.
std::vector<Rational> rational_roots(const PolyZ& p);

/// Rational roots of an integer binary form of degree d, as points of P^1:
/// finite roots plus infinity when the X^d coefficient vanishes.
std::vector<ExtRational> binary_form_roots(const std::vector<Int>& coeffs);

} // namespace preper
