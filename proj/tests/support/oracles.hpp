#pragma once

#include "symkit/expr.hpp"
#include "symkit/number.hpp"

#include <functional>
#include <gmpxx.h>
#include <vector>

/// Reference implementations used as independent oracles. They only build
/// expressions through the core constructors, never through the algorithms
/// under test.
namespace symkit::testing::oracle {

/// B_n from sum_{k=0}^{n} C(n+1,k) B_k = 0, B_0 = 1.
mpq_class bernoulli(unsigned n);

/// Stein's binary gcd.
mpz_class binary_gcd(mpz_class a, mpz_class b);

/// Dense univariate polynomial over Q, index = exponent.
using UPoly = std::vector<mpq_class>;

void trim(UPoly& p);
/// Monic gcd by Euclid's algorithm; zero polynomial is the empty vector.
UPoly euclid_gcd(UPoly a, UPoly b);
/// Remainder of a by b over Q.
UPoly remainder(UPoly a, const UPoly& b);
UPoly multiply(const UPoly& a, const UPoly& b);
Expr to_expr(const UPoly& p, const Expr& x);

using QMatrix = std::vector<std::vector<mpq_class>>;

/// Laplace expansion along the first row.
mpq_class cofactor_det(const QMatrix& m);
/// Same on expressions; the result is expanded.
Expr cofactor_det(const std::vector<std::vector<Expr>>& m);
/// x_i = det(A_i) / det(A).
std::vector<mpq_class> cramer(const QMatrix& a, const std::vector<mpq_class>& b);

/// det of the rank-n Hilbert matrix, (prod_{k<n} k!)^4 / prod_{k<2n} k!.
mpq_class hilbert_det(long n);

/// Coefficients of x^-1 .. x^upto of Gamma(x) at 0, from
/// Gamma(1+x) = exp(-Euler x + sum_{k>=2} (-1)^k zeta(k) x^k / k) by
/// truncated power-series exponentiation. Even zeta values are written as
/// rational multiples of Pi^(2k) via the Bernoulli oracle.
std::vector<Expr> gamma_coefficients(int upto);

/// (f(x+h) - f(x-h)) / (2h) with f evaluated at `digits` decimal digits.
Number central_difference(const std::function<Number(const Number&)>& f, const Number& x, const Number& h);

/// |a - b| <= tol * max(|a|, |b|), or |a - b| <= tol when both are tiny.
bool rel_close(const Number& a, const Number& b, double tol);

/// Numeric value of a closed expression at `digits`; DomainError if not numeric.
Number numeric_value(const Expr& e, int digits = 20);

} // namespace symkit::testing::oracle
