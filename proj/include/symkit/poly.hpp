#pragma once

#include "symkit/expr.hpp"

#include <optional>

namespace symkit {

/// Highest exponent of x in expand(e); 0 for e = 0. A non-integer or
/// symbolic exponent of x, or x inside a function, raises DomainError.
int degree(const Expr& e, const Expr& x);
/// Lowest exponent of x in expand(e).
int ldegree(const Expr& e, const Expr& x);
/// Coefficient of x^k in expand(e).
Expr coeff(const Expr& e, const Expr& x, int k);
/// Sum of coeff(e, x, k) * x^k.
Expr collect(const Expr& e, const Expr& x);

struct UnitContentPrimpart {
    Expr unit;
    Expr content;
    Expr primpart;
};

/// e = unit * content * primpart with respect to x.
UnitContentPrimpart content_primpart(const Expr& e, const Expr& x);

/// Gcd of polynomials with rational coefficients; positive leading
/// coefficient in lex order over the variables sorted by cmp.
Expr poly_gcd(const Expr& a, const Expr& b);
/// nullopt when the heuristic gives up.
std::optional<Expr> heur_gcd(const Expr& a, const Expr& b);
Expr sr_gcd(const Expr& a, const Expr& b);
Expr lcm(const Expr& a, const Expr& b);

/// Exact quotient a / b of polynomials, nullopt when b does not divide a.
std::optional<Expr> divide(const Expr& a, const Expr& b);

/// Rational normal form: numerator and denominator coprime polynomials.
/// Function applications and symbolic powers are treated as generators;
/// exp(-u) is taken as 1/exp(u).
Expr normal(const Expr& e);

} // namespace symkit
