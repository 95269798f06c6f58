#pragma once

#include "symkit/expr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symkit {

struct SeriesTerm {
    Expr coeff;
    int exponent;
};

/// Truncated power or Laurent series in (var - point).
///
/// Terms have strictly increasing exponents and nonzero coefficients. With an
/// order N every exponent is below N; without one the series is an exact
/// polynomial.
class PSeries {
public:
    PSeries(Expr var, Expr point, std::vector<SeriesTerm> terms, std::optional<int> order);

    const Expr& var() const noexcept { return var_; }
    const Expr& point() const noexcept { return point_; }
    const std::vector<SeriesTerm>& terms() const noexcept { return terms_; }
    const std::optional<int>& order() const noexcept { return order_; }

    bool empty() const noexcept { return terms_.empty(); }
    /// Lowest exponent present; the order (or 0) when there are no terms.
    int ldegree() const noexcept;
    /// Coefficient of (var - point)^k, zero when absent.
    Expr coeff(int k) const;
    /// Drops terms at or above `n` and sets the order to min(order, n).
    PSeries truncate(int n) const;

private:
    Expr var_;
    Expr point_;
    std::vector<SeriesTerm> terms_;
    std::optional<int> order_;
};

/// Expansion of `e` at the relation `at` (symbol == point) with exponents below `order`.
PSeries series_of(const Expr& e, const Expr& at, int order);
PSeries series_of(const Expr& e, const Expr& var, const Expr& point, int order);

PSeries ps_add(const PSeries& a, const PSeries& b);
PSeries ps_mul(const PSeries& a, const PSeries& b);
/// Integer or rational power k. Rational powers need ldegree*k integral.
PSeries ps_pow(const PSeries& a, const Expr& k);
/// exp of a series with nonnegative low degree.
PSeries ps_exp(const PSeries& a);
PSeries ps_scale(const PSeries& a, const Expr& c);

/// Sum of coeff*(var-point)^exponent; the order term is dropped.
Expr ps_to_expr(const PSeries& a);
/// Wraps a series as an expression node.
Expr make_series(PSeries a);
std::string ps_to_string(const PSeries& a);

} // namespace symkit
