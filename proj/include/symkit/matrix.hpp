#pragma once

#include "symkit/expr.hpp"

#include <vector>

namespace symkit {

/// Row-major matrix expression; throws ShapeError when the entry count is off.
Expr matrix(std::size_t rows, std::size_t cols, std::vector<Expr> entries);
/// Rows of equal length.
Expr matrix(const std::vector<std::vector<Expr>>& rows);
Expr identity_matrix(std::size_t n);

std::size_t mat_rows(const Expr& m);
std::size_t mat_cols(const Expr& m);
const Expr& mat_entry(const Expr& m, std::size_t i, std::size_t j);

Expr mat_add(const Expr& a, const Expr& b);
Expr mat_sub(const Expr& a, const Expr& b);
Expr mat_mul(const Expr& a, const Expr& b);
Expr mat_scale(const Expr& m, const Expr& c);
Expr mat_transpose(const Expr& m);
/// normal applied to every entry.
Expr mat_normal(const Expr& m);

/// Exact determinant. Rational matrices use elimination over the rationals,
/// symbolic ones fraction-free elimination after clearing row denominators.
Expr mat_det(const Expr& m);
/// Throws SingularMatrix when the determinant vanishes.
Expr mat_inverse(const Expr& m);
/// det(m - lambda*I), collected in lambda.
Expr mat_charpoly(const Expr& m, const Expr& lambda);
/// Unique solution of a linear system as a List of `var == value`.
Expr solve_linear(const Expr& equations, const Expr& variables);

} // namespace symkit
