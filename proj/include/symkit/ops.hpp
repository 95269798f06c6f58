#pragma once

#include "symkit/expr.hpp"

#include <vector>

namespace symkit {

/// Simultaneous substitution. Each binding is `symbol == value`; a
/// non-symbol left-hand side raises UnsupportedPattern.
Expr subs(const Expr& e, const std::vector<Expr>& bindings);
/// Accepts a single relation or a List of relations.
Expr subs(const Expr& e, const Expr& bindings);

/// n-th derivative with respect to the symbol x.
Expr diff(const Expr& e, const Expr& x, int n = 1);

/// Products over sums and positive integer powers of sums multiplied out.
Expr expand(const Expr& e);

/// Numbers to floats at p digits, constants to their values, functions with
/// numeric arguments evaluated where an evalf hook exists.
Expr evalf(const Expr& e, Precision p = {});

} // namespace symkit
