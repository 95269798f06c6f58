#pragma once

#include "symkit/expr.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symkit {

/// Descriptor of a symbolic function. Every hook is optional.
struct FunctionDef {
    using EvalHook = std::function<std::optional<Expr>(const std::vector<Expr>& args)>;
    /// Called only when every argument is numeric.
    using EvalfHook = std::function<std::optional<Number>(const std::vector<Number>& args, Precision p)>;
    /// Partial derivative with respect to argument `index`.
    using DerivativeHook = std::function<Expr(const std::vector<Expr>& args, std::size_t index)>;
    /// Expansion in `var` around 0 with all exponents below `order`.
    using SeriesHook =
        std::function<std::optional<PSeries>(const std::vector<Expr>& args, const Expr& var, int order)>;
    using PrintHook = std::function<std::string(const std::vector<Expr>& args)>;

    std::string name;
    std::size_t arity = 1;
    EvalHook eval;
    EvalfHook evalf;
    DerivativeHook derivative;
    SeriesHook series;
    PrintHook print;
    /// Assigned by fn_register.
    std::uint64_t serial = 0;
};

/// Registers a new function; the returned reference stays valid for the
/// lifetime of the program. Duplicate names raise RegistrationError.
const FunctionDef& fn_register(FunctionDef def);
/// nullptr when no function of that name exists.
const FunctionDef* fn_lookup(std::string_view name);

/// Consults the eval hook once; an inert node results when it declines.
Expr fn_apply(const FunctionDef& def, std::vector<Expr> args);

const FunctionDef& sin_function();
const FunctionDef& cos_function();
const FunctionDef& exp_function();
const FunctionDef& log_function();
const FunctionDef& gamma_function();
/// psi(n, x); psi(x) is psi(0, x).
const FunctionDef& psi_function();
const FunctionDef& zeta_function();
const FunctionDef& factorial_function();

Expr sin(const Expr& x);
Expr cos(const Expr& x);
Expr exp(const Expr& x);
Expr log(const Expr& x);
Expr gamma(const Expr& x);
Expr psi(const Expr& x);
Expr psi(const Expr& n, const Expr& x);
Expr zeta(const Expr& s);
Expr factorial(const Expr& n);

} // namespace symkit
