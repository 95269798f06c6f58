#pragma once

// Sparse distributed polynomials over the integers, used by the gcd, normal
// and determinant code. Every polynomial in one computation shares the same
// variable vector; index 0 is the most significant variable in lex order.

#include "symkit/expr.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

namespace symkit::detail {

using Exps = std::vector<std::int32_t>;

struct Term {
    Exps e;
    mpz_class c;
};

class Poly {
public:
    Poly() = default;
    explicit Poly(std::size_t nv) : nv_(nv) {}
    static Poly constant(std::size_t nv, const mpz_class& c);
    static Poly variable(std::size_t nv, std::size_t index, std::int32_t power = 1);
    /// Sorts, merges and drops zero terms.
    static Poly from_terms(std::size_t nv, std::vector<Term> terms);

    std::size_t nv() const { return nv_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Value of a constant polynomial.
    mpz_class constant_value() const;
    bool is_one() const { return is_constant() && constant_value() == 1; }

    /// Leading term in lex order.
    const Term& lt() const { return terms_.front(); }
    const mpz_class& lc_int() const { return terms_.front().c; }

    int degree(std::size_t v) const;
    int min_degree(std::size_t v) const;
    bool has_var(std::size_t v) const { return degree(v) > 0; }
    /// Coefficients in powers of v; index k holds the coefficient of v^k.
    std::vector<Poly> coeffs(std::size_t v) const;
    static Poly from_coeffs(std::size_t nv, std::size_t v, const std::vector<Poly>& cs);
    /// Leading coefficient with respect to v.
    Poly lc(std::size_t v) const;

    mpz_class max_norm() const;
    mpz_class int_content() const;
    /// Componentwise minimum exponent over all terms.
    Exps min_exps() const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const mpz_class& k) const;
    Poly div_int(const mpz_class& k) const;
    Poly shifted(const Exps& m) const;
    Poly unshifted(const Exps& m) const;
    Poly pow(unsigned k) const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Substitutes v = value.
    Poly eval(std::size_t v, const mpz_class& value) const;

    std::uint64_t hash() const;

private:
    std::size_t nv_ = 0;
    std::vector<Term> terms_;
};

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<Poly> divide(const Poly& a, const Poly& b);
/// Quotient that must be exact; throws otherwise.
Poly divide_exact(const Poly& a, const Poly& b);
/// lc(b)^(deg a - deg b + 1) * a mod b with respect to v.
Poly prem(const Poly& a, const Poly& b, std::size_t v);

/// Content with respect to v (gcd of the coefficients, positive).
Poly content(const Poly& p, std::size_t v);
/// Sign so that the lex leading coefficient is positive.
Poly unit_normal(const Poly& p);

Poly gcd(const Poly& a, const Poly& b);
std::optional<Poly> heur_gcd(const Poly& a, const Poly& b);
Poly sr_gcd(const Poly& a, const Poly& b);

struct Frac {
    Poly num;
    Poly den;
};

Frac frac_make(Poly num, Poly den);
Frac frac_add(const Frac& a, const Frac& b);
Frac frac_sub(const Frac& a, const Frac& b);
Frac frac_mul(const Frac& a, const Frac& b);
Frac frac_inv(const Frac& a);
Frac frac_div(const Frac& a, const Frac& b);
Frac frac_pow(const Frac& a, long k);

/// Maps an expression onto polynomials. Symbols and constants become
/// variables; in generator mode, function applications, symbolic powers and
/// inexact numbers are replaced by opaque variables as well.
class PolyContext {
public:
    enum class Mode { Strict, Generators };

    explicit PolyContext(Mode mode) : mode_(mode) {}

    /// Registers the variables of e; call for every input before finalize.
    void scan(const Expr& e);
    /// Adds a variable explicitly.
    void add_variable(const Expr& v);
    void finalize();

    std::size_t nv() const { return vars_.size(); }
    const std::vector<Expr>& variables() const { return vars_; }
    std::optional<std::size_t> index_of(const Expr& v) const;

    Frac to_frac(const Expr& e) const;
    /// Polynomial input; rational numeric coefficients are cleared and the
    /// positive denominator returned through `denominator` when given.
    Poly to_poly(const Expr& e, mpz_class* denominator = nullptr) const;
    Expr to_expr(const Poly& p) const;
    Expr to_expr(const Frac& f) const;

private:
    struct Generator {
        Expr var;     // the opaque variable (the generator expression itself)
        long power;   // e is var^power
    };

    std::optional<Generator> generator_of(const Expr& e) const;
    void scan_generator(const Expr& e);
    Generator make_generator(const Expr& e) const;

    Mode mode_;
    bool final_ = false;
    std::vector<Expr> vars_;
    std::unordered_map<Expr, std::size_t, ExprHash> index_;
    mutable std::unordered_map<Expr, Generator, ExprHash> generators_;
};

} // namespace symkit::detail
