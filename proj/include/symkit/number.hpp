#pragma once

#include "symkit/errors.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace symkit {

/// Decimal digit count used for inexact evaluation.
class Precision {
public:
    static constexpr int default_digits = 20;

    constexpr Precision() noexcept = default;
    explicit Precision(int digits);

    int digits() const noexcept { return digits_; }

    /// Binary mantissa size backing this many decimal digits (includes guard bits).
    mpfr_prec_t bits() const noexcept { return bits_for(digits_); }

    static mpfr_prec_t bits_for(int digits) noexcept;

    friend bool operator==(Precision, Precision) = default;

private:
    int digits_ = default_digits;
};

/// Owning wrapper around an MPFR value tagged with its decimal precision.
class Float {
public:
    explicit Float(Precision p);
    /// Custom binary precision; `digits` is what the value prints with.
    Float(int digits, mpfr_prec_t bits);
    Float(const Float& other);
    Float(Float&& other) noexcept;
    Float& operator=(const Float& other);
    Float& operator=(Float&& other) noexcept;
    ~Float();

    int digits() const noexcept { return digits_; }
    mpfr_prec_t bits() const noexcept { return mpfr_get_prec(value_); }
    mpfr_ptr get() noexcept { return value_; }
    mpfr_srcptr get() const noexcept { return value_; }

private:
    mpfr_t value_;
    int digits_;
};

/// Exact or inexact scalar: integer ⊂ rational ⊂ float ⊂ complex.
///
/// Every constructor and operation returns the canonical variant: rationals
/// are coprime with denominator >= 2, a unit denominator collapses to an
/// integer, and a vanishing imaginary part collapses to a real.
class Number {
public:
    enum class Kind : std::uint8_t { Integer, Rational, Float, Complex };

    Number();
    template <std::integral T>
    Number(T value) : re_(to_mpz(value)) {}
    Number(mpz_class value);
    Number(const mpq_class& value);
    Number(Float value);

    /// num_make: reduced fraction. Throws DivisionByZero for a zero denominator.
    static Number make(const mpz_class& numerator, const mpz_class& denominator);
    static Number from_double(double value);
    /// Parses "12", "1.25", "-3e-4", "1.60219E-19". Decimal text becomes a float at `p`.
    static Number from_string(std::string_view text, Precision p = {});
    static Number complex(const Number& re, const Number& im);
    static Number imaginary_unit();

    Kind kind() const noexcept;
    bool is_exact() const noexcept;
    bool is_integer() const noexcept { return kind() == Kind::Integer; }
    /// Exact real (integer or rational).
    bool is_rational() const noexcept;
    bool is_real() const noexcept { return im_ == nullptr; }
    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    bool is_minus_one() const noexcept;
    bool is_positive() const;
    bool is_negative() const;
    bool is_positive_integer() const;
    bool is_nonnegative_integer() const;
    bool is_even() const;
    int sign() const;

    /// Decimal precision of an inexact value (smallest over parts), 0 if exact.
    int float_digits() const noexcept;

    const mpz_class& as_mpz() const;
    mpq_class as_mpq() const;
    const Float& as_float() const;
    mpz_class numerator() const;
    mpz_class denominator() const;
    bool fits_long() const;
    long to_long() const;
    double to_double() const;

    Number real_part() const;
    Number imag_part() const;
    Number abs() const;
    Number inverse() const;

    Number operator-() const;
    friend Number operator+(const Number& a, const Number& b);
    friend Number operator-(const Number& a, const Number& b);
    friend Number operator*(const Number& a, const Number& b);
    friend Number operator/(const Number& a, const Number& b);
    Number& operator+=(const Number& b) { return *this = *this + b; }
    Number& operator-=(const Number& b) { return *this = *this - b; }
    Number& operator*=(const Number& b) { return *this = *this * b; }
    Number& operator/=(const Number& b) { return *this = *this / b; }

    /// Structural identity: same variant, same value, same precision.
    friend bool operator==(const Number& a, const Number& b);

    /// Total order used by expression comparison: real part, imaginary part,
    /// then variant, then precision.
    static int compare(const Number& a, const Number& b);
    /// Numeric order of two reals; throws DomainError for complex operands.
    static int compare_value(const Number& a, const Number& b);

    std::uint64_t hash() const;

    std::string to_string() const;
    /// Fixed number of significant digits, no trailing-zero stripping.
    std::string to_string(int significant_digits) const;

private:
    using Real = std::variant<mpz_class, mpq_class, Float>;

    template <std::integral T>
    static mpz_class to_mpz(T value) {
        if constexpr (std::is_signed_v<T>) {
            return mpz_class(static_cast<long>(value));
        } else {
            return mpz_class(static_cast<unsigned long>(value));
        }
    }

    Number(Real re, std::shared_ptr<const Real> im);
    static Number from_parts(Real re, Real im);

    friend Number pow(const Number& base, const Number& exponent);
    friend Number to_float(const Number& value, Precision p);
    friend class NumberAccess;

    Real re_;
    std::shared_ptr<const Real> im_;
};

/// num_arith(pow). Exact base with exact non-integer exponent is a DomainError.
Number pow(const Number& base, const Number& exponent);

/// Nonnegative gcd of two integers; gcd(0, 0) = 0.
Number gcd(const Number& a, const Number& b);
Number lcm(const Number& a, const Number& b);
Number factorial(const Number& n);
Number binomial(long n, long k);

/// Exact Bernoulli number (B1 = -1/2). Memoized, thread-safe.
Number bernoulli(unsigned long n);

/// Rounds any Number to a float (or complex float) at `p` decimal digits.
Number to_float(const Number& value, Precision p);

/// q-th root of a nonnegative exact rational when it is itself rational.
std::optional<Number> exact_root(const Number& value, unsigned long q);

} // namespace symkit
