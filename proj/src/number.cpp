#include "symkit/number.hpp"

#include "hash_mix.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <mutex>
#include <vector>

namespace symkit {

// ---------------------------------------------------------------------------
// Precision / Float

Precision::Precision(int digits) : digits_(digits) {
    if (digits < 2) {
        throw DomainError("precision must be at least 2 decimal digits");
    }
}

mpfr_prec_t Precision::bits_for(int digits) noexcept {
    // log2(10) = 3.3219..., plus guard bits so that printing at `digits`
    // significant digits is not disturbed by the final binary rounding.
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 8;
}

Float::Float(Precision p) : digits_(p.digits()) {
    mpfr_init2(value_, p.bits());
    mpfr_set_zero(value_, 1);
}

Float::Float(int digits, mpfr_prec_t bits) : digits_(digits) {
    mpfr_init2(value_, bits);
    mpfr_set_zero(value_, 1);
}

Float::Float(const Float& other) : digits_(other.digits_) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Float::Float(Float&& other) noexcept : digits_(other.digits_) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
}

Float& Float::operator=(const Float& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
        digits_ = other.digits_;
    }
    return *this;
}

Float& Float::operator=(Float&& other) noexcept {
    mpfr_swap(value_, other.value_);
    std::swap(digits_, other.digits_);
    return *this;
}

Float::~Float() { mpfr_clear(value_); }

// ---------------------------------------------------------------------------
// Real helpers

using Real = std::variant<mpz_class, mpq_class, Float>;

namespace {

constexpr int kExactDigits = INT_MAX;

int real_digits(const Real& r) {
    if (const auto* f = std::get_if<Float>(&r)) {
        return f->digits();
    }
    return kExactDigits;
}

Real canonical(mpq_class q) {
    q.canonicalize();
    if (q.get_den() == 1) {
        return Real(mpz_class(q.get_num()));
    }
    return Real(std::move(q));
}

mpq_class as_q(const Real& r) {
    if (const auto* z = std::get_if<mpz_class>(&r)) {
        return mpq_class(*z);
    }
    return std::get<mpq_class>(r);
}

void set_mpfr(mpfr_ptr out, const Real& r) {
    std::visit(
        [out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, mpz_class>) {
                mpfr_set_z(out, v.get_mpz_t(), MPFR_RNDN);
            } else if constexpr (std::is_same_v<T, mpq_class>) {
                mpfr_set_q(out, v.get_mpq_t(), MPFR_RNDN);
            } else {
                mpfr_set(out, v.get(), MPFR_RNDN);
            }
        },
        r);
}

Float to_float_real(const Real& r, int digits) {
    Float out{Precision(digits)};
    set_mpfr(out.get(), r);
    return out;
}

/// Operand promoted to mpfr with enough bits that exact inputs do not lose
/// accuracy before the operation rounds to the result precision.
Float promote(const Real& r, int digits) {
    if (const auto* f = std::get_if<Float>(&r)) {
        return *f;
    }
    Float out(digits, Precision::bits_for(digits) + 64);
    set_mpfr(out.get(), r);
    return out;
}

bool real_is_zero(const Real& r) {
    if (const auto* z = std::get_if<mpz_class>(&r)) {
        return sgn(*z) == 0;
    }
    if (const auto* f = std::get_if<Float>(&r)) {
        return mpfr_zero_p(f->get()) != 0;
    }
    return false;
}

int real_sign(const Real& r) {
    return std::visit(
        [](const auto& v) -> int {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Float>) {
                return mpfr_sgn(v.get());
            } else {
                return sgn(v);
            }
        },
        r);
}

int real_compare(const Real& a, const Real& b) {
    const auto* fa = std::get_if<Float>(&a);
    const auto* fb = std::get_if<Float>(&b);
    int c = 0;
    if (fa && fb) {
        c = mpfr_cmp(fa->get(), fb->get());
    } else if (fa) {
        if (const auto* z = std::get_if<mpz_class>(&b)) {
            c = mpfr_cmp_z(fa->get(), z->get_mpz_t());
        } else {
            c = mpfr_cmp_q(fa->get(), std::get<mpq_class>(b).get_mpq_t());
        }
    } else if (fb) {
        return -real_compare(b, a);
    } else {
        const auto* za = std::get_if<mpz_class>(&a);
        const auto* zb = std::get_if<mpz_class>(&b);
        if (za && zb) {
            c = cmp(*za, *zb);
        } else {
            c = cmp(as_q(a), as_q(b));
        }
    }
    return (c > 0) - (c < 0);
}

enum class Op { Add, Sub, Mul, Div };

Real real_arith(Op op, const Real& a, const Real& b) {
    const bool exact = !std::holds_alternative<Float>(a) && !std::holds_alternative<Float>(b);
    if (exact) {
        const auto* za = std::get_if<mpz_class>(&a);
        const auto* zb = std::get_if<mpz_class>(&b);
        if (za && zb && op != Op::Div) {
            switch (op) {
            case Op::Add: return Real(mpz_class(*za + *zb));
            case Op::Sub: return Real(mpz_class(*za - *zb));
            case Op::Mul: return Real(mpz_class(*za * *zb));
            default: break;
            }
        }
        if (op == Op::Div && real_is_zero(b)) {
            throw DivisionByZero();
        }
        mpq_class qa = as_q(a);
        mpq_class qb = as_q(b);
        mpq_class r;
        switch (op) {
        case Op::Add: r = qa + qb; break;
        case Op::Sub: r = qa - qb; break;
        case Op::Mul: r = qa * qb; break;
        case Op::Div: r = qa / qb; break;
        }
        return canonical(std::move(r));
    }
    const int digits = std::min(real_digits(a), real_digits(b));
    if (op == Op::Div && !std::holds_alternative<Float>(b) && real_is_zero(b)) {
        throw DivisionByZero();
    }
    Float fa = promote(a, digits);
    Float fb = promote(b, digits);
    Float out{Precision(digits)};
    switch (op) {
    case Op::Add: mpfr_add(out.get(), fa.get(), fb.get(), MPFR_RNDN); break;
    case Op::Sub: mpfr_sub(out.get(), fa.get(), fb.get(), MPFR_RNDN); break;
    case Op::Mul: mpfr_mul(out.get(), fa.get(), fb.get(), MPFR_RNDN); break;
    case Op::Div:
        if (mpfr_zero_p(fb.get())) {
            throw DivisionByZero();
        }
        mpfr_div(out.get(), fa.get(), fb.get(), MPFR_RNDN);
        break;
    }
    return Real(std::move(out));
}

Real real_neg(const Real& a) {
    return std::visit(
        [](const auto& v) -> Real {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Float>) {
                Float out(v);
                mpfr_neg(out.get(), v.get(), MPFR_RNDN);
                return Real(std::move(out));
            } else {
                return Real(T(-v));
            }
        },
        a);
}

const Real& exact_zero() {
    static const Real zero{mpz_class(0)};
    return zero;
}

std::uint64_t hash_mpz(mpz_srcptr z) {
    std::uint64_t h = detail::mix(0x2545F4914F6CDD1DULL, static_cast<std::uint64_t>(mpz_sgn(z) + 1));
    const std::size_t n = mpz_size(z);
    for (std::size_t i = 0; i < n; ++i) {
        h = detail::mix(h, static_cast<std::uint64_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))));
    }
    return h;
}

std::uint64_t hash_real(const Real& r) {
    return std::visit(
        [](const auto& v) -> std::uint64_t {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, mpz_class>) {
                return hash_mpz(v.get_mpz_t());
            } else if constexpr (std::is_same_v<T, mpq_class>) {
                return detail::mix(hash_mpz(v.get_num_mpz_t()), hash_mpz(v.get_den_mpz_t()));
            } else {
                mpfr_srcptr x = v.get();
                std::uint64_t h = detail::mix(0x94D049BB133111EBULL, static_cast<std::uint64_t>(v.digits()));
                if (!mpfr_regular_p(x)) {
                    return detail::mix(h, static_cast<std::uint64_t>(mpfr_sgn(x) + 7));
                }
                h = detail::mix(h, static_cast<std::uint64_t>(mpfr_signbit(x) ? 1 : 2));
                h = detail::mix(h, static_cast<std::uint64_t>(mpfr_get_exp(x)));
                const std::size_t limbs =
                    static_cast<std::size_t>((mpfr_get_prec(x) + mp_bits_per_limb - 1) / mp_bits_per_limb);
                for (std::size_t i = 0; i < limbs; ++i) {
                    h = detail::mix(h, static_cast<std::uint64_t>(x->_mpfr_d[i]));
                }
                return h;
            }
        },
        r);
}

// Digit string and decimal exponent such that |x| = 0.DIGITS * 10^exp.
std::pair<std::string, long> decimal_digits(mpfr_srcptr x, int digits) {
    mpfr_exp_t exp = 0;
    char* raw = mpfr_get_str(nullptr, &exp, 10, static_cast<std::size_t>(digits), x, MPFR_RNDN);
    std::string s(raw);
    mpfr_free_str(raw);
    if (!s.empty() && s[0] == '-') {
        s.erase(0, 1);
    }
    return {s, static_cast<long>(exp)};
}

std::string layout_decimal(bool negative, std::string digits, long exp, bool strip, int max_positional) {
    if (strip) {
        while (digits.size() > 1 && digits.back() == '0') {
            digits.pop_back();
        }
    }
    std::string out = negative ? "-" : "";
    const long len = static_cast<long>(digits.size());
    if (exp > -4 && exp <= max_positional) {
        if (exp <= 0) {
            out += "0.";
            out.append(static_cast<std::size_t>(-exp), '0');
            out += digits;
        } else if (exp >= len) {
            out += digits;
            out.append(static_cast<std::size_t>(exp - len), '0');
            out += ".0";
        } else {
            out += digits.substr(0, static_cast<std::size_t>(exp));
            out += ".";
            out += digits.substr(static_cast<std::size_t>(exp));
        }
        return out;
    }
    out += digits.substr(0, 1);
    out += ".";
    out += len > 1 ? digits.substr(1) : std::string("0");
    out += "E" + std::to_string(exp - 1);
    return out;
}

std::string float_to_string(const Float& f) {
    mpfr_srcptr x = f.get();
    if (mpfr_nan_p(x)) {
        return "nan";
    }
    if (mpfr_inf_p(x)) {
        return mpfr_signbit(x) ? "-inf" : "inf";
    }
    if (mpfr_zero_p(x)) {
        return "0.0";
    }
    const int digits = f.digits();
    std::string chosen;
    long exp = 0;
    if (mpfr_get_prec(x) >= Precision::bits_for(digits)) {
        std::tie(chosen, exp) = decimal_digits(x, digits);
    } else {
        // Fewer bits than the nominal digit count (e.g. a value built from a
        // double): shortest decimal that reads back to the same binary value.
        Float probe(digits, mpfr_get_prec(x));
        for (int d = 1; d <= digits; ++d) {
            std::tie(chosen, exp) = decimal_digits(x, d);
            std::string text = "0." + chosen + "e" + std::to_string(exp);
            mpfr_set_str(probe.get(), text.c_str(), 10, MPFR_RNDN);
            mpfr_abs(probe.get(), probe.get(), MPFR_RNDN);
            mpfr_t absx;
            mpfr_init2(absx, mpfr_get_prec(x));
            mpfr_abs(absx, x, MPFR_RNDN);
            const bool same = mpfr_equal_p(probe.get(), absx) != 0;
            mpfr_clear(absx);
            if (same) {
                break;
            }
        }
    }
    return layout_decimal(mpfr_signbit(x) != 0, chosen, exp, true, std::max(digits, 21));
}

std::string real_to_string(const Real& r) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Float>) {
                return float_to_string(v);
            } else {
                return v.get_str();
            }
        },
        r);
}

std::string real_to_string_fixed(const Real& r, int significant) {
    const int digits = std::max(significant, real_digits(r) == kExactDigits ? significant : real_digits(r));
    Float f = to_float_real(r, std::max(digits, 2));
    if (mpfr_zero_p(f.get())) {
        return "0." + std::string(static_cast<std::size_t>(significant - 1), '0');
    }
    auto [s, exp] = decimal_digits(f.get(), significant);
    return layout_decimal(mpfr_signbit(f.get()) != 0, s, exp, false, std::max(significant, 21));
}

Float float_from_mpfr(mpfr_srcptr x, int digits) {
    Float out{Precision(digits)};
    mpfr_set(out.get(), x, MPFR_RNDN);
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Number

Number::Number() : re_(mpz_class(0)) {}

Number::Number(mpz_class value) : re_(std::move(value)) {}

Number::Number(const mpq_class& value) : re_(canonical(value)) {}

Number::Number(Float value) : re_(std::move(value)) {}

Number::Number(Real re, std::shared_ptr<const Real> im) : re_(std::move(re)), im_(std::move(im)) {}

Number Number::from_parts(Real re, Real im) {
    if (real_is_zero(im)) {
        return Number(std::move(re), nullptr);
    }
    return Number(std::move(re), std::make_shared<const Real>(std::move(im)));
}

Number Number::make(const mpz_class& numerator, const mpz_class& denominator) {
    if (sgn(denominator) == 0) {
        throw DivisionByZero();
    }
    return Number(mpq_class(numerator, denominator));
}

Number Number::from_double(double value) {
    // Carries the double's 53-bit mantissa; prints as the shortest decimal
    // that reads back to the same double.
    Float f(17, 53);
    mpfr_set_d(f.get(), value, MPFR_RNDN);
    return Number(std::move(f));
}

Number Number::from_string(std::string_view text, Precision p) {
    std::size_t i = 0;
    const std::size_t n = text.size();
    if (i < n && (text[i] == '+' || text[i] == '-')) {
        ++i;
    }
    std::size_t int_digits = 0;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
        ++int_digits;
    }
    bool inexact = false;
    std::size_t frac_digits = 0;
    if (i < n && text[i] == '.') {
        inexact = true;
        ++i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
            ++frac_digits;
        }
    }
    if (int_digits + frac_digits == 0) {
        throw DomainError("malformed number '" + std::string(text) + "'");
    }
    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        inexact = true;
        ++i;
        if (i < n && (text[i] == '+' || text[i] == '-')) {
            ++i;
        }
        std::size_t exp_digits = 0;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
            ++exp_digits;
        }
        if (exp_digits == 0) {
            throw DomainError("malformed exponent in '" + std::string(text) + "'");
        }
    }
    if (i != n) {
        throw DomainError("malformed number '" + std::string(text) + "'");
    }
    std::string owned(text);
    if (!inexact) {
        if (owned[0] == '+') {
            owned.erase(0, 1);
        }
        return Number(mpz_class(owned, 10));
    }
    Float f(p);
    mpfr_set_str(f.get(), owned.c_str(), 10, MPFR_RNDN);
    return Number(std::move(f));
}

Number Number::complex(const Number& re, const Number& im) {
    if (!re.is_real() || !im.is_real()) {
        throw DomainError("complex parts must be real");
    }
    return from_parts(re.re_, im.re_);
}

Number Number::imaginary_unit() { return complex(Number(0), Number(1)); }

Number::Kind Number::kind() const noexcept {
    if (im_) {
        return Kind::Complex;
    }
    switch (re_.index()) {
    case 0: return Kind::Integer;
    case 1: return Kind::Rational;
    default: return Kind::Float;
    }
}

bool Number::is_exact() const noexcept {
    return !std::holds_alternative<Float>(re_) && (!im_ || !std::holds_alternative<Float>(*im_));
}

bool Number::is_rational() const noexcept { return !im_ && !std::holds_alternative<Float>(re_); }

bool Number::is_zero() const noexcept { return !im_ && real_is_zero(re_); }

bool Number::is_one() const noexcept {
    const auto* z = std::get_if<mpz_class>(&re_);
    return !im_ && z && *z == 1;
}

bool Number::is_minus_one() const noexcept {
    const auto* z = std::get_if<mpz_class>(&re_);
    return !im_ && z && *z == -1;
}

int Number::sign() const {
    if (im_) {
        throw DomainError("sign of a complex number");
    }
    return real_sign(re_);
}

bool Number::is_positive() const { return is_real() && real_sign(re_) > 0; }

bool Number::is_negative() const { return is_real() && real_sign(re_) < 0; }

bool Number::is_positive_integer() const { return is_integer() && sgn(as_mpz()) > 0; }

bool Number::is_nonnegative_integer() const { return is_integer() && sgn(as_mpz()) >= 0; }

bool Number::is_even() const { return is_integer() && mpz_even_p(as_mpz().get_mpz_t()); }

int Number::float_digits() const noexcept {
    int d = real_digits(re_);
    if (im_) {
        d = std::min(d, real_digits(*im_));
    }
    return d == kExactDigits ? 0 : d;
}

const mpz_class& Number::as_mpz() const {
    const auto* z = std::get_if<mpz_class>(&re_);
    if (!z || im_) {
        throw DomainError("not an integer: " + to_string());
    }
    return *z;
}

mpq_class Number::as_mpq() const {
    if (!is_rational()) {
        throw DomainError("not a rational: " + to_string());
    }
    return as_q(re_);
}

const Float& Number::as_float() const {
    const auto* f = std::get_if<Float>(&re_);
    if (!f || im_) {
        throw DomainError("not a real float: " + to_string());
    }
    return *f;
}

mpz_class Number::numerator() const { return as_mpq().get_num(); }

mpz_class Number::denominator() const { return as_mpq().get_den(); }

bool Number::fits_long() const { return is_integer() && as_mpz().fits_slong_p(); }

long Number::to_long() const {
    if (!fits_long()) {
        throw DomainError("integer out of machine range: " + to_string());
    }
    return as_mpz().get_si();
}

double Number::to_double() const {
    if (im_) {
        throw DomainError("complex number has no double value");
    }
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Float>) {
                return mpfr_get_d(v.get(), MPFR_RNDN);
            } else {
                return v.get_d();
            }
        },
        re_);
}

Number Number::real_part() const { return Number(re_, nullptr); }

Number Number::imag_part() const { return im_ ? Number(*im_, nullptr) : Number(0); }

Number Number::abs() const {
    if (!im_) {
        return real_sign(re_) < 0 ? -*this : *this;
    }
    const int d = float_digits() ? float_digits() : Precision::default_digits;
    Number sq = real_part() * real_part() + imag_part() * imag_part();
    Float f = to_float_real(sq.re_, d);
    mpfr_sqrt(f.get(), f.get(), MPFR_RNDN);
    return Number(std::move(f));
}

Number Number::inverse() const { return Number(1) / *this; }

Number Number::operator-() const {
    if (!im_) {
        return Number(real_neg(re_), nullptr);
    }
    return from_parts(real_neg(re_), real_neg(*im_));
}

Number operator+(const Number& a, const Number& b) {
    if (!a.im_ && !b.im_) {
        return Number(real_arith(Op::Add, a.re_, b.re_), nullptr);
    }
    const Real& ai = a.im_ ? *a.im_ : exact_zero();
    const Real& bi = b.im_ ? *b.im_ : exact_zero();
    return Number::from_parts(real_arith(Op::Add, a.re_, b.re_), real_arith(Op::Add, ai, bi));
}

Number operator-(const Number& a, const Number& b) {
    if (!a.im_ && !b.im_) {
        return Number(real_arith(Op::Sub, a.re_, b.re_), nullptr);
    }
    const Real& ai = a.im_ ? *a.im_ : exact_zero();
    const Real& bi = b.im_ ? *b.im_ : exact_zero();
    return Number::from_parts(real_arith(Op::Sub, a.re_, b.re_), real_arith(Op::Sub, ai, bi));
}

Number operator*(const Number& a, const Number& b) {
    if (!a.im_ && !b.im_) {
        return Number(real_arith(Op::Mul, a.re_, b.re_), nullptr);
    }
    const Real& ar = a.re_;
    const Real& br = b.re_;
    const Real& ai = a.im_ ? *a.im_ : exact_zero();
    const Real& bi = b.im_ ? *b.im_ : exact_zero();
    Real re = real_arith(Op::Sub, real_arith(Op::Mul, ar, br), real_arith(Op::Mul, ai, bi));
    Real im = real_arith(Op::Add, real_arith(Op::Mul, ar, bi), real_arith(Op::Mul, ai, br));
    return Number::from_parts(std::move(re), std::move(im));
}

Number operator/(const Number& a, const Number& b) {
    if (!a.im_ && !b.im_) {
        return Number(real_arith(Op::Div, a.re_, b.re_), nullptr);
    }
    if (b.is_zero()) {
        throw DivisionByZero();
    }
    const Real& ar = a.re_;
    const Real& br = b.re_;
    const Real& ai = a.im_ ? *a.im_ : exact_zero();
    const Real& bi = b.im_ ? *b.im_ : exact_zero();
    Real den = real_arith(Op::Add, real_arith(Op::Mul, br, br), real_arith(Op::Mul, bi, bi));
    Real re = real_arith(Op::Add, real_arith(Op::Mul, ar, br), real_arith(Op::Mul, ai, bi));
    Real im = real_arith(Op::Sub, real_arith(Op::Mul, ai, br), real_arith(Op::Mul, ar, bi));
    return Number::from_parts(real_arith(Op::Div, re, den), real_arith(Op::Div, im, den));
}

bool operator==(const Number& a, const Number& b) { return Number::compare(a, b) == 0; }

namespace {

int variant_rank_compare(const Real& a, const Real& b) {
    if (a.index() != b.index()) {
        return a.index() < b.index() ? -1 : 1;
    }
    if (const auto* fa = std::get_if<Float>(&a)) {
        const auto& fb = std::get<Float>(b);
        if (fa->digits() != fb.digits()) {
            return fa->digits() < fb.digits() ? -1 : 1;
        }
        if (fa->bits() != fb.bits()) {
            return fa->bits() < fb.bits() ? -1 : 1;
        }
    }
    return 0;
}

} // namespace

int Number::compare(const Number& a, const Number& b) {
    if (int c = real_compare(a.re_, b.re_)) {
        return c;
    }
    const Real& ai = a.im_ ? *a.im_ : exact_zero();
    const Real& bi = b.im_ ? *b.im_ : exact_zero();
    if (int c = real_compare(ai, bi)) {
        return c;
    }
    if (bool(a.im_) != bool(b.im_)) {
        return a.im_ ? 1 : -1;
    }
    if (int c = variant_rank_compare(a.re_, b.re_)) {
        return c;
    }
    return variant_rank_compare(ai, bi);
}

int Number::compare_value(const Number& a, const Number& b) {
    if (a.im_ || b.im_) {
        throw DomainError("complex numbers are not ordered");
    }
    return real_compare(a.re_, b.re_);
}

std::uint64_t Number::hash() const {
    std::uint64_t h = hash_real(re_);
    if (im_) {
        h = detail::mix(h ^ 0x1234567ULL, hash_real(*im_));
    }
    return h;
}

std::string Number::to_string() const {
    if (!im_) {
        return real_to_string(re_);
    }
    std::string out;
    if (!real_is_zero(re_)) {
        out = real_to_string(re_);
    }
    const Real& im = *im_;
    const bool neg = real_sign(im) < 0;
    Real mag = neg ? real_neg(im) : im;
    const auto* z = std::get_if<mpz_class>(&mag);
    std::string coeff = (z && *z == 1) ? std::string() : real_to_string(mag) + "*";
    if (neg) {
        out += "-";
    } else if (!out.empty()) {
        out += "+";
    }
    return out + coeff + "I";
}

std::string Number::to_string(int significant_digits) const {
    if (significant_digits < 1) {
        throw DomainError("significant digits must be positive");
    }
    if (!im_) {
        return real_to_string_fixed(re_, significant_digits);
    }
    std::string im = real_to_string_fixed(*im_, significant_digits);
    std::string re = real_to_string_fixed(re_, significant_digits);
    if (im[0] != '-') {
        im = "+" + im;
    }
    return re + im + "*I";
}

// ---------------------------------------------------------------------------
// Complex float helpers for pow

namespace {

struct ComplexFloat {
    Float re;
    Float im;
};

ComplexFloat complex_parts(const Number& z, int digits) {
    Float re(Precision(digits + 10));
    Float im(Precision(digits + 10));
    Number r = to_float(z.real_part(), Precision(digits + 10));
    Number i = to_float(z.imag_part(), Precision(digits + 10));
    if (!r.is_zero()) {
        mpfr_set(re.get(), r.as_float().get(), MPFR_RNDN);
    }
    if (!i.is_zero()) {
        mpfr_set(im.get(), i.as_float().get(), MPFR_RNDN);
    }
    return {std::move(re), std::move(im)};
}

Number complex_exp_log_pow(const Number& base, const Number& exponent, int digits) {
    // exp(exponent * log(base)) with log(base) = ln|base| + i*arg(base)
    const int work = digits + 10;
    ComplexFloat b = complex_parts(base, digits);
    ComplexFloat e = complex_parts(exponent, digits);
    Float lr(Precision{work}), li(Precision{work});
    mpfr_hypot(lr.get(), b.re.get(), b.im.get(), MPFR_RNDN);
    if (mpfr_zero_p(lr.get())) {
        throw DivisionByZero("zero base raised to a non-real or non-positive power");
    }
    mpfr_log(lr.get(), lr.get(), MPFR_RNDN);
    mpfr_atan2(li.get(), b.im.get(), b.re.get(), MPFR_RNDN);
    // w = e * (lr + i li)
    Float wr(Precision{work}), wi(Precision{work}), t(Precision{work});
    mpfr_mul(wr.get(), e.re.get(), lr.get(), MPFR_RNDN);
    mpfr_mul(t.get(), e.im.get(), li.get(), MPFR_RNDN);
    mpfr_sub(wr.get(), wr.get(), t.get(), MPFR_RNDN);
    mpfr_mul(wi.get(), e.re.get(), li.get(), MPFR_RNDN);
    mpfr_mul(t.get(), e.im.get(), lr.get(), MPFR_RNDN);
    mpfr_add(wi.get(), wi.get(), t.get(), MPFR_RNDN);
    Float mag(Precision{work}), c(Precision{work}), s(Precision{work});
    mpfr_exp(mag.get(), wr.get(), MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), wi.get(), MPFR_RNDN);
    mpfr_mul(c.get(), c.get(), mag.get(), MPFR_RNDN);
    mpfr_mul(s.get(), s.get(), mag.get(), MPFR_RNDN);
    return Number::complex(Number(float_from_mpfr(c.get(), digits)), Number(float_from_mpfr(s.get(), digits)));
}

Number pow_integer(const Number& base, const mpz_class& exponent) {
    if (sgn(exponent) < 0) {
        if (base.is_zero()) {
            throw DivisionByZero("zero raised to a negative power");
        }
        return pow_integer(base.inverse(), mpz_class(-exponent));
    }
    if (base.is_rational()) {
        if (!exponent.fits_ulong_p()) {
            if (base.is_zero() || base.is_one()) {
                return base;
            }
            if (base.is_minus_one()) {
                return mpz_even_p(exponent.get_mpz_t()) ? Number(1) : Number(-1);
            }
            throw DomainError("exponent too large");
        }
        const unsigned long e = exponent.get_ui();
        mpz_class num, den;
        mpq_class q = base.as_mpq();
        mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
        mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
        return Number::make(num, den);
    }
    // Binary exponentiation for floats and complex values.
    Number result(1);
    Number square = base;
    mpz_class e = exponent;
    if (base.float_digits() != 0) {
        result = to_float(Number(1), Precision(base.float_digits()));
    }
    while (sgn(e) > 0) {
        if (mpz_odd_p(e.get_mpz_t())) {
            result *= square;
        }
        e >>= 1;
        if (sgn(e) > 0) {
            square *= square;
        }
    }
    return result;
}

} // namespace

Number pow(const Number& base, const Number& exponent) {
    if (exponent.is_integer()) {
        return pow_integer(base, exponent.as_mpz());
    }
    if (base.is_exact() && exponent.is_exact()) {
        throw DomainError("exact power with non-integer exponent must stay symbolic");
    }
    int digits = std::min(base.float_digits() ? base.float_digits() : INT_MAX,
                          exponent.float_digits() ? exponent.float_digits() : INT_MAX);
    if (digits == INT_MAX) {
        digits = Precision::default_digits;
    }
    if (base.is_real() && exponent.is_real()) {
        if (base.is_zero()) {
            if (exponent.is_positive()) {
                return to_float(Number(0), Precision(digits));
            }
            throw DivisionByZero("zero raised to a non-positive power");
        }
        Float b = promote(base.re_, digits);
        Float e = promote(exponent.re_, digits);
        if (!base.is_negative() || mpfr_integer_p(e.get())) {
            Float out{Precision(digits)};
            mpfr_pow(out.get(), b.get(), e.get(), MPFR_RNDN);
            return Number(std::move(out));
        }
    }
    return complex_exp_log_pow(base, exponent, digits);
}

Number gcd(const Number& a, const Number& b) {
    if (!a.is_integer() || !b.is_integer()) {
        throw DomainError("gcd requires integers");
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.as_mpz().get_mpz_t(), b.as_mpz().get_mpz_t());
    return Number(std::move(g));
}

Number lcm(const Number& a, const Number& b) {
    if (!a.is_integer() || !b.is_integer()) {
        throw DomainError("lcm requires integers");
    }
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.as_mpz().get_mpz_t(), b.as_mpz().get_mpz_t());
    return Number(std::move(l));
}

Number factorial(const Number& n) {
    if (!n.is_nonnegative_integer() || !n.as_mpz().fits_ulong_p()) {
        throw DomainError("factorial requires a nonnegative integer");
    }
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), n.as_mpz().get_ui());
    return Number(std::move(out));
}

Number binomial(long n, long k) {
    if (k < 0) {
        return Number(0);
    }
    mpz_class out;
    mpz_class nn(n);
    mpz_bin_ui(out.get_mpz_t(), nn.get_mpz_t(), static_cast<unsigned long>(k));
    return Number(std::move(out));
}

namespace {

// Akiyama-Tanigawa table kept across calls so the sequence extends
// incrementally.
struct BernoulliMemo {
    std::mutex mutex;
    std::vector<mpq_class> scratch;
    std::vector<Number> values;
};

BernoulliMemo& bernoulli_memo() {
    static BernoulliMemo memo;
    return memo;
}

} // namespace

Number bernoulli(unsigned long n) {
    auto& memo = bernoulli_memo();
    std::lock_guard lock(memo.mutex);
    while (memo.values.size() <= n) {
        const std::size_t m = memo.values.size();
        memo.scratch.emplace_back(1, static_cast<unsigned long>(m + 1));
        memo.scratch.back().canonicalize();
        for (std::size_t j = m; j >= 1; --j) {
            memo.scratch[j - 1] = mpq_class(static_cast<unsigned long>(j)) * (memo.scratch[j - 1] - memo.scratch[j]);
        }
        mpq_class b = memo.scratch[0];
        if (m == 1) {
            b = -b; // the table yields +1/2
        }
        memo.values.emplace_back(b);
    }
    return memo.values[n];
}

Number to_float(const Number& value, Precision p) {
    if (value.is_real()) {
        return Number(to_float_real(value.re_, p.digits()));
    }
    return Number::from_parts(Real(to_float_real(value.re_, p.digits())), Real(to_float_real(*value.im_, p.digits())));
}

std::optional<Number> exact_root(const Number& value, unsigned long q) {
    if (!value.is_rational() || value.is_negative() || q == 0) {
        return std::nullopt;
    }
    if (q == 1) {
        return value;
    }
    mpq_class v = value.as_mpq();
    mpz_class num, den;
    if (mpz_root(num.get_mpz_t(), v.get_num_mpz_t(), q) == 0) {
        return std::nullopt;
    }
    if (mpz_root(den.get_mpz_t(), v.get_den_mpz_t(), q) == 0) {
        return std::nullopt;
    }
    return Number::make(num, den);
}

} // namespace symkit
