#include "symkit/numeric_functions.hpp"

#include <algorithm>
#include <cmath>

namespace symkit::numeric {

namespace {

int working_digits(const Number& x, Precision p) {
    const int d = x.float_digits();
    return d ? std::min(d, p.digits()) : p.digits();
}

// Scratch mpfr value with RAII and a fixed binary precision.
class Scratch {
public:
    explicit Scratch(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
    Scratch(const Scratch&) = delete;
    Scratch& operator=(const Scratch&) = delete;
    ~Scratch() { mpfr_clear(v_); }
    mpfr_ptr operator*() { return v_; }

private:
    mpfr_t v_;
};

void load(mpfr_ptr out, const Number& real) {
    if (real.is_zero()) {
        mpfr_set_zero(out, 1);
        return;
    }
    if (real.kind() == Number::Kind::Float) {
        mpfr_set(out, real.as_float().get(), MPFR_RNDN);
    } else if (real.is_integer()) {
        mpfr_set_z(out, real.as_mpz().get_mpz_t(), MPFR_RNDN);
    } else {
        mpfr_set_q(out, real.as_mpq().get_mpq_t(), MPFR_RNDN);
    }
}

Number store(mpfr_srcptr value, int digits) {
    Float out{Precision(digits)};
    mpfr_set(out.get(), value, MPFR_RNDN);
    return Number(std::move(out));
}

Number store_complex(mpfr_srcptr re, mpfr_srcptr im, int digits) {
    return Number::complex(store(re, digits), store(im, digits));
}

mpfr_prec_t work_bits(int digits) { return Precision::bits_for(digits) + 32; }

template <typename F>
Number constant(Precision p, F fn) {
    Scratch v(work_bits(p.digits()));
    fn(*v, MPFR_RNDN);
    return store(*v, p.digits());
}

} // namespace

Number pi(Precision p) { return constant(p, mpfr_const_pi); }

Number euler(Precision p) { return constant(p, mpfr_const_euler); }

Number catalan(Precision p) { return constant(p, mpfr_const_catalan); }

Number sin(const Number& x, Precision p) {
    const int d = working_digits(x, p);
    const mpfr_prec_t w = work_bits(d);
    Scratch a(w), b(w), s(w), c(w), sh(w), ch(w);
    load(*a, x.real_part());
    if (x.is_real()) {
        mpfr_sin(*s, *a, MPFR_RNDN);
        return store(*s, d);
    }
    load(*b, x.imag_part());
    mpfr_sin_cos(*s, *c, *a, MPFR_RNDN);
    mpfr_sinh_cosh(*sh, *ch, *b, MPFR_RNDN);
    mpfr_mul(*s, *s, *ch, MPFR_RNDN);
    mpfr_mul(*c, *c, *sh, MPFR_RNDN);
    return store_complex(*s, *c, d);
}

Number cos(const Number& x, Precision p) {
    const int d = working_digits(x, p);
    const mpfr_prec_t w = work_bits(d);
    Scratch a(w), b(w), s(w), c(w), sh(w), ch(w);
    load(*a, x.real_part());
    if (x.is_real()) {
        mpfr_cos(*c, *a, MPFR_RNDN);
        return store(*c, d);
    }
    load(*b, x.imag_part());
    mpfr_sin_cos(*s, *c, *a, MPFR_RNDN);
    mpfr_sinh_cosh(*sh, *ch, *b, MPFR_RNDN);
    mpfr_mul(*c, *c, *ch, MPFR_RNDN);
    mpfr_mul(*s, *s, *sh, MPFR_RNDN);
    mpfr_neg(*s, *s, MPFR_RNDN);
    return store_complex(*c, *s, d);
}

Number exp(const Number& x, Precision p) {
    const int d = working_digits(x, p);
    const mpfr_prec_t w = work_bits(d);
    Scratch a(w), b(w), m(w), s(w), c(w);
    load(*a, x.real_part());
    mpfr_exp(*m, *a, MPFR_RNDN);
    if (x.is_real()) {
        return store(*m, d);
    }
    load(*b, x.imag_part());
    mpfr_sin_cos(*s, *c, *b, MPFR_RNDN);
    mpfr_mul(*c, *c, *m, MPFR_RNDN);
    mpfr_mul(*s, *s, *m, MPFR_RNDN);
    return store_complex(*c, *s, d);
}

Number log(const Number& x, Precision p) {
    if (x.is_zero()) {
        throw PoleError("log(0)");
    }
    const int d = working_digits(x, p);
    const mpfr_prec_t w = work_bits(d);
    Scratch a(w), b(w), r(w), t(w);
    load(*a, x.real_part());
    load(*b, x.imag_part());
    if (x.is_real() && mpfr_sgn(*a) > 0) {
        mpfr_log(*r, *a, MPFR_RNDN);
        return store(*r, d);
    }
    if (mpfr_zero_p(*a) && mpfr_zero_p(*b)) {
        throw PoleError("log(0)");
    }
    mpfr_hypot(*r, *a, *b, MPFR_RNDN);
    mpfr_log(*r, *r, MPFR_RNDN);
    mpfr_atan2(*t, *b, *a, MPFR_RNDN);
    return store_complex(*r, *t, d);
}

namespace {

void require_real(const Number& x, const char* name) {
    if (!x.is_real()) {
        throw DomainError(std::string(name) + " is only evaluated for real arguments");
    }
}

bool is_nonpositive_integer_value(mpfr_srcptr x) { return mpfr_integer_p(x) && mpfr_sgn(x) <= 0; }

// Gamma at x (x not a pole), computed at binary precision w.
void gamma_mpfr(mpfr_ptr out, mpfr_srcptr x, int digits, mpfr_prec_t w) {
    if (mpfr_cmp_d(x, 0.5) < 0) {
        // Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
        Scratch one_minus(w), g(w), s(w), pi_v(w);
        mpfr_ui_sub(*one_minus, 1, x, MPFR_RNDN);
        gamma_mpfr(*g, *one_minus, digits, w);
        mpfr_const_pi(*pi_v, MPFR_RNDN);
        mpfr_mul(*s, *pi_v, x, MPFR_RNDN);
        mpfr_sin(*s, *s, MPFR_RNDN);
        mpfr_mul(*g, *g, *s, MPFR_RNDN);
        mpfr_div(out, *pi_v, *g, MPFR_RNDN);
        return;
    }
    const double x0 = std::max(10.0, 0.5 * digits + 10.0);
    const double xd = mpfr_get_d(x, MPFR_RNDN);
    const long shift = xd < x0 ? static_cast<long>(std::ceil(x0 - xd)) : 0;
    Scratch z(w), prod(w), t(w), sum(w), term(w), zpow(w), z2(w), eps(w);
    mpfr_set(*z, x, MPFR_RNDN);
    mpfr_set_ui(*prod, 1, MPFR_RNDN);
    for (long i = 0; i < shift; ++i) {
        mpfr_mul(*prod, *prod, *z, MPFR_RNDN);
        mpfr_add_ui(*z, *z, 1, MPFR_RNDN);
    }
    // ln Gamma(z) = (z - 1/2) ln z - z + ln(2 pi)/2 + sum_k B_2k / (2k (2k-1) z^(2k-1))
    mpfr_log(*t, *z, MPFR_RNDN);
    mpfr_sub_d(*sum, *z, 0.5, MPFR_RNDN);
    mpfr_mul(*sum, *sum, *t, MPFR_RNDN);
    mpfr_sub(*sum, *sum, *z, MPFR_RNDN);
    mpfr_const_pi(*t, MPFR_RNDN);
    mpfr_mul_ui(*t, *t, 2, MPFR_RNDN);
    mpfr_log(*t, *t, MPFR_RNDN);
    mpfr_div_ui(*t, *t, 2, MPFR_RNDN);
    mpfr_add(*sum, *sum, *t, MPFR_RNDN);
    mpfr_set(*zpow, *z, MPFR_RNDN);
    mpfr_mul(*z2, *z, *z, MPFR_RNDN);
    mpfr_set_ui_2exp(*eps, 1, -w, MPFR_RNDN);
    for (unsigned long k = 1; k < 4UL * static_cast<unsigned long>(digits) + 20; ++k) {
        const mpq_class b = bernoulli(2 * k).as_mpq();
        mpfr_set_q(*term, b.get_mpq_t(), MPFR_RNDN);
        mpfr_div_ui(*term, *term, 2 * k * (2 * k - 1), MPFR_RNDN);
        mpfr_div(*term, *term, *zpow, MPFR_RNDN);
        mpfr_add(*sum, *sum, *term, MPFR_RNDN);
        mpfr_abs(*term, *term, MPFR_RNDN);
        if (mpfr_cmp(*term, *eps) < 0) {
            break;
        }
        mpfr_mul(*zpow, *zpow, *z2, MPFR_RNDN);
    }
    mpfr_exp(*sum, *sum, MPFR_RNDN);
    mpfr_div(out, *sum, *prod, MPFR_RNDN);
}

// zeta(s) for real s > 1/2, s != 1, by Euler-Maclaurin.
void zeta_em(mpfr_ptr out, mpfr_srcptr s, int digits, mpfr_prec_t w) {
    const double sd = mpfr_get_d(s, MPFR_RNDN);
    const unsigned long n_cut = static_cast<unsigned long>(std::max(10.0, digits + std::fabs(sd)));
    Scratch sum(w), t(w), nn(w), neg_s(w), rising(w), npow(w), term(w), eps(w), fact(w);
    mpfr_neg(*neg_s, s, MPFR_RNDN);
    mpfr_set_zero(*sum, 1);
    for (unsigned long n = 1; n < n_cut; ++n) {
        mpfr_set_ui(*nn, n, MPFR_RNDN);
        mpfr_pow(*t, *nn, *neg_s, MPFR_RNDN);
        mpfr_add(*sum, *sum, *t, MPFR_RNDN);
    }
    mpfr_set_ui(*nn, n_cut, MPFR_RNDN);
    // N^(1-s)/(s-1)
    mpfr_pow(*npow, *nn, *neg_s, MPFR_RNDN); // N^-s
    mpfr_mul(*t, *npow, *nn, MPFR_RNDN);
    mpfr_sub_ui(*term, s, 1, MPFR_RNDN);
    mpfr_div(*t, *t, *term, MPFR_RNDN);
    mpfr_add(*sum, *sum, *t, MPFR_RNDN);
    // N^-s / 2
    mpfr_div_ui(*t, *npow, 2, MPFR_RNDN);
    mpfr_add(*sum, *sum, *t, MPFR_RNDN);
    // sum_k B_2k/(2k)! s(s+1)...(s+2k-2) N^(-s-2k+1)
    mpfr_set(*rising, s, MPFR_RNDN);   // s (s+1) ... (s+2k-2)
    mpfr_div(*npow, *npow, *nn, MPFR_RNDN); // N^(-s-1)
    mpfr_set_ui(*fact, 2, MPFR_RNDN);  // (2k)!
    mpfr_set_ui_2exp(*eps, 1, -w, MPFR_RNDN);
    Scratch n2(w);
    mpfr_mul(*n2, *nn, *nn, MPFR_RNDN);
    for (unsigned long k = 1; k < 4UL * static_cast<unsigned long>(digits) + 40; ++k) {
        const mpq_class b = bernoulli(2 * k).as_mpq();
        mpfr_set_q(*term, b.get_mpq_t(), MPFR_RNDN);
        mpfr_div(*term, *term, *fact, MPFR_RNDN);
        mpfr_mul(*term, *term, *rising, MPFR_RNDN);
        mpfr_mul(*term, *term, *npow, MPFR_RNDN);
        mpfr_add(*sum, *sum, *term, MPFR_RNDN);
        mpfr_abs(*term, *term, MPFR_RNDN);
        if (mpfr_cmp(*term, *eps) < 0 && k > 1) {
            break;
        }
        // advance to k+1
        mpfr_add_ui(*t, s, 2 * k - 1, MPFR_RNDN);
        mpfr_mul(*rising, *rising, *t, MPFR_RNDN);
        mpfr_add_ui(*t, s, 2 * k, MPFR_RNDN);
        mpfr_mul(*rising, *rising, *t, MPFR_RNDN);
        mpfr_mul_ui(*fact, *fact, (2 * k + 1) * (2 * k + 2), MPFR_RNDN);
        mpfr_div(*npow, *npow, *n2, MPFR_RNDN);
    }
    mpfr_set(out, *sum, MPFR_RNDN);
}

} // namespace

Number gamma(const Number& x, Precision p) {
    require_real(x, "gamma");
    const int d = working_digits(x, p);
    const mpfr_prec_t w = work_bits(d);
    Scratch a(w), r(w);
    load(*a, x);
    if (is_nonpositive_integer_value(*a)) {
        throw PoleError("gamma has a pole at " + x.to_string());
    }
    gamma_mpfr(*r, *a, d, w);
    return store(*r, d);
}

Number zeta(const Number& s, Precision p) {
    require_real(s, "zeta");
    const int d = working_digits(s, p);
    const mpfr_prec_t w = work_bits(d);
    Scratch a(w), r(w);
    load(*a, s);
    if (mpfr_cmp_ui(*a, 1) == 0) {
        throw PoleError("zeta has a pole at 1");
    }
    if (mpfr_zero_p(*a)) {
        mpfr_set_d(*r, -0.5, MPFR_RNDN);
        return store(*r, d);
    }
    if (mpfr_cmp_d(*a, 0.5) >= 0) {
        zeta_em(*r, *a, d, w);
        return store(*r, d);
    }
    if (mpfr_integer_p(*a) && mpfr_sgn(*a) < 0 && mpfr_fits_slong_p(*a, MPFR_RNDN)) {
        // zeta(-n) = -B_(n+1)/(n+1); vanishes at negative even integers
        const long n = -mpfr_get_si(*a, MPFR_RNDN);
        const Number v = -bernoulli(static_cast<unsigned long>(n + 1)) / Number(n + 1);
        mpfr_set_q(*r, v.as_mpq().get_mpq_t(), MPFR_RNDN);
        return store(*r, d);
    }
    // zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)
    const mpfr_prec_t w2 = w + 32;
    Scratch one_minus(w2), z(w2), g(w2), t(w2), pi_v(w2);
    mpfr_ui_sub(*one_minus, 1, *a, MPFR_RNDN);
    zeta_em(*z, *one_minus, d + 10, w2);
    gamma_mpfr(*g, *one_minus, d + 10, w2);
    mpfr_mul(*z, *z, *g, MPFR_RNDN);
    mpfr_const_pi(*pi_v, MPFR_RNDN);
    mpfr_mul(*t, *pi_v, *a, MPFR_RNDN);
    mpfr_div_ui(*t, *t, 2, MPFR_RNDN);
    mpfr_sin(*t, *t, MPFR_RNDN);
    mpfr_mul(*z, *z, *t, MPFR_RNDN);
    mpfr_sub_ui(*t, *a, 1, MPFR_RNDN);
    mpfr_pow(*t, *pi_v, *t, MPFR_RNDN);
    mpfr_mul(*z, *z, *t, MPFR_RNDN);
    mpfr_ui_pow(*t, 2, *a, MPFR_RNDN);
    mpfr_mul(*z, *z, *t, MPFR_RNDN);
    return store(*z, d);
}

} // namespace symkit::numeric
