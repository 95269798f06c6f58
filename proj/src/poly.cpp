#include "symkit/poly.hpp"

#include "poly_internal.hpp"
#include "symkit/errors.hpp"
#include "symkit/function.hpp"
#include "symkit/ops.hpp"

#include <algorithm>
#include <map>

namespace symkit {

using detail::Frac;
using detail::Poly;
using detail::PolyContext;

namespace {

bool is_opaque(const Expr& e) {
    switch (e.kind()) {
    case Kind::Function:
    case Kind::Power:
    case Kind::Series:
        return true;
    case Kind::Numeric:
        return !e.number().is_rational();
    default:
        return false;
    }
}

/// True when u reads as a negated expression: negative number, negative
/// overall factor, or a sum whose first term has a negative coefficient.
bool negative_form(const Expr& u) {
    switch (u.kind()) {
    case Kind::Numeric:
        return u.number().is_real() && u.number().is_negative();
    case Kind::Mul:
        return u.as<PairSeqNode>().overall.is_real() && u.as<PairSeqNode>().overall.is_negative();
    case Kind::Add: {
        const auto& a = u.as<PairSeqNode>();
        return !a.pairs.empty() && a.pairs.front().key.is_real() && a.pairs.front().key.is_negative();
    }
    default:
        return false;
    }
}

} // namespace

// ---------------------------------------------------------------------------
// PolyContext

namespace detail {

void PolyContext::add_variable(const Expr& v) {
    if (final_) {
        throw Error("internal error: context already finalized");
    }
    if (!index_.count(v)) {
        index_.emplace(v, vars_.size());
        vars_.push_back(v);
    }
}

void PolyContext::finalize() {
    std::sort(vars_.begin(), vars_.end(), ExprLess{});
    index_.clear();
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        index_.emplace(vars_[i], i);
    }
    final_ = true;
}

std::optional<std::size_t> PolyContext::index_of(const Expr& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

PolyContext::Generator PolyContext::make_generator(const Expr& e) const {
    if (e.is_numeric()) {
        return {e, 1};
    }
    if (e.is(Kind::Power)) {
        const auto& p = e.as<PowerNode>();
        const Expr nb = normal(p.base);
        const Expr& x = p.exponent;
        if (x.is_numeric() && x.number().is_rational()) {
            const Number& q = x.number();
            Expr var = build_power(nb, Expr(Number(1) / Number(q.denominator())));
            return {var, q.numerator().get_si()};
        }
        const Expr nx = x.is_numeric() ? x : normal(x);
        if (negative_form(nx)) {
            return {build_power(nb, -nx), -1};
        }
        return {build_power(nb, nx), 1};
    }
    if (e.is(Kind::Function)) {
        const auto& f = e.as<FunctionNode>();
        std::vector<Expr> args;
        args.reserve(f.args.size());
        for (const auto& a : f.args) {
            args.push_back(normal(a));
        }
        if (f.def == &exp_function() && negative_form(args[0])) {
            return {exp(-args[0]), -1};
        }
        return {fn_apply(*f.def, std::move(args)), 1};
    }
    return {e, 1};
}

std::optional<PolyContext::Generator> PolyContext::generator_of(const Expr& e) const {
    auto it = generators_.find(e);
    if (it == generators_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void PolyContext::scan_generator(const Expr& e) {
    if (mode_ == Mode::Strict) {
        throw DomainError("not a polynomial: " + e.to_string());
    }
    if (generators_.count(e)) {
        return;
    }
    Generator g = make_generator(e);
    generators_.emplace(e, g);
    if (is_opaque(g.var)) {
        add_variable(g.var);
    } else {
        scan(g.var);
    }
}

void PolyContext::scan(const Expr& e) {
    switch (e.kind()) {
    case Kind::Numeric:
        if (!e.number().is_rational()) {
            scan_generator(e);
        }
        return;
    case Kind::Symbol:
    case Kind::Constant:
        add_variable(e);
        return;
    case Kind::Add:
    case Kind::Mul: {
        const auto& s = e.as<PairSeqNode>();
        if (!s.overall.is_rational()) {
            scan_generator(Expr(s.overall));
        }
        for (const auto& p : s.pairs) {
            if (e.is(Kind::Add)) {
                if (!p.key.is_rational()) {
                    scan_generator(Expr(p.key));
                }
                scan(p.rest);
            } else if (p.key.is_integer()) {
                scan(p.rest);
            } else {
                scan_generator(build_power(p.rest, Expr(p.key)));
            }
        }
        return;
    }
    case Kind::Power: {
        const auto& p = e.as<PowerNode>();
        if (p.exponent.is_integer()) {
            scan(p.base);
        } else {
            scan_generator(e);
        }
        return;
    }
    case Kind::Function:
    case Kind::Series:
        scan_generator(e);
        return;
    default:
        throw DomainError("not a rational expression: " + e.to_string());
    }
}

Frac PolyContext::to_frac(const Expr& e) const {
    const std::size_t n = nv();
    auto number_frac = [n](const Number& q) -> Frac {
        return {Poly::constant(n, q.numerator()), Poly::constant(n, q.denominator())};
    };
    auto opaque_frac = [&](const Expr& x) -> Frac {
        auto g = generator_of(x);
        if (!g) {
            throw Error("internal error: unscanned generator " + x.to_string());
        }
        Frac base;
        if (auto idx = index_of(g->var); idx && is_opaque(g->var)) {
            base = {Poly::variable(n, *idx), Poly::constant(n, 1)};
        } else {
            base = to_frac(g->var);
        }
        return frac_pow(base, g->power);
    };
    switch (e.kind()) {
    case Kind::Numeric:
        if (e.number().is_rational()) {
            return number_frac(e.number());
        }
        return opaque_frac(e);
    case Kind::Symbol:
    case Kind::Constant:
        return {Poly::variable(n, *index_of(e)), Poly::constant(n, 1)};
    case Kind::Add: {
        const auto& s = e.as<PairSeqNode>();
        // polynomial terms are gathered and merged once
        std::vector<detail::Term> poly_terms;
        mpz_class common_den = 1;
        std::vector<std::pair<Frac, mpz_class>> scaled_terms;
        Frac rest{Poly(n), Poly::constant(n, 1)};
        auto absorb = [&](const Frac& f) {
            if (f.den.is_constant()) {
                const mpz_class d = f.den.constant_value();
                if (d == 1) {
                    for (const auto& t : f.num.terms()) {
                        poly_terms.push_back(t);
                    }
                } else {
                    scaled_terms.emplace_back(f, d);
                    common_den = lcm(common_den, d);
                }
            } else {
                rest = frac_add(rest, f);
            }
        };
        if (s.overall.is_rational()) {
            absorb(number_frac(s.overall));
        } else {
            absorb(opaque_frac(Expr(s.overall)));
        }
        for (const auto& p : s.pairs) {
            Frac k = p.key.is_rational() ? number_frac(p.key) : opaque_frac(Expr(p.key));
            absorb(frac_mul(k, to_frac(p.rest)));
        }
        std::vector<detail::Term> all;
        all.reserve(poly_terms.size());
        for (auto& t : poly_terms) {
            t.c *= common_den;
            all.push_back(std::move(t));
        }
        for (auto& [f, d] : scaled_terms) {
            const mpz_class m = common_den / d;
            for (const auto& t : f.num.terms()) {
                all.push_back({t.e, t.c * m});
            }
        }
        Frac sum = frac_make(Poly::from_terms(n, std::move(all)), Poly::constant(n, common_den));
        return frac_add(sum, rest);
    }
    case Kind::Mul: {
        const auto& s = e.as<PairSeqNode>();
        Frac acc = s.overall.is_rational() ? number_frac(s.overall) : opaque_frac(Expr(s.overall));
        for (const auto& p : s.pairs) {
            if (p.key.is_integer()) {
                acc = frac_mul(acc, frac_pow(to_frac(p.rest), p.key.to_long()));
            } else {
                acc = frac_mul(acc, opaque_frac(build_power(p.rest, Expr(p.key))));
            }
        }
        return acc;
    }
    case Kind::Power: {
        const auto& p = e.as<PowerNode>();
        if (p.exponent.is_integer()) {
            return frac_pow(to_frac(p.base), p.exponent.number().to_long());
        }
        return opaque_frac(e);
    }
    case Kind::Function:
    case Kind::Series:
        return opaque_frac(e);
    default:
        throw DomainError("not a rational expression: " + e.to_string());
    }
}

Poly PolyContext::to_poly(const Expr& e, mpz_class* denominator) const {
    Frac f = to_frac(e);
    if (!f.den.is_constant()) {
        throw DomainError("not a polynomial: " + e.to_string());
    }
    if (denominator) {
        *denominator = f.den.constant_value();
    }
    return f.num;
}

Expr PolyContext::to_expr(const Poly& p) const {
    std::vector<Expr> terms;
    terms.reserve(p.terms().size());
    for (const auto& t : p.terms()) {
        std::vector<Expr> factors;
        factors.push_back(Expr(Number(t.c)));
        for (std::size_t i = 0; i < t.e.size(); ++i) {
            if (t.e[i] != 0) {
                factors.push_back(build_power(vars_[i], Expr(static_cast<long>(t.e[i]))));
            }
        }
        terms.push_back(build_mul(std::move(factors)));
    }
    return build_add(std::move(terms));
}

Expr PolyContext::to_expr(const Frac& f) const {
    if (f.den.is_constant()) {
        const Number d(f.den.constant_value());
        return build_mul({Expr(Number(1) / d), to_expr(f.num)});
    }
    const mpz_class ic = f.den.int_content();
    const Expr num = build_mul({Expr(Number::make(1, ic)), to_expr(f.num)});
    const Expr den = to_expr(f.den.div_int(ic));
    return build_mul({num, build_power(den, Expr(-1))});
}

} // namespace detail

// ---------------------------------------------------------------------------
// Degree and coefficients

namespace {

/// Splits one term of an expanded sum into (exponent of x, coefficient).
std::pair<int, Expr> split_term(const Expr& t, const Expr& x) {
    if (t == x) {
        return {1, Expr(1)};
    }
    if (!has(t, x)) {
        return {0, t};
    }
    auto bad = [&]() -> std::pair<int, Expr> {
        throw DomainError(t.to_string() + " is not polynomial in " + x.to_string());
    };
    if (t.is(Kind::Power)) {
        const auto& p = t.as<PowerNode>();
        if (p.base == x && p.exponent.is_integer() && p.exponent.number().fits_long()) {
            return {static_cast<int>(p.exponent.number().to_long()), Expr(1)};
        }
        return bad();
    }
    if (t.is(Kind::Mul)) {
        const auto& m = t.as<PairSeqNode>();
        int k = 0;
        for (const auto& p : m.pairs) {
            if (p.rest == x) {
                if (!p.key.is_integer()) {
                    return bad();
                }
                k = static_cast<int>(p.key.to_long());
            } else if (has(p.rest, x)) {
                return bad();
            }
        }
        return {k, build_mul({t, build_power(x, Expr(-k))})};
    }
    return bad();
}

void require_symbol(const Expr& x) {
    if (!x.is(Kind::Symbol)) {
        throw DomainError("expected a symbol, got " + x.to_string());
    }
}

/// exponent -> coefficient terms of expand(e)
std::map<int, std::vector<Expr>> split_powers(const Expr& e, const Expr& x) {
    require_symbol(x);
    const Expr ex = expand(e);
    std::map<int, std::vector<Expr>> out;
    if (ex.is(Kind::Add)) {
        const auto& a = ex.as<PairSeqNode>();
        if (!a.overall.is_zero()) {
            out[0].push_back(Expr(a.overall));
        }
        for (const auto& p : a.pairs) {
            auto [k, c] = split_term(p.rest, x);
            out[k].push_back(build_mul({Expr(p.key), c}));
        }
    } else if (!ex.is_zero()) {
        auto [k, c] = split_term(ex, x);
        out[k].push_back(c);
    }
    return out;
}

} // namespace

int degree(const Expr& e, const Expr& x) {
    auto parts = split_powers(e, x);
    return parts.empty() ? 0 : parts.rbegin()->first;
}

int ldegree(const Expr& e, const Expr& x) {
    auto parts = split_powers(e, x);
    return parts.empty() ? 0 : parts.begin()->first;
}

Expr coeff(const Expr& e, const Expr& x, int k) {
    auto parts = split_powers(e, x);
    auto it = parts.find(k);
    if (it == parts.end()) {
        return Expr(0);
    }
    return build_add(it->second);
}

Expr collect(const Expr& e, const Expr& x) {
    auto parts = split_powers(e, x);
    std::vector<Expr> terms;
    for (auto& [k, cs] : parts) {
        terms.push_back(build_mul({build_add(cs), build_power(x, Expr(k))}));
    }
    return build_add(std::move(terms));
}

// ---------------------------------------------------------------------------
// Gcd and friends

namespace {

PolyContext strict_context(std::initializer_list<Expr> inputs) {
    PolyContext ctx(PolyContext::Mode::Strict);
    for (const auto& e : inputs) {
        ctx.scan(e);
    }
    ctx.finalize();
    return ctx;
}

/// Factors of a syntactic product with their multiplicities.
std::vector<std::pair<Expr, long>> syntactic_factors(const Expr& e) {
    std::vector<std::pair<Expr, long>> out;
    if (e.is(Kind::Mul)) {
        const auto& m = e.as<PairSeqNode>();
        if (!m.overall.is_one()) {
            out.emplace_back(Expr(m.overall), 1);
        }
        for (const auto& p : m.pairs) {
            if (p.key.is_integer() && p.key.is_positive()) {
                out.emplace_back(p.rest, p.key.to_long());
            } else {
                out.emplace_back(build_power(p.rest, Expr(p.key)), 1);
            }
        }
    } else if (e.is(Kind::Power) && e.as<PowerNode>().exponent.is_integer() &&
               e.as<PowerNode>().exponent.number().is_positive()) {
        out.emplace_back(e.as<PowerNode>().base, e.as<PowerNode>().exponent.number().to_long());
    } else {
        out.emplace_back(e, 1);
    }
    return out;
}

bool is_factored(const Expr& e) { return e.is(Kind::Mul) || e.is(Kind::Power); }

} // namespace

Expr poly_gcd(const Expr& a0, const Expr& b0) {
    Expr a = a0;
    Expr b = b0;
    if (!is_factored(a) && is_factored(b)) {
        std::swap(a, b);
    }
    PolyContext ctx = strict_context({a, b});
    Poly rest = ctx.to_poly(b);
    if (!is_factored(a)) {
        return ctx.to_expr(detail::gcd(ctx.to_poly(a), rest));
    }
    if (rest.is_zero()) {
        return ctx.to_expr(detail::unit_normal(ctx.to_poly(a)));
    }
    // gcd(f g, b) = gcd(f, b) gcd(g, b / gcd(f, b))
    Poly g = Poly::constant(ctx.nv(), 1);
    for (const auto& [f, k] : syntactic_factors(a)) {
        const Poly pf = ctx.to_poly(f);
        for (long i = 0; i < k; ++i) {
            Poly t = detail::gcd(pf, rest);
            if (t.is_one()) {
                break;
            }
            g = g * t;
            rest = detail::divide_exact(rest, t);
        }
    }
    return ctx.to_expr(detail::unit_normal(g));
}

std::optional<Expr> heur_gcd(const Expr& a, const Expr& b) {
    PolyContext ctx = strict_context({a, b});
    auto g = detail::heur_gcd(ctx.to_poly(a), ctx.to_poly(b));
    if (!g) {
        return std::nullopt;
    }
    return ctx.to_expr(*g);
}

Expr sr_gcd(const Expr& a, const Expr& b) {
    PolyContext ctx = strict_context({a, b});
    return ctx.to_expr(detail::sr_gcd(ctx.to_poly(a), ctx.to_poly(b)));
}

Expr lcm(const Expr& a, const Expr& b) {
    PolyContext ctx = strict_context({a, b});
    const Poly pa = ctx.to_poly(a);
    const Poly pb = ctx.to_poly(b);
    if (pa.is_zero() || pb.is_zero()) {
        return Expr(0);
    }
    const Poly g = detail::gcd(pa, pb);
    return ctx.to_expr(detail::unit_normal(detail::divide_exact(pa * pb, g)));
}

std::optional<Expr> divide(const Expr& a, const Expr& b) {
    PolyContext ctx = strict_context({a, b});
    mpz_class da, db;
    const Poly pa = ctx.to_poly(a, &da);
    const Poly pb = ctx.to_poly(b, &db);
    if (pb.is_zero()) {
        throw DivisionByZero("polynomial division by zero");
    }
    auto q = detail::divide(pa.scaled(db), pb);
    if (!q) {
        return std::nullopt;
    }
    return build_mul({Expr(Number::make(1, da)), ctx.to_expr(*q)});
}

UnitContentPrimpart content_primpart(const Expr& e, const Expr& x) {
    require_symbol(x);
    PolyContext ctx(PolyContext::Mode::Strict);
    ctx.scan(e);
    ctx.add_variable(x);
    ctx.finalize();
    mpz_class den;
    const Poly p = ctx.to_poly(e, &den);
    if (p.is_zero()) {
        return {Expr(1), Expr(0), Expr(0)};
    }
    const std::size_t v = *ctx.index_of(x);
    const Poly cont = detail::content(p, v);
    const bool negative = p.lc(v).lc_int() < 0;
    Poly pp = detail::divide_exact(p, cont);
    if (negative) {
        pp = -pp;
    }
    return {Expr(negative ? -1 : 1), build_mul({Expr(Number::make(1, den)), ctx.to_expr(cont)}), ctx.to_expr(pp)};
}

Expr normal(const Expr& e) {
    switch (e.kind()) {
    case Kind::List:
    case Kind::Relational:
    case Kind::Matrix:
        return map_operands(e, [](const Expr& x) { return normal(x); });
    case Kind::Series:
    case Kind::Symbol:
    case Kind::Constant:
        return e;
    default:
        break;
    }
    PolyContext ctx(PolyContext::Mode::Generators);
    ctx.scan(e);
    ctx.finalize();
    return ctx.to_expr(ctx.to_frac(e));
}

} // namespace symkit
