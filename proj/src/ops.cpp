#include "symkit/ops.hpp"

#include "symkit/function.hpp"
#include "symkit/series.hpp"

#include <unordered_map>

namespace symkit {

// ---------------------------------------------------------------------------
// subs

namespace {

// Keyed by Expr so that cached nodes stay alive for the whole traversal.
using Memo = std::unordered_map<Expr, Expr, ExprHash>;

struct Substituter {
    std::unordered_map<std::uint64_t, Expr> table;
    Memo memo;

    Expr operator()(const Expr& e) {
        if (e.is_symbol()) {
            auto it = table.find(e.as<SymbolNode>().serial);
            return it == table.end() ? e : it->second;
        }
        if (e.is_numeric() || e.is(Kind::Constant)) {
            return e;
        }
        if (auto it = memo.find(e); it != memo.end()) {
            return it->second;
        }
        Expr out = map_operands(e, [this](const Expr& x) { return (*this)(x); });
        memo.emplace(e, out);
        return out;
    }
};

} // namespace

Expr subs(const Expr& e, const std::vector<Expr>& bindings) {
    Substituter s;
    for (const auto& b : bindings) {
        if (!b.is(Kind::Relational) || b.as<RelationalNode>().op != RelOp::Eq) {
            throw UnsupportedPattern("substitution needs relations of the form symbol==value, got " + b.to_string());
        }
        const auto& r = b.as<RelationalNode>();
        if (!r.lhs.is_symbol()) {
            throw UnsupportedPattern("only symbols can be substituted, got " + r.lhs.to_string());
        }
        if (!s.table.emplace(r.lhs.as<SymbolNode>().serial, r.rhs).second) {
            throw UnsupportedPattern("symbol " + r.lhs.to_string() + " bound twice");
        }
    }
    if (s.table.empty()) {
        return e;
    }
    return s(e);
}

Expr subs(const Expr& e, const Expr& bindings) {
    if (bindings.is(Kind::List)) {
        return subs(e, bindings.as<ListNode>().items);
    }
    return subs(e, std::vector<Expr>{bindings});
}

// ---------------------------------------------------------------------------
// diff

namespace {

struct Differentiator {
    Expr x;
    Memo memo;

    Expr operator()(const Expr& e) {
        switch (e.kind()) {
        case Kind::Numeric:
        case Kind::Constant:
            return Expr(0);
        case Kind::Symbol:
            return e == x ? Expr(1) : Expr(0);
        case Kind::List:
        case Kind::Relational:
        case Kind::Matrix:
            throw DomainError("cannot differentiate " + e.to_string());
        default:
            break;
        }
        if (auto it = memo.find(e); it != memo.end()) {
            return it->second;
        }
        Expr out = has(e, x) ? compute(e) : Expr(0);
        memo.emplace(e, out);
        return out;
    }

    Expr compute(const Expr& e) {
        switch (e.kind()) {
        case Kind::Add: {
            const auto& a = e.as<PairSeqNode>();
            std::vector<Expr> terms;
            for (const auto& p : a.pairs) {
                terms.push_back(build_mul({Expr(p.key), (*this)(p.rest)}));
            }
            return build_add(std::move(terms));
        }
        case Kind::Mul: {
            const auto& m = e.as<PairSeqNode>();
            std::vector<Expr> factors;
            for (const auto& p : m.pairs) {
                factors.push_back(build_power(p.rest, Expr(p.key)));
            }
            std::vector<Expr> terms;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                Expr d = (*this)(factors[i]);
                if (d.is_zero()) {
                    continue;
                }
                std::vector<Expr> prod{Expr(m.overall), d};
                for (std::size_t j = 0; j < factors.size(); ++j) {
                    if (j != i) {
                        prod.push_back(factors[j]);
                    }
                }
                terms.push_back(build_mul(std::move(prod)));
            }
            return build_add(std::move(terms));
        }
        case Kind::Power: {
            const auto& p = e.as<PowerNode>();
            if (!has(p.exponent, x)) {
                return build_mul({p.exponent, build_power(p.base, p.exponent - Expr(1)), (*this)(p.base)});
            }
            // d(b^e) = b^e (e' log b + e b'/b)
            Expr inner = build_add({build_mul({(*this)(p.exponent), log(p.base)}),
                                    build_mul({p.exponent, (*this)(p.base), build_power(p.base, Expr(-1))})});
            return build_mul({e, inner});
        }
        case Kind::Function: {
            const auto& f = e.as<FunctionNode>();
            std::vector<Expr> terms;
            for (std::size_t i = 0; i < f.args.size(); ++i) {
                Expr d = (*this)(f.args[i]);
                if (d.is_zero()) {
                    continue;
                }
                if (!f.def->derivative) {
                    throw UnevaluatedDerivative("no derivative known for " + f.def->name);
                }
                terms.push_back(build_mul({f.def->derivative(f.args, i), d}));
            }
            return build_add(std::move(terms));
        }
        case Kind::Series: {
            const auto& s = *e.as<SeriesNode>().series;
            if (!(s.var() == x)) {
                throw DomainError("series differentiated in a foreign variable");
            }
            std::vector<SeriesTerm> terms;
            for (const auto& t : s.terms()) {
                if (t.exponent != 0) {
                    terms.push_back({build_mul({Expr(t.exponent), t.coeff}), t.exponent - 1});
                }
            }
            std::optional<int> order;
            if (s.order()) {
                order = *s.order() - 1;
            }
            return make_series(PSeries(s.var(), s.point(), std::move(terms), order));
        }
        default:
            return Expr(0);
        }
    }
};

} // namespace

Expr diff(const Expr& e, const Expr& x, int n) {
    if (!x.is_symbol()) {
        throw DomainError("can only differentiate with respect to a symbol");
    }
    if (n < 0) {
        throw DomainError("derivative order must be nonnegative");
    }
    Expr out = e;
    for (int i = 0; i < n; ++i) {
        Differentiator d{x, {}};
        out = d(out);
    }
    return out;
}

// ---------------------------------------------------------------------------
// expand

namespace {

struct Expander {
    Memo memo;

    static std::vector<Expr> sum_terms(const Expr& s) {
        const auto& a = s.as<PairSeqNode>();
        std::vector<Expr> out;
        out.reserve(a.pairs.size() + 1);
        if (!a.overall.is_zero()) {
            out.emplace_back(a.overall);
        }
        for (const auto& p : a.pairs) {
            out.push_back(p.key.is_one() ? p.rest : build_mul({Expr(p.key), p.rest}));
        }
        return out;
    }

    static bool needs_more(const Expr& t) {
        if (t.is(Kind::Power)) {
            const auto& p = t.as<PowerNode>();
            return p.base.is(Kind::Add) && p.exponent.is_numeric() && p.exponent.number().is_positive_integer();
        }
        if (t.is(Kind::Mul)) {
            for (const auto& p : t.as<PairSeqNode>().pairs) {
                if (p.rest.is(Kind::Add) && p.key.is_positive_integer()) {
                    return true;
                }
            }
        }
        return false;
    }

    Expr finish(std::vector<Expr> terms) {
        for (auto& t : terms) {
            if (needs_more(t)) {
                t = (*this)(t);
            }
        }
        return build_add(std::move(terms));
    }

    // Multiplies out a list of already expanded factors.
    Expr product(const std::vector<Expr>& factors) {
        std::vector<Expr> acc{Expr(1)};
        std::vector<Expr> plain;
        for (const auto& f : factors) {
            if (!f.is(Kind::Add)) {
                plain.push_back(f);
                continue;
            }
            std::vector<Expr> terms = sum_terms(f);
            std::vector<Expr> next;
            next.reserve(acc.size() * terms.size());
            for (const auto& a : acc) {
                for (const auto& t : terms) {
                    next.push_back(build_mul({a, t}));
                }
            }
            acc = std::move(next);
        }
        if (!plain.empty()) {
            Expr common = build_mul(plain);
            for (auto& a : acc) {
                a = build_mul({a, common});
            }
        }
        return finish(std::move(acc));
    }

    Expr square(const Expr& s) {
        std::vector<Expr> terms = sum_terms(s);
        std::vector<Expr> out;
        out.reserve(terms.size() * (terms.size() + 1) / 2);
        for (std::size_t i = 0; i < terms.size(); ++i) {
            out.push_back(build_power(terms[i], Expr(2)));
            for (std::size_t j = i + 1; j < terms.size(); ++j) {
                out.push_back(build_mul({Expr(2), terms[i], terms[j]}));
            }
        }
        return finish(std::move(out));
    }

    Expr power_of_sum(const Expr& s, unsigned long k) {
        if (k == 1) {
            return s;
        }
        if (k == 2) {
            return square(s);
        }
        Expr half = power_of_sum(s, k / 2);
        Expr sq = half.is(Kind::Add) ? square(half) : (*this)(build_power(half, Expr(2)));
        if (k % 2 == 1) {
            return product({sq, s});
        }
        return sq;
    }

    Expr operator()(const Expr& e) {
        switch (e.kind()) {
        case Kind::Numeric:
        case Kind::Symbol:
        case Kind::Constant:
            return e;
        default:
            break;
        }
        if (auto it = memo.find(e); it != memo.end()) {
            return it->second;
        }
        Expr out = compute(e);
        memo.emplace(e, out);
        return out;
    }

    Expr compute(const Expr& e) {
        switch (e.kind()) {
        case Kind::Add: {
            const auto& a = e.as<PairSeqNode>();
            std::vector<Expr> terms;
            terms.reserve(a.pairs.size() + 1);
            terms.emplace_back(a.overall);
            bool changed = false;
            for (const auto& p : a.pairs) {
                Expr r = (*this)(p.rest);
                changed = changed || r.ptr() != p.rest.ptr();
                terms.push_back(p.key.is_one() ? r : product({Expr(p.key), r}));
            }
            return changed ? build_add(std::move(terms)) : e;
        }
        case Kind::Mul: {
            const auto& m = e.as<PairSeqNode>();
            std::vector<Expr> factors;
            factors.emplace_back(m.overall);
            bool sums = false;
            bool changed = false;
            for (const auto& p : m.pairs) {
                Expr f = p.key.is_one() ? (*this)(p.rest) : (*this)(build_power(p.rest, Expr(p.key)));
                changed = changed || f.ptr() != p.rest.ptr() || !p.key.is_one();
                sums = sums || f.is(Kind::Add);
                factors.push_back(std::move(f));
            }
            if (!sums) {
                return changed ? build_mul(std::move(factors)) : e;
            }
            return product(factors);
        }
        case Kind::Power: {
            const auto& p = e.as<PowerNode>();
            Expr b = (*this)(p.base);
            Expr x = (*this)(p.exponent);
            if (b.is(Kind::Add) && x.is_numeric() && x.number().is_positive_integer() &&
                x.number().as_mpz().fits_ulong_p()) {
                return power_of_sum(b, x.number().as_mpz().get_ui());
            }
            if (b.ptr() == p.base.ptr() && x.ptr() == p.exponent.ptr()) {
                return e;
            }
            Expr r = build_power(b, x);
            if (r.is(Kind::Mul) || needs_more(r)) {
                return (*this)(r);
            }
            return r;
        }
        default:
            return map_operands(e, [this](const Expr& x) { return (*this)(x); });
        }
    }
};

} // namespace

Expr expand(const Expr& e) {
    Expander x;
    return x(e);
}

// ---------------------------------------------------------------------------
// evalf

namespace {

struct Evaluator {
    Precision p;
    Memo memo;

    Number num(const Number& n) const { return n.is_exact() ? to_float(n, p) : n; }
    // unit coefficients stay exact so x+1/2 becomes x+0.5, not 1.0*x+0.5
    Number coef(const Number& n) const { return n.is_zero() || n.is_one() || n.is_minus_one() ? n : num(n); }

    Expr operator()(const Expr& e) {
        switch (e.kind()) {
        case Kind::Numeric:
            return Expr(num(e.number()));
        case Kind::Symbol:
            return e;
        case Kind::Constant: {
            const auto& c = *e.as<ConstantNode>().def;
            if (c.fixed) {
                return Expr(*c.fixed);
            }
            return Expr(c.evaluator(p));
        }
        default:
            break;
        }
        if (auto it = memo.find(e); it != memo.end()) {
            return it->second;
        }
        Expr out = compute(e);
        memo.emplace(e, out);
        return out;
    }

    // Integer exponents stay exact so x^2 does not turn into x^2.0.
    Expr exponent(const Expr& x) { return x.is_integer() ? x : (*this)(x); }

    Expr compute(const Expr& e) {
        switch (e.kind()) {
        case Kind::Add: {
            const auto& a = e.as<PairSeqNode>();
            std::vector<Expr> terms;
            terms.emplace_back(a.overall.is_zero() ? a.overall : num(a.overall));
            for (const auto& pr : a.pairs) {
                terms.push_back(build_mul({Expr(coef(pr.key)), (*this)(pr.rest)}));
            }
            return build_add(std::move(terms));
        }
        case Kind::Mul: {
            const auto& m = e.as<PairSeqNode>();
            std::vector<Expr> factors;
            factors.emplace_back(coef(m.overall));
            for (const auto& pr : m.pairs) {
                factors.push_back(build_power((*this)(pr.rest), exponent(Expr(pr.key))));
            }
            return build_mul(std::move(factors));
        }
        case Kind::Power: {
            const auto& pw = e.as<PowerNode>();
            return build_power((*this)(pw.base), exponent(pw.exponent));
        }
        case Kind::Function: {
            const auto& f = e.as<FunctionNode>();
            std::vector<Expr> args;
            for (const auto& a : f.args) {
                args.push_back((*this)(a));
            }
            Expr r = fn_apply(*f.def, std::move(args));
            if (r.is(Kind::Function) && r.as<FunctionNode>().def->evalf) {
                const auto& g = r.as<FunctionNode>();
                std::vector<Number> values;
                for (const auto& a : g.args) {
                    if (!a.is_numeric()) {
                        return r;
                    }
                    values.push_back(a.number());
                }
                if (auto v = g.def->evalf(values, p)) {
                    return Expr(*v);
                }
            }
            return r;
        }
        default:
            return map_operands(e, [this](const Expr& x) { return (*this)(x); });
        }
    }
};

} // namespace

Expr evalf(const Expr& e, Precision p) {
    Evaluator ev{p, {}};
    return ev(e);
}

} // namespace symkit
