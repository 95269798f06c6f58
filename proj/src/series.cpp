#include "symkit/series.hpp"

#include "symkit/function.hpp"
#include "symkit/ops.hpp"

#include <algorithm>
#include <climits>
#include <map>

namespace symkit {

namespace {

Expr simplify_coeff(const Expr& c) { return expand(c); }

void check_compatible(const PSeries& a, const PSeries& b) {
    if (!(a.var() == b.var()) || !(a.point() == b.point())) {
        throw DomainError("series in different variables or around different points");
    }
}

std::optional<int> min_order(const std::optional<int>& a, const std::optional<int>& b) {
    if (a && b) {
        return std::min(*a, *b);
    }
    return a ? a : b;
}

} // namespace

PSeries::PSeries(Expr var, Expr point, std::vector<SeriesTerm> terms, std::optional<int> order)
    : var_(std::move(var)), point_(std::move(point)), order_(order) {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const SeriesTerm& a, const SeriesTerm& b) { return a.exponent < b.exponent; });
    for (auto& t : terms) {
        if (order_ && t.exponent >= *order_) {
            continue;
        }
        if (!terms_.empty() && terms_.back().exponent == t.exponent) {
            terms_.back().coeff = simplify_coeff(terms_.back().coeff + t.coeff);
        } else {
            terms_.push_back(std::move(t));
        }
    }
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const SeriesTerm& t) { return t.coeff.is_zero(); }),
                 terms_.end());
}

int PSeries::ldegree() const noexcept {
    if (!terms_.empty()) {
        return terms_.front().exponent;
    }
    return order_ ? *order_ : 0;
}

Expr PSeries::coeff(int k) const {
    for (const auto& t : terms_) {
        if (t.exponent == k) {
            return t.coeff;
        }
    }
    return Expr(0);
}

PSeries PSeries::truncate(int n) const {
    std::optional<int> order = order_ ? std::min(*order_, n) : n;
    return PSeries(var_, point_, terms_, order);
}

// ---------------------------------------------------------------------------
// Arithmetic

PSeries ps_add(const PSeries& a, const PSeries& b) {
    check_compatible(a, b);
    std::vector<SeriesTerm> terms = a.terms();
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    return PSeries(a.var(), a.point(), std::move(terms), min_order(a.order(), b.order()));
}

PSeries ps_scale(const PSeries& a, const Expr& c) {
    std::vector<SeriesTerm> terms;
    terms.reserve(a.terms().size());
    for (const auto& t : a.terms()) {
        terms.push_back({simplify_coeff(c * t.coeff), t.exponent});
    }
    return PSeries(a.var(), a.point(), std::move(terms), a.order());
}

PSeries ps_mul(const PSeries& a, const PSeries& b) {
    check_compatible(a, b);
    const bool a_zero = a.empty() && !a.order();
    const bool b_zero = b.empty() && !b.order();
    if (a_zero || b_zero) {
        return PSeries(a.var(), a.point(), {}, std::nullopt);
    }
    std::optional<int> order;
    if (a.order() && b.order()) {
        order = std::min(*a.order() + b.ldegree(), *b.order() + a.ldegree());
    } else if (a.order()) {
        order = *a.order() + b.ldegree();
    } else if (b.order()) {
        order = *b.order() + a.ldegree();
    }
    std::map<int, std::vector<Expr>> buckets;
    for (const auto& x : a.terms()) {
        for (const auto& y : b.terms()) {
            const int e = x.exponent + y.exponent;
            if (order && e >= *order) {
                break;
            }
            buckets[e].push_back(x.coeff * y.coeff);
        }
    }
    std::vector<SeriesTerm> terms;
    for (auto& [e, parts] : buckets) {
        terms.push_back({simplify_coeff(build_add(std::move(parts))), e});
    }
    return PSeries(a.var(), a.point(), std::move(terms), order);
}

namespace {

PSeries unit_series(const PSeries& like) { return PSeries(like.var(), like.point(), {{Expr(1), 0}}, std::nullopt); }

// (sum_i a_i x^i)^k with a_0 = 1 and `count` known coefficients:
// b_j = (1/j) sum_{i=1..j} ((k+1) i - j) a_i b_{j-i}.
std::vector<Expr> unit_power(const std::vector<Expr>& a, const Number& k, int count) {
    std::vector<Expr> b(static_cast<std::size_t>(count));
    if (count == 0) {
        return b;
    }
    b[0] = Expr(1);
    for (int j = 1; j < count; ++j) {
        std::vector<Expr> parts;
        for (int i = 1; i <= j && i < static_cast<int>(a.size()); ++i) {
            if (a[static_cast<std::size_t>(i)].is_zero() || b[static_cast<std::size_t>(j - i)].is_zero()) {
                continue;
            }
            Number w = (k + Number(1)) * Number(i) - Number(j);
            if (w.is_zero()) {
                continue;
            }
            parts.push_back(build_mul({Expr(w), a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j - i)]}));
        }
        b[static_cast<std::size_t>(j)] = simplify_coeff(build_mul({Expr(Number::make(1, j)), build_add(std::move(parts))}));
    }
    return b;
}

} // namespace

PSeries ps_pow(const PSeries& a, const Expr& k) {
    if (!k.is_numeric()) {
        throw SeriesError("series can only be raised to numeric powers");
    }
    const Number& kn = k.number();
    if (kn.is_zero()) {
        return unit_series(a);
    }
    if (kn.is_one()) {
        return a;
    }
    if (kn.is_positive_integer()) {
        PSeries result = unit_series(a);
        PSeries base = a;
        mpz_class e = kn.as_mpz();
        while (sgn(e) > 0) {
            if (mpz_odd_p(e.get_mpz_t())) {
                result = ps_mul(result, base);
            }
            e >>= 1;
            if (sgn(e) > 0) {
                base = ps_mul(base, base);
            }
        }
        return result;
    }
    if (!kn.is_rational()) {
        throw SeriesError("series power must be exact rational");
    }
    if (a.empty()) {
        throw SeriesError("cannot determine the leading term of the series");
    }
    const int m = a.ldegree();
    Number mk = Number(m) * kn;
    if (!mk.is_integer() || !mk.fits_long()) {
        throw SeriesError("power of series leads to a non-integer exponent");
    }
    const Expr c0 = a.terms().front().coeff;
    if (!a.order()) {
        if (a.terms().size() == 1) {
            return PSeries(a.var(), a.point(), {{build_power(c0, k), static_cast<int>(mk.to_long())}}, std::nullopt);
        }
        throw SeriesError("power of an exact polynomial needs a truncation order");
    }
    const int known = *a.order() - m;
    std::vector<Expr> normalized(static_cast<std::size_t>(std::max(known, 0)), Expr(0));
    const Expr inv_c0 = build_power(c0, Expr(-1));
    for (const auto& t : a.terms()) {
        const int i = t.exponent - m;
        if (i < known) {
            normalized[static_cast<std::size_t>(i)] = simplify_coeff(t.coeff * inv_c0);
        }
    }
    std::vector<Expr> b = unit_power(normalized, kn, known);
    const Expr scale = build_power(c0, k);
    const int shift = static_cast<int>(mk.to_long());
    std::vector<SeriesTerm> terms;
    for (int j = 0; j < known; ++j) {
        if (!b[static_cast<std::size_t>(j)].is_zero()) {
            terms.push_back({simplify_coeff(scale * b[static_cast<std::size_t>(j)]), shift + j});
        }
    }
    return PSeries(a.var(), a.point(), std::move(terms), shift + known);
}

PSeries ps_exp(const PSeries& a) {
    if (!a.empty() && a.ldegree() < 0) {
        throw SeriesError("essential singularity in exp");
    }
    if (!a.order()) {
        throw SeriesError("exp of an exact polynomial needs a truncation order");
    }
    const int n = *a.order();
    const Expr a0 = a.coeff(0);
    std::vector<Expr> r(static_cast<std::size_t>(std::max(n, 0)), Expr(0));
    for (const auto& t : a.terms()) {
        if (t.exponent > 0 && t.exponent < n) {
            r[static_cast<std::size_t>(t.exponent)] = t.coeff;
        }
    }
    // b_k = (1/k) sum_{i=1..k} i r_i b_{k-i}
    std::vector<Expr> b(static_cast<std::size_t>(std::max(n, 0)), Expr(0));
    if (n > 0) {
        b[0] = Expr(1);
    }
    for (int k = 1; k < n; ++k) {
        std::vector<Expr> parts;
        for (int i = 1; i <= k; ++i) {
            if (r[static_cast<std::size_t>(i)].is_zero() || b[static_cast<std::size_t>(k - i)].is_zero()) {
                continue;
            }
            parts.push_back(build_mul({Expr(i), r[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(k - i)]}));
        }
        b[static_cast<std::size_t>(k)] = simplify_coeff(build_mul({Expr(Number::make(1, k)), build_add(std::move(parts))}));
    }
    const Expr scale = exp(a0);
    std::vector<SeriesTerm> terms;
    for (int k = 0; k < n; ++k) {
        terms.push_back({simplify_coeff(scale * b[static_cast<std::size_t>(k)]), k});
    }
    return PSeries(a.var(), a.point(), std::move(terms), n);
}

// ---------------------------------------------------------------------------
// Expansion

namespace {

PSeries constant_series(const Expr& c, const Expr& x) {
    return PSeries(x, Expr(0), {{c, 0}}, std::nullopt);
}

class Expansion {
public:
    explicit Expansion(Expr x) : x_(std::move(x)) {}

    PSeries run(const Expr& e, int n) {
        if (!has(e, x_)) {
            return constant_series(e, x_);
        }
        switch (e.kind()) {
        case Kind::Symbol:
            return PSeries(x_, Expr(0), {{Expr(1), 1}}, std::nullopt);
        case Kind::Add:
            return add(e, n);
        case Kind::Mul:
            return mul(e, n);
        case Kind::Power:
            return power(e.as<PowerNode>().base, e.as<PowerNode>().exponent, n);
        case Kind::Function:
            return function(e, n);
        case Kind::Series: {
            const auto& s = *e.as<SeriesNode>().series;
            if (!(s.var() == x_) || !s.point().is_zero()) {
                throw SeriesError("nested series around a different point");
            }
            return s.truncate(n);
        }
        default:
            throw SeriesError("cannot expand " + e.to_string() + " in a series");
        }
    }

private:
    PSeries add(const Expr& e, int n) {
        const auto& s = e.as<PairSeqNode>();
        PSeries out = constant_series(Expr(s.overall), x_);
        for (const auto& p : s.pairs) {
            PSeries t = run(p.rest, n);
            out = ps_add(out, p.key.is_one() ? t : ps_scale(t, Expr(p.key)));
        }
        return out.truncate(n);
    }

    PSeries mul(const Expr& e, int n) {
        const auto& s = e.as<PairSeqNode>();
        std::vector<Expr> factors;
        Expr constant = Expr(s.overall);
        for (const auto& p : s.pairs) {
            Expr f = build_power(p.rest, Expr(p.key));
            if (has(f, x_)) {
                factors.push_back(f);
            } else {
                constant = constant * f;
            }
        }
        std::vector<PSeries> parts;
        std::vector<int> ldeg;
        for (const auto& f : factors) {
            parts.push_back(run(f, n));
            ldeg.push_back(parts.back().ldegree());
        }
        int total = 0;
        for (int l : ldeg) {
            total += l;
        }
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const int need = n - (total - ldeg[i]);
            if (need > n) {
                parts[i] = run(factors[i], need);
            }
        }
        PSeries out = constant_series(constant, x_);
        for (const auto& p : parts) {
            out = ps_mul(out, p);
        }
        return out.truncate(n);
    }

    PSeries base_series(const Expr& base, int n) {
        PSeries sb = run(base, n);
        // An all-zero truncation hides the leading term; look further.
        for (int extra = 1; sb.empty() && sb.order() && extra <= 16; extra *= 2) {
            sb = run(base, n + extra);
        }
        if (sb.empty()) {
            throw SeriesError("cannot determine the pole order of " + base.to_string());
        }
        return sb;
    }

    PSeries power(const Expr& base, const Expr& exponent, int n) {
        if (has(exponent, x_) || !exponent.is_numeric()) {
            return run(exp(exponent * log(base)), n);
        }
        const Number& k = exponent.number();
        PSeries sb = base_series(base, n);
        const int m = sb.ldegree();
        if (k.is_positive_integer()) {
            const long kk = k.to_long();
            const long need = n - (kk - 1) * m;
            if (need > n) {
                sb = run(base, static_cast<int>(need));
            }
            sb = sb.truncate(std::max<int>(static_cast<int>(need), m + 1));
            return ps_pow(sb, exponent).truncate(n);
        }
        // (c x^m (1+u))^k: the base must be known up to n + m - m k.
        const Number need_n = Number(n) + Number(m) * (Number(1) - k);
        const long need_floor = need_n.is_integer() ? need_n.to_long() : mpz_class(need_n.numerator() / need_n.denominator()).get_si() + 1;
        const int need = static_cast<int>(std::max<long>(need_floor, m + 1));
        if (need > n) {
            sb = run(base, need);
        }
        sb = sb.truncate(need);
        return ps_pow(sb, exponent).truncate(n);
    }

    PSeries function(const Expr& e, int n) {
        const auto& f = e.as<FunctionNode>();
        if (f.def->series) {
            if (auto s = f.def->series(f.args, x_, n)) {
                return s->truncate(n);
            }
        }
        return taylor(f, n);
    }

    PSeries taylor(const FunctionNode& f, int n) {
        std::size_t index = f.args.size();
        for (std::size_t i = 0; i < f.args.size(); ++i) {
            if (has(f.args[i], x_)) {
                if (index != f.args.size()) {
                    throw SeriesError("cannot expand " + f.def->name + " in several arguments");
                }
                index = i;
            }
        }
        PSeries arg = run(f.args[index], n);
        if (!arg.empty() && arg.ldegree() < 0) {
            throw SeriesError("essential singularity in " + f.def->name);
        }
        const Expr a0 = arg.coeff(0);
        PSeries u = ps_add(arg, constant_series(-a0, x_)).truncate(n);
        const Expr s = symbol();
        std::vector<Expr> args = f.args;
        args[index] = s;
        Expr d = fn_apply(*f.def, args);
        PSeries out = PSeries(x_, Expr(0), {}, n);
        PSeries upow = PSeries(x_, Expr(0), {{Expr(1), 0}}, std::nullopt);
        Number fact(1);
        const int step = u.empty() ? n : std::max(1, u.ldegree());
        for (int k = 0; k * step < n; ++k) {
            if (k > 0) {
                d = diff(d, s);
                fact *= Number(k);
                upow = ps_mul(upow, u).truncate(n);
            }
            Expr ck;
            try {
                ck = subs(d, eq(s, a0));
            } catch (const PoleError& err) {
                throw SeriesError(std::string("cannot expand ") + f.def->name + ": " + err.what());
            }
            out = ps_add(out, ps_scale(upow, build_mul({ck, Expr(fact.inverse())})));
        }
        return out.truncate(n);
    }

    Expr x_;
};

} // namespace

PSeries series_of(const Expr& e, const Expr& var, const Expr& point, int order) {
    if (!var.is_symbol()) {
        throw SeriesError("series variable must be a symbol");
    }
    if (point.is_zero()) {
        Expansion ex(var);
        return ex.run(e, order).truncate(order);
    }
    const Expr t = symbol();
    Expansion ex(t);
    PSeries s = ex.run(subs(e, eq(var, point + t)), order).truncate(order);
    return PSeries(var, point, s.terms(), s.order());
}

PSeries series_of(const Expr& e, const Expr& at, int order) {
    if (!at.is(Kind::Relational) || at.as<RelationalNode>().op != RelOp::Eq) {
        throw SeriesError("series point must be given as symbol==point");
    }
    return series_of(e, at.as<RelationalNode>().lhs, at.as<RelationalNode>().rhs, order);
}

Expr ps_to_expr(const PSeries& a) {
    const Expr base = a.point().is_zero() ? a.var() : a.var() - a.point();
    std::vector<Expr> terms;
    for (const auto& t : a.terms()) {
        terms.push_back(t.coeff * build_power(base, Expr(t.exponent)));
    }
    return build_add(std::move(terms));
}

Expr make_series(PSeries a) { return make_series_node(std::make_shared<const PSeries>(std::move(a))); }

namespace {

std::string power_of_var(const std::string& var, int e) {
    if (e == 0) {
        return "";
    }
    if (e == 1) {
        return var;
    }
    if (e < 0) {
        return var + "^(" + std::to_string(e) + ")";
    }
    return var + "^" + std::to_string(e);
}

} // namespace

std::string ps_to_string(const PSeries& a) {
    const std::string var =
        a.point().is_zero() ? a.var().to_string() : "(" + (a.var() - a.point()).to_string() + ")";
    std::string out;
    auto append = [&out](const std::string& t) {
        if (!out.empty() && t[0] != '-') {
            out += "+";
        }
        out += t;
    };
    for (const auto& t : a.terms()) {
        const std::string v = power_of_var(var, t.exponent);
        std::string c = t.coeff.to_string();
        if (t.coeff.is(Kind::Add) || (t.coeff.is_numeric() && !t.coeff.number().is_real())) {
            c = "(" + c + ")";
        }
        if (v.empty()) {
            append(t.coeff.to_string());
        } else if (t.coeff.is_one()) {
            append(v);
        } else if (t.coeff.is_minus_one()) {
            append("-" + v);
        } else {
            append(c + "*" + v);
        }
    }
    if (a.order()) {
        std::string v = power_of_var(var, *a.order());
        if (*a.order() == 1 && !a.point().is_zero()) {
            v = (a.var() - a.point()).to_string();
        }
        append("O(" + (v.empty() ? std::string("1") : v) + ")");
    }
    return out.empty() ? "0" : out;
}

} // namespace symkit
