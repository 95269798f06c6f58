#include "properties.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include "symkit/errors.hpp"
#include "symkit/function.hpp"
#include "symkit/matrix.hpp"
#include "symkit/ops.hpp"
#include "symkit/poly.hpp"
#include "symkit/series.hpp"
#include "symkit/shell.hpp"

#include <sstream>

namespace symkit::testing {

namespace {

void fail(PropertyResult& r, const std::string& what) {
    ++r.failures;
    if (r.first_failure.empty()) {
        r.first_failure = what;
    }
}

std::vector<Expr> xyz() {
    static const std::vector<Expr> v{symbol("x"), symbol("y"), symbol("z")};
    return v;
}

} // namespace

std::string PropertyResult::summary() const {
    std::ostringstream os;
    os << name << ' ' << (cases - failures - skipped) << '/' << (cases - skipped);
    if (skipped > 0) {
        os << " (" << skipped << " not applicable)";
    }
    if (!first_failure.empty()) {
        os << " first failure: " << first_failure;
    }
    return os.str();
}

PropertyResult prop_canonical_permutation(int cases, std::uint64_t seed) {
    PropertyResult r{"canonical-permutation"};
    Gen g(seed);
    std::vector<Expr> atoms = xyz();
    atoms.push_back(Pi());
    for (int c = 0; c < cases; ++c) {
        ++r.cases;
        std::vector<Expr> ops;
        for (long k = g.between(2, 6); k > 0; --k) {
            ops.push_back(g.expr(atoms, 2));
        }
        const bool sum = c % 2 == 0;
        auto build = [&](std::vector<Expr> v) { return sum ? build_add(std::move(v)) : build_mul(std::move(v)); };
        const Expr a = build(ops);
        const Expr b = build(g.shuffled(ops));
        if (cmp(a, b) != 0 || a.hash() != b.hash() || a.to_string() != b.to_string()) {
            fail(r, a.to_string() + " vs " + b.to_string());
            continue;
        }
        if (a.is(Kind::Add) || a.is(Kind::Mul)) {
            const Expr again = a.is(Kind::Add) ? build_add(operands(a)) : build_mul(operands(a));
            if (again != a) {
                fail(r, "rebuilding " + a.to_string() + " gave " + again.to_string());
            }
        }
    }
    return r;
}

PropertyResult prop_gcd_divisibility(int cases, std::uint64_t seed) {
    PropertyResult r{"gcd-divisibility"};
    Gen g(seed);
    const auto all = xyz();
    for (int c = 0; c < cases; ++c) {
        ++r.cases;
        const std::vector<Expr> vars(all.begin(), all.begin() + g.between(1, 3));
        const Expr f = expand(g.nonzero_poly(vars, static_cast<int>(g.between(1, 3)), 2, 5));
        const Expr a = expand(f * g.nonzero_poly(vars, static_cast<int>(g.between(1, 4)), 3, 6));
        const Expr b = expand(f * g.nonzero_poly(vars, static_cast<int>(g.between(1, 4)), 3, 6));
        const Expr d = poly_gcd(a, b);
        const auto qa = divide(a, d);
        const auto qb = divide(b, d);
        if (!qa || !qb) {
            fail(r, "gcd(" + a.to_string() + ", " + b.to_string() + ") = " + d.to_string() + " does not divide");
            continue;
        }
        if (!divide(d, f)) {
            fail(r, "common factor " + f.to_string() + " missing from " + d.to_string());
            continue;
        }
        const Expr co = poly_gcd(*qa, *qb);
        if (!co.is_one() && !co.is_minus_one()) {
            fail(r, "cofactors of " + a.to_string() + ", " + b.to_string() + " share " + co.to_string());
        }
    }
    return r;
}

PropertyResult prop_heur_matches_sr(int cases, std::uint64_t seed) {
    PropertyResult r{"heur-gcd=sr-gcd"};
    Gen g(seed);
    const auto all = xyz();
    const std::vector<Expr> vars(all.begin(), all.begin() + 2);
    for (int c = 0; c < cases; ++c) {
        ++r.cases;
        Expr a = g.nonzero_poly(vars, static_cast<int>(g.between(1, 4)), 3, 9);
        Expr b = g.nonzero_poly(vars, static_cast<int>(g.between(1, 4)), 3, 9);
        if (g.coin()) {
            const Expr f = g.nonzero_poly(vars, static_cast<int>(g.between(1, 3)), 2, 9);
            a = a * f;
            b = b * f;
        }
        a = expand(a);
        b = expand(b);
        const auto h = heur_gcd(a, b);
        if (!h) {
            ++r.skipped;
            continue;
        }
        const Expr s = sr_gcd(a, b);
        if (*h != s && *h != expand(-s)) {
            fail(r, "heur " + h->to_string() + " vs sr " + s.to_string());
        }
    }
    return r;
}

PropertyResult prop_normal(int cases, int points, std::uint64_t seed) {
    PropertyResult r{"normal"};
    Gen g(seed);
    const auto all = xyz();
    const Expr x = all[0], y = all[1];
    const std::vector<Expr> vars{x, y};
    for (int c = 0; c < cases; ++c) {
        ++r.cases;
        const Expr common = g.nonzero_poly(vars, static_cast<int>(g.between(1, 3)), 2, 4);
        Expr e = expand(g.nonzero_poly(vars, 3, 2, 5) * common) / expand(g.nonzero_poly(vars, 3, 2, 5) * common) +
                 g.poly(vars, 2, 2, 5) / g.nonzero_poly(vars, 2, 2, 5);
        switch (g.between(0, 3)) {
        case 0:
            e = e * exp(x) + Expr(1) / exp(x);
            break;
        case 1:
            e = e + sin(y) / (x + Expr(2));
            break;
        case 2:
            e = pow(e, Expr(g.between(-2, 2) == 0 ? 2 : -1));
            break;
        default:
            break;
        }
        Expr n1;
        try {
            n1 = normal(e);
        } catch (const DivisionByZero&) {
            ++r.skipped;
            continue;
        }
        const Expr n2 = normal(n1);
        if (n2 != n1) {
            fail(r, "normal not idempotent on " + e.to_string());
            continue;
        }
        for (int p = 0; p < points; ++p) {
            const Expr at = make_list({eq(x, Expr(g.rational(7, 5))), eq(y, Expr(g.rational(7, 5)))});
            Number before, after;
            try {
                before = oracle::numeric_value(subs(e, at), 20);
                after = oracle::numeric_value(subs(n1, at), 20);
            } catch (const DivisionByZero&) {
                continue;
            }
            if (!oracle::rel_close(before, after, 1e-10)) {
                fail(r, "normal(" + e.to_string() + ") at " + at.to_string() + ": " + before.to_string() +
                            " vs " + after.to_string());
                break;
            }
        }
    }
    return r;
}

namespace {

Expr smooth_leaf(Gen& g, const Expr& x) {
    const Expr a = Expr(g.rational(3, 2, true));
    const Expr b = Expr(g.rational(3, 2));
    switch (g.between(0, 6)) {
    case 0:
        return sin(a * x + b);
    case 1:
        return cos(a * x + b);
    case 2:
        return exp(a * x);
    case 3:
        return pow(Expr(1) + pow(x, Expr(2)), Expr(g.pick(std::vector<long>{-2, -1, 2, 3})));
    case 4:
        return log(Expr(2) + x);
    case 5:
        return sqrt(Expr(1) + x);
    default:
        return pow(x, Expr(g.between(1, 4))) * a;
    }
}

Expr smooth(Gen& g, const Expr& x, int depth) {
    if (depth <= 0) {
        return smooth_leaf(g, x);
    }
    switch (g.between(0, 2)) {
    case 0:
        return smooth(g, x, depth - 1) + smooth(g, x, depth - 1);
    case 1:
        return smooth(g, x, depth - 1) * smooth(g, x, depth - 1);
    default: {
        // compose with an entire outer function
        const Expr inner = smooth(g, x, depth - 1);
        switch (g.between(0, 2)) {
        case 0:
            return sin(inner);
        case 1:
            return cos(inner);
        default:
            return exp(inner / Expr(4));
        }
    }
    }
}

} // namespace

PropertyResult prop_diff_finite_difference(int cases, std::uint64_t seed) {
    PropertyResult r{"diff-vs-finite-difference"};
    Gen g(seed);
    const Expr x = xyz()[0];
    const int digits = 50;
    const Number h = Number::make(1, mpz_class("1000000000000"));
    for (int c = 0; c < cases; ++c) {
        ++r.cases;
        const Expr f = smooth(g, x, static_cast<int>(g.between(0, 2)));
        const Number x0 = Number::make(g.between(20, 120), 100);
        auto value = [&](const Number& at) { return oracle::numeric_value(subs(f, eq(x, Expr(at))), digits); };
        const Number fd = oracle::central_difference(value, x0, h);
        const Number exact = oracle::numeric_value(subs(diff(f, x), eq(x, Expr(x0))), digits);
        if (!oracle::rel_close(fd, exact, 1e-8)) {
            fail(r, "d/dx " + f.to_string() + " at " + x0.to_string() + ": " + exact.to_string(15) + " vs " +
                        fd.to_string(15));
        }
    }
    return r;
}

PropertyResult prop_series_truncation(int cases, std::uint64_t seed) {
    PropertyResult r{"series-truncation"};
    Gen g(seed);
    const Expr x = xyz()[0];
    const Expr one(1);
    const std::vector<Expr> at_zero{
        one / (one - x),     exp(x),          sin(x),           cos(x) / (one + x),
        log(one + x),        sqrt(one + x),   pow(one + x, Expr(-3)), gamma(one + x),
        gamma(x),            one / sin(x),    exp(sin(x)),      x / (exp(x) - one),
        pow(x, Expr(2)) + x, cos(x) / pow(x, Expr(2)),
    };
    const std::vector<Expr> at_one{log(x), one / x, sqrt(x), exp(x) / (one + x), gamma(x)};
    for (int c = 0; c < cases; ++c) {
        ++r.cases;
        const bool zero = g.coin(0.75);
        const auto& pool = zero ? at_zero : at_one;
        Expr e = g.pick(pool);
        switch (g.between(0, 2)) {
        case 0:
            e = e * g.pick(pool);
            break;
        case 1:
            e = e + g.pick(pool);
            break;
        default:
            break;
        }
        const Expr at = eq(x, zero ? Expr(0) : one);
        const int n = static_cast<int>(g.between(1, 5));
        const int m = n + static_cast<int>(g.between(1, 4));
        try {
            const PSeries sn = series_of(e, at, n);
            const PSeries sm = series_of(e, at, m).truncate(n);
            if (sn.order() != sm.order()) {
                fail(r, e.to_string() + ": order " + ps_to_string(sn) + " vs " + ps_to_string(sm));
                continue;
            }
            const int lo = std::min(sn.ldegree(), sm.ldegree());
            const int hi = sn.order() ? *sn.order() : n;
            for (int k = lo; k < hi; ++k) {
                if (!normal(sn.coeff(k) - sm.coeff(k)).is_zero()) {
                    fail(r, e.to_string() + " at order " + std::to_string(n) + " vs " + std::to_string(m) + ": " +
                                ps_to_string(sn) + " vs " + ps_to_string(sm));
                    break;
                }
            }
        } catch (const Error& err) {
            fail(r, e.to_string() + ": " + err.what());
        }
    }
    return r;
}

PropertyResult prop_parse_roundtrip(int cases, std::uint64_t seed) {
    PropertyResult r{"parse-roundtrip"};
    Gen g(seed);
    Session session;
    const std::vector<Expr> atoms{session.symbol("x"), session.symbol("y"), session.symbol("z"), session.symbol("w")};
    auto decorate = [&](Expr e) {
        switch (g.between(0, 9)) {
        case 0:
            return gamma(e);
        case 1:
            return log(e);
        case 2:
            return zeta(e);
        case 3:
            return psi(e);
        case 4:
            return sqrt(e);
        case 5:
            return e * Euler() + Catalan();
        case 6:
            return e * Expr(Number::complex(Number(g.between(-3, 3)), Number(g.between(1, 3))));
        case 7:
            return pow(Expr(g.rational(5, 3, true)), e);
        default:
            return e;
        }
    };
    for (int c = 0; c < cases; ++c) {
        ++r.cases;
        Expr e;
        try {
            switch (g.between(0, 9)) {
            case 0:
                e = make_list({decorate(g.expr(atoms, 2)), g.expr(atoms, 1)});
                break;
            case 1:
                e = make_relational(g.expr(atoms, 2), decorate(g.expr(atoms, 2)),
                                    g.pick(std::vector<RelOp>{RelOp::Eq, RelOp::Ne, RelOp::Lt, RelOp::Le,
                                                              RelOp::Gt, RelOp::Ge}));
                break;
            case 2:
                e = matrix({{g.expr(atoms, 1), g.expr(atoms, 1)}, {g.expr(atoms, 1), decorate(g.expr(atoms, 1))}});
                break;
            default:
                e = decorate(g.expr(atoms, 3));
                break;
            }
        } catch (const Error&) {
            // e.g. a pole hit while building the sample
            ++r.skipped;
            continue;
        }
        const std::string text = e.to_string();
        try {
            const Expr back = session.parse(text);
            if (back != e) {
                fail(r, text + " reparsed as " + back.to_string());
            }
        } catch (const Error& err) {
            fail(r, text + ": " + err.what());
        }
    }
    return r;
}

} // namespace symkit::testing
