#include "oracles.hpp"

#include "symkit/errors.hpp"
#include "symkit/function.hpp"
#include "symkit/numeric_functions.hpp"
#include "symkit/ops.hpp"
#include "symkit/poly.hpp"
#include "symkit/series.hpp"

#include <gtest/gtest.h>

using namespace symkit;
namespace oracle = symkit::testing::oracle;

namespace {

Expr q(long p, long d) { return Expr(Number::make(p, d)); }

const FunctionDef& inert_f() {
    static const FunctionDef& def = fn_register(FunctionDef{"f_inert_test", 1, {}, {}, {}, {}, {}, 0});
    return def;
}

} // namespace

TEST(Registry, BuiltinsAreRegistered) {
    for (const char* name : {"sin", "cos", "exp", "log", "gamma", "psi", "zeta", "factorial"}) {
        EXPECT_NE(fn_lookup(name), nullptr) << name;
    }
    EXPECT_EQ(fn_lookup("no_such_function"), nullptr);
}

TEST(Registry, DuplicateNameRaises) {
    EXPECT_THROW(fn_register(FunctionDef{"sin", 1, {}, {}, {}, {}, {}, 0}), RegistrationError);
}

TEST(Registry, HooklessFunctionIsFullyDeferred) {
    const Expr x = symbol("x");
    const Expr fx = fn_apply(inert_f(), {x});
    EXPECT_EQ(fx.to_string(), "f_inert_test(x)");
    EXPECT_EQ(evalf(fn_apply(inert_f(), {Expr(2)})).to_string(), "f_inert_test(2.0)");
    EXPECT_THROW(diff(fx, x), UnevaluatedDerivative);
    EXPECT_THROW(series_of(fx, eq(x, Expr(0)), 3), Error);
}

TEST(Registry, ArityChecked) { EXPECT_THROW(fn_apply(sin_function(), {Expr(1), Expr(2)}), DomainError); }

TEST(Apply, DeferredSine) {
    const Expr x = symbol("x"), y = symbol("y");
    EXPECT_EQ(sin(Pi() * (x + y / Expr(2))).to_string(), "sin(Pi*(x+1/2*y))");
    EXPECT_EQ(sin(q(23, 2) * Pi()), Expr(-1));
    EXPECT_EQ(exp(Expr(0)), Expr(1));
}

TEST(Apply, TrigTable) {
    EXPECT_EQ(sin(Pi()), Expr(0));
    EXPECT_EQ(cos(Pi()), Expr(-1));
    EXPECT_EQ(cos(q(1, 2) * Pi()), Expr(0));
    EXPECT_EQ(sin(q(-1, 2) * Pi()), Expr(-1));
    EXPECT_EQ(sin(Expr(0)), Expr(0));
    EXPECT_EQ(cos(Expr(0)), Expr(1));
    // outside the table stays inert
    EXPECT_TRUE(sin(q(1, 3) * Pi()).is(Kind::Function));
}

TEST(Apply, DeferredLawSurvivesSubsAndExpand) {
    const Expr x = symbol("x"), y = symbol("y");
    const Expr e = sin(pow(x + y, Expr(2)));
    // only the argument is rewritten
    EXPECT_EQ(expand(e), sin(expand(pow(x + y, Expr(2)))));
    EXPECT_TRUE(expand(e).is(Kind::Function));
    EXPECT_EQ(subs(e, eq(y, Expr(1))), sin(pow(x + Expr(1), Expr(2))));
    EXPECT_EQ(gamma(x).to_string(), "gamma(x)");
    EXPECT_EQ(zeta(x).to_string(), "zeta(x)");
    EXPECT_EQ(psi(x).to_string(), "psi(x)");
    EXPECT_EQ(psi(Expr(2), x).to_string(), "psi(2,x)");
}

TEST(Evalf, Examples) {
    EXPECT_EQ(sin(q(23, 2) * Pi()), Expr(-1));
    const Expr direct = evalf(sin(evalf(q(23, 2) * Pi())));
    ASSERT_TRUE(direct.is_numeric());
    EXPECT_LE((direct.number() - Number(-1)).abs().to_double(), 1e-18);
    EXPECT_EQ(log(Expr(1)), Expr(0));
    EXPECT_EQ(evalf(zeta(Expr(2))).to_string(), "1.6449340668482264365");
}

TEST(Evalf, ExactRuleAgreesWithNumericPath) {
    // 23/2 Pi as a float, then sin at 20 digits
    const Number arg = numeric::pi(Precision(20)) * Number::make(23, 2);
    const Number v = numeric::sin(arg, Precision(20));
    EXPECT_LE((v - Number(-1)).abs().to_double(), 1e-18);
}

TEST(EvalRules, Examples) {
    EXPECT_EQ(zeta(Expr(2)), pow(Pi(), Expr(2)) / Expr(6));
    EXPECT_EQ(zeta(Expr(4)), pow(Pi(), Expr(4)) / Expr(90));
    EXPECT_EQ(zeta(Expr(0)), q(-1, 2));
    EXPECT_EQ(zeta(Expr(-1)), q(-1, 12));
    EXPECT_TRUE(zeta(Expr(3)).is(Kind::Function));
    EXPECT_THROW(zeta(Expr(1)), PoleError);
    EXPECT_EQ(psi(Expr(1)), -Euler());
    EXPECT_EQ(psi(Expr(1), Expr(1)), pow(Pi(), Expr(2)) / Expr(6));
    EXPECT_EQ(psi(Expr(2), Expr(1)), Expr(-2) * zeta(Expr(3)));
    EXPECT_EQ(gamma(Expr(5)), Expr(24));
    EXPECT_THROW(gamma(Expr(0)), PoleError);
    EXPECT_THROW(gamma(Expr(-3)), PoleError);
    EXPECT_THROW(log(Expr(0)), PoleError);
    EXPECT_EQ(exp(log(symbol("y"))).to_string(), "y");
    EXPECT_EQ(factorial(Expr(6)), Expr(720));
}

TEST(GammaSeries, DisplayedExpansion) {
    const Expr x = symbol("x");
    const PSeries s = series_of(gamma(x), eq(x, Expr(0)), 3);
    EXPECT_EQ(s.coeff(-1), Expr(1));
    EXPECT_EQ(s.coeff(0), -Euler());
    EXPECT_TRUE(normal(s.coeff(1) - (pow(Pi(), Expr(2)) / Expr(12) + pow(Euler(), Expr(2)) / Expr(2))).is_zero());
    const Expr c2 = -(pow(Pi(), Expr(2)) * Euler() / Expr(12) + pow(Euler(), Expr(3)) / Expr(6) + zeta(Expr(3)) / Expr(3));
    EXPECT_TRUE(normal(s.coeff(2) - c2).is_zero());
    EXPECT_EQ(s.order(), std::optional<int>(3));
    EXPECT_EQ(series_of(gamma(x), eq(x, Expr(0)), 2).coeff(0), -Euler());
}

TEST(GammaSeries, MatchesTruncatedExpOracle) {
    const Expr x = symbol("x");
    const PSeries s = series_of(gamma(x), eq(x, Expr(0)), 9);
    const auto want = oracle::gamma_coefficients(8);
    for (int k = -1; k <= 8; ++k) {
        EXPECT_TRUE(expand(s.coeff(k) - want[static_cast<std::size_t>(k + 1)]).is_zero()) << "x^" << k;
    }
}

TEST(GammaSeries, OtherPoles) {
    const Expr x = symbol("x");
    // Gamma at -1 has residue -1
    const PSeries s = series_of(gamma(x), eq(x, Expr(-1)), 1);
    EXPECT_EQ(s.coeff(-1), Expr(-1));
}

TEST(GammaSeries, FunctionalEquation) {
    const Expr x = symbol("x");
    for (int n = 1; n <= 8; ++n) {
        const PSeries lhs = series_of(gamma(x + Expr(1)), eq(x, Expr(0)), n);
        const PSeries rhs = ps_mul(series_of(x, eq(x, Expr(0)), n + 1), series_of(gamma(x), eq(x, Expr(0)), n));
        for (int k = 0; k < n; ++k) {
            EXPECT_TRUE(normal(lhs.coeff(k) - rhs.coeff(k)).is_zero()) << "n=" << n << " k=" << k;
        }
    }
}

TEST(Diff, Hooks) {
    const Expr x = symbol("x");
    EXPECT_EQ(diff(sin(Expr(2) * x), x), Expr(2) * cos(Expr(2) * x));
    EXPECT_EQ(diff(exp(-pow(x, Expr(2))), x), Expr(-2) * x * exp(-pow(x, Expr(2))));
    EXPECT_EQ(diff(log(x), x), pow(x, Expr(-1)));
    EXPECT_EQ(diff(gamma(x), x), gamma(x) * psi(x));
    EXPECT_EQ(diff(psi(x), x), psi(Expr(1), x));
}

TEST(ZetaInvariants, EvenValuesMatchDirectNumerics) {
    for (int k = 1; k <= 6; ++k) {
        const Number exact = oracle::numeric_value(zeta(Expr(2 * k)), 25);
        const Number direct = numeric::zeta(Number(2 * k), Precision(25));
        EXPECT_LE((exact - direct).abs().to_double(), 1e-18) << "k=" << k;
        // the rewrite against the Bernoulli oracle
        mpq_class c = oracle::bernoulli(static_cast<unsigned>(2 * k));
        mpz_class f = 1;
        for (int j = 2; j <= 2 * k; ++j) {
            f *= j;
        }
        c *= mpq_class(mpz_class(1) << (2 * k)) / mpq_class(2 * f);
        if (k % 2 == 0) {
            c = -c;
        }
        c.canonicalize();
        EXPECT_EQ(zeta(Expr(2 * k)), Expr(c) * pow(Pi(), Expr(2 * k)));
    }
}
