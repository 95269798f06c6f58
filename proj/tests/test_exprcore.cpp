#include "generators.hpp"
#include "oracles.hpp"

#include "symkit/errors.hpp"
#include "symkit/expr.hpp"
#include "symkit/function.hpp"
#include "symkit/ops.hpp"

#include <gtest/gtest.h>

using namespace symkit;
using symkit::testing::Gen;
namespace oracle = symkit::testing::oracle;

namespace {

const PairSeqNode& seq(const Expr& e) { return e.as<PairSeqNode>(); }

Expr q(long p, long d) { return Expr(Number::make(p, d)); }

// symmetric difference quotient at 20 digits, h = 1e-7
Number fd_at(const Expr& f, const Expr& x, const Number& at) {
    const Number h = Number::make(1, 10000000);
    auto value = [&](const Number& v) { return oracle::numeric_value(subs(f, eq(x, Expr(v))), 20); };
    return oracle::central_difference(value, at, h);
}

} // namespace

TEST(Symbols, NamedSymbolPrints) { EXPECT_EQ(symbol("x").to_string(), "x"); }

TEST(Symbols, AnonymousSymbolsAreDistinct) {
    const Expr a = symbol(), b = symbol();
    EXPECT_NE(a, b);
    EXPECT_EQ(a.to_string().rfind("symbol", 0), 0u);
}

TEST(Symbols, EqualNamesDoNotIdentify) {
    const Expr a = symbol("y"), b = symbol("y");
    EXPECT_NE(a, b);
    EXPECT_EQ(a.to_string(), b.to_string());
    EXPECT_FALSE((a - b).is_zero());
}

TEST(BuildAdd, MergesLikeTerms) {
    const Expr a = symbol("a");
    const Expr e = build_add({a, a, Expr(3)});
    ASSERT_TRUE(e.is(Kind::Add));
    EXPECT_EQ(seq(e).overall, Number(3));
    ASSERT_EQ(seq(e).pairs.size(), 1u);
    EXPECT_EQ(seq(e).pairs[0].rest, a);
    EXPECT_EQ(seq(e).pairs[0].key, Number(2));
}

TEST(BuildAdd, CoefficientsBecomeKeys) {
    const Expr a = symbol("a"), b = symbol("b");
    const Expr e = build_add({Expr(4) * a, Expr(5) * b, Expr(-3)});
    ASSERT_TRUE(e.is(Kind::Add));
    EXPECT_EQ(seq(e).overall, Number(-3));
    ASSERT_EQ(seq(e).pairs.size(), 2u);
    EXPECT_EQ(seq(e).pairs[0].rest, a);
    EXPECT_EQ(seq(e).pairs[0].key, Number(4));
    EXPECT_EQ(seq(e).pairs[1].rest, b);
    EXPECT_EQ(seq(e).pairs[1].key, Number(5));
}

TEST(BuildAdd, CancellationGivesNumeric) {
    const Expr x = symbol("x");
    const Expr e = build_add({x, -x});
    EXPECT_TRUE(e.is_numeric());
    EXPECT_TRUE(e.is_zero());
}

TEST(BuildAdd, NestedSumsFlatten) {
    const Expr x = symbol("x"), y = symbol("y");
    const Expr e = build_add({x + Expr(1), y + Expr(2), x});
    ASSERT_TRUE(e.is(Kind::Add));
    for (const auto& p : seq(e).pairs) {
        EXPECT_FALSE(p.rest.is(Kind::Add));
        EXPECT_FALSE(p.rest.is_numeric());
    }
    EXPECT_EQ(e.to_string(), "3+2*x+y");
}

TEST(BuildMul, PaperFigureTwo) {
    const Expr a = symbol("a"), b = symbol("b"), d = symbol("d"), e = symbol("e");
    const Expr sum = Expr(4) * a + Expr(5) * b - Expr(3);
    const Expr m = build_mul({Expr(2), pow(d, Expr(3)), sum, pow(e, Expr(-1))});
    ASSERT_TRUE(m.is(Kind::Mul));
    EXPECT_EQ(seq(m).overall, Number(2));
    ASSERT_EQ(seq(m).pairs.size(), 3u);
    EXPECT_EQ(seq(m).pairs[0].rest, d);
    EXPECT_EQ(seq(m).pairs[0].key, Number(3));
    EXPECT_EQ(seq(m).pairs[1].rest, e);
    EXPECT_EQ(seq(m).pairs[1].key, Number(-1));
    EXPECT_EQ(seq(m).pairs[2].rest, sum);
    EXPECT_EQ(seq(m).pairs[2].key, Number(1));
}

TEST(BuildMul, BasesMergeToPower) {
    const Expr x = symbol("x");
    const Expr m = build_mul({x, pow(x, Expr(2))});
    ASSERT_TRUE(m.is(Kind::Power));
    EXPECT_EQ(m.as<PowerNode>().base, x);
    EXPECT_EQ(m.as<PowerNode>().exponent, Expr(3));
}

TEST(BuildMul, ZeroAnnihilates) {
    const Expr x = symbol("x");
    EXPECT_TRUE(build_mul({Expr(0), x, sin(x)}).is_zero());
}

TEST(BuildPower, Rules) {
    const Expr x = symbol("x"), a = symbol("a"), b = symbol("b");
    EXPECT_EQ(build_power(x, Expr(0)), Expr(1));
    EXPECT_EQ(build_power(Expr(0), Expr(0)), Expr(1));
    const Expr r2 = build_power(Expr(2), q(1, 2));
    ASSERT_TRUE(r2.is(Kind::Power));
    EXPECT_EQ(r2.to_string(), "sqrt(2)");
    EXPECT_EQ(build_power(build_power(x, Expr(2)), Expr(3)), build_power(x, Expr(6)));
    EXPECT_EQ(build_power(Expr(4), q(1, 2)), Expr(2));
    // integer exponents distribute over products, others do not
    EXPECT_TRUE(build_power(a * b, Expr(2)).is(Kind::Mul));
    EXPECT_TRUE(build_power(a * b, q(1, 2)).is(Kind::Power));
    EXPECT_TRUE(build_power(a * b, x).is(Kind::Power));
}

TEST(BuildPower, ZeroToNegativeRaises) { EXPECT_THROW(build_power(Expr(0), Expr(-1)), DivisionByZero); }

TEST(Cmp, Basics) {
    const Expr x = symbol("x"), y = symbol("y");
    EXPECT_EQ(cmp(x, x), 0);
    EXPECT_EQ(cmp(build_add({x, y}), build_add({y, x})), 0);
    EXPECT_LT(cmp(Expr(5), x), 0);
    EXPECT_LT(cmp(x, y), 0);
}

TEST(Cmp, BuiltinConstantOrderIndependentOfFirstUse) {
    // Euler is touched first here; Pi still sorts first
    const Expr e = Euler();
    EXPECT_LT(cmp(Pi(), e), 0);
    EXPECT_LT(cmp(e, Catalan()), 0);
    EXPECT_EQ((pow(e, Expr(2)) + pow(Pi(), Expr(2))).to_string(), "Pi^2+Euler^2");
}

TEST(Cmp, TotalOrderOnPool) {
    Gen g(201);
    const std::vector<Expr> atoms{symbol("x"), symbol("y"), Pi()};
    std::vector<Expr> pool;
    for (int i = 0; i < 60; ++i) {
        pool.push_back(g.expr(atoms, 2));
    }
    for (const auto& a : pool) {
        for (const auto& b : pool) {
            EXPECT_EQ(cmp(a, b), -cmp(b, a));
            EXPECT_EQ(cmp(a, b) == 0, a.hash() == b.hash() && a == b);
            for (const auto& c : pool) {
                if (cmp(a, b) < 0 && cmp(b, c) < 0) {
                    EXPECT_LT(cmp(a, c), 0);
                }
            }
        }
    }
}

TEST(Subs, Examples) {
    const Expr a = symbol("a"), b = symbol("b"), x = symbol("x"), y = symbol("y");
    EXPECT_EQ(subs(Expr(5) * a, eq(a, b)), Expr(5) * b);
    const Expr s = sin(Pi() * (x + y / Expr(2)));
    EXPECT_EQ(subs(s, eq(y, Expr(1))).to_string(), "sin(Pi*(1/2+x))");
    EXPECT_EQ(subs(x + Expr(2) * y, make_list({eq(x, y), eq(y, x)})), y + Expr(2) * x);
}

TEST(Subs, RejectsNonSymbolLhs) {
    const Expr x = symbol("x");
    EXPECT_THROW(subs(x, eq(x + Expr(1), Expr(2))), UnsupportedPattern);
}

TEST(Diff, PolynomialSecondDerivative) {
    const Expr x = symbol("x");
    EXPECT_EQ(diff(pow(x, Expr(3)), x, 2), Expr(6) * x);
}

TEST(Diff, GaussianAgainstFiniteDifference) {
    const Expr x = symbol("x");
    const Expr f = exp(-pow(x, Expr(2)));
    const Expr d = diff(f, x);
    EXPECT_EQ(d, Expr(-2) * x * f);
    const Number at = Number::make(7, 10);
    const Number want = oracle::numeric_value(subs(d, eq(x, Expr(at))), 20);
    EXPECT_TRUE(oracle::rel_close(want, fd_at(f, x, at), 1e-10));
}

TEST(Diff, SineAgainstFiniteDifference) {
    const Expr x = symbol("x");
    const Expr f = sin(Expr(2) * x);
    const Expr d = diff(f, x);
    EXPECT_EQ(d, Expr(2) * cos(Expr(2) * x));
    const Number at = Number::make(7, 10);
    const Number want = oracle::numeric_value(subs(d, eq(x, Expr(at))), 20);
    EXPECT_TRUE(oracle::rel_close(want, fd_at(f, x, at), 1e-10));
}

TEST(Diff, ConstantsAndOtherSymbols) {
    const Expr x = symbol("x"), y = symbol("y");
    EXPECT_TRUE(diff(y, x).is_zero());
    EXPECT_TRUE(diff(Pi(), x).is_zero());
    EXPECT_EQ(diff(pow(x, y), x), y * pow(x, y - Expr(1)));
}

TEST(Expand, Examples) {
    const Expr x = symbol("x"), y = symbol("y");
    EXPECT_EQ(expand(x * (x + y)), pow(x, Expr(2)) + x * y);
    const Expr a0 = symbol("a0"), a1 = symbol("a1"), a2 = symbol("a2");
    const Expr sq = expand(pow(a0 + a1 + a2, Expr(2)));
    ASSERT_TRUE(sq.is(Kind::Add));
    EXPECT_EQ(seq(sq).pairs.size(), 6u);
    int twos = 0;
    for (const auto& p : seq(sq).pairs) {
        twos += p.key == Number(2);
    }
    EXPECT_EQ(twos, 3);
    EXPECT_EQ(expand(subs(sq, eq(a0, -a2))), pow(a1, Expr(2)));
}

TEST(Evalf, Examples) {
    const Expr qe = constant("qe", Number::from_string("1.60219e-19"));
    EXPECT_EQ(evalf(qe).to_string(), "1.60219E-19");
    const Expr s = evalf(sin(Expr(Number::from_string("36.128315516282622243"))));
    ASSERT_TRUE(s.is_numeric());
    EXPECT_TRUE(oracle::rel_close(s.number(), Number(-1), 1e-18));
    EXPECT_EQ(s.to_string(), "-1.0");
    const Expr x = symbol("x");
    const Expr half = evalf(x + q(1, 2));
    EXPECT_EQ(half, x + Expr(to_float(Number::make(1, 2), Precision(20))));
    EXPECT_EQ(half.to_string(), "0.5+x");
}

TEST(Evalf, ConstantsAtRequestedPrecision) {
    EXPECT_EQ(evalf(Pi(), Precision(30)).to_string(), "3.14159265358979323846264338328");
    EXPECT_EQ(evalf(Euler()).to_string(), "0.57721566490153286061");
}

TEST(ToString, Examples) {
    const Expr x = symbol("x"), y = symbol("y");
    EXPECT_EQ(sin(Pi() * (x + y / Expr(2))).to_string(), "sin(Pi*(x+1/2*y))");
    EXPECT_EQ(q(3, 2).to_string(), "3/2");
    EXPECT_EQ((x - y).to_string(), "x-y");
    EXPECT_EQ(pow(x, Expr(-1)).to_string(), "x^(-1)");
    EXPECT_EQ(pow(x + y, Expr(2)).to_string(), "(x+y)^2");
}

// Invariants

TEST(ExprInvariants, HandleCopiesCompareEqual) {
    const Expr x = symbol("x");
    const Expr e = expand(pow(x + Expr(1), Expr(5)));
    const Expr copy = e;
    EXPECT_EQ(copy.ptr(), e.ptr());
    EXPECT_EQ(copy, e);
    EXPECT_EQ(copy.hash(), e.hash());
}

TEST(ExprInvariants, CanonicalIdempotence) {
    Gen g(202);
    const std::vector<Expr> atoms{symbol("x"), symbol("y"), symbol("z")};
    for (int i = 0; i < 300; ++i) {
        const Expr e = g.expr(atoms, 3);
        const Expr again = map_operands(e, [](const Expr& o) { return o; });
        EXPECT_EQ(again, e) << e.to_string();
        if (e.is(Kind::Power)) {
            EXPECT_EQ(build_power(e.as<PowerNode>().base, e.as<PowerNode>().exponent), e);
        }
    }
}

TEST(ExprInvariants, ExpandIdempotent) {
    Gen g(203);
    const std::vector<Expr> vars{symbol("x"), symbol("y"), symbol("z")};
    for (int i = 0; i < 100; ++i) {
        const Expr e = pow(g.poly(vars, 3, 2, 5), Expr(g.between(1, 3))) * g.poly(vars, 2, 2, 5);
        const Expr once = expand(e);
        EXPECT_EQ(expand(once), once);
    }
}

TEST(ExprInvariants, SubsIdentityAndCommutesWithExpand) {
    Gen g(204);
    const Expr x = symbol("x"), y = symbol("y");
    const std::vector<Expr> vars{x, y};
    for (int i = 0; i < 100; ++i) {
        const Expr e = pow(g.poly(vars, 3, 2, 5), Expr(2)) * sin(g.poly(vars, 2, 1, 3));
        EXPECT_EQ(subs(e, eq(x, x)), e);
        const Expr b = make_list({eq(x, Expr(g.rational(9, 7))), eq(y, Expr(g.rational(9, 7)))});
        const Number lhs = oracle::numeric_value(expand(subs(e, b)), 20);
        const Number rhs = oracle::numeric_value(subs(expand(e), b), 20);
        EXPECT_TRUE(oracle::rel_close(lhs, rhs, 1e-10)) << e.to_string();
    }
}

TEST(ExprInvariants, DiffLinearityAndProductRule) {
    Gen g(205);
    const Expr x = symbol("x"), y = symbol("y");
    const std::vector<Expr> atoms{x, y};
    for (int i = 0; i < 200; ++i) {
        const Expr f = g.expr(atoms, 2), h = g.expr(atoms, 2);
        const Expr c(g.rational(9, 4));
        EXPECT_TRUE(expand(diff(c * f + h, x) - (c * diff(f, x) + diff(h, x))).is_zero());
        EXPECT_TRUE(expand(diff(f * h, x) - (diff(f, x) * h + f * diff(h, x))).is_zero())
            << f.to_string() << " * " << h.to_string();
    }
}

TEST(ExprInvariants, EvalfMatchesExpandedForm) {
    Gen g(206);
    const Expr x = symbol("x"), y = symbol("y");
    const std::vector<Expr> atoms{x, y};
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        const Expr e = g.expr(atoms, 3);
        const Expr at = make_list({eq(x, Expr(g.rational(5, 7, true))), eq(y, Expr(g.rational(5, 7, true)))});
        try {
            const Number a = oracle::numeric_value(subs(e, at), 20);
            const Number b = oracle::numeric_value(subs(expand(e), at), 20);
            EXPECT_TRUE(oracle::rel_close(a, b, 1e-10)) << e.to_string() << " at " << at.to_string();
            ++checked;
        } catch (const DivisionByZero&) {
        }
    }
    EXPECT_GT(checked, 150);
}
