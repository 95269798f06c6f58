#include "generators.hpp"
#include "oracles.hpp"

#include "symkit/errors.hpp"
#include "symkit/number.hpp"
#include "symkit/numeric_functions.hpp"

#include <gtest/gtest.h>

using namespace symkit;
using symkit::testing::Gen;
namespace oracle = symkit::testing::oracle;

namespace {

Number q(long p, long d) { return Number::make(p, d); }

} // namespace

TEST(NumMake, NormalizesToInteger) {
    const Number n = q(4, 2);
    EXPECT_TRUE(n.is_integer());
    EXPECT_EQ(n, Number(2));
}

TEST(NumMake, ReducesByGcd) {
    const Number n = q(6, 4);
    EXPECT_EQ(n.kind(), Number::Kind::Rational);
    EXPECT_EQ(n.numerator(), 3);
    EXPECT_EQ(n.denominator(), 2);
    EXPECT_EQ(n.to_string(), "3/2");
}

TEST(NumMake, ZeroNumerator) {
    EXPECT_TRUE(q(0, 7).is_integer());
    EXPECT_TRUE(q(0, 7).is_zero());
}

TEST(NumMake, NegativeDenominatorMovesSign) {
    EXPECT_EQ(q(3, -6).to_string(), "-1/2");
}

TEST(NumMake, ZeroDenominatorRaises) { EXPECT_THROW(q(1, 0), DivisionByZero); }

TEST(NumArith, ImaginaryPartVanishes) {
    const Number i = Number::imaginary_unit();
    const Number r = (q(7, 3) * i) * (Number(-3) * i);
    EXPECT_TRUE(r.is_real());
    EXPECT_TRUE(r.is_integer());
    EXPECT_EQ(r, Number(7));
}

TEST(NumArith, IntegerPower) { EXPECT_EQ(pow(Number(2), Number(10)), Number(1024)); }

TEST(NumArith, ExactDivision) {
    const Number r = Number(1) / Number(3);
    EXPECT_EQ(r.kind(), Number::Kind::Rational);
    EXPECT_EQ(r.to_string(), "1/3");
}

TEST(NumArith, NegativePowerInverts) { EXPECT_EQ(pow(q(2, 3), Number(-2)), q(9, 4)); }

TEST(NumArith, ExactBaseWithFractionalExponentRejected) {
    EXPECT_THROW(pow(Number(2), q(1, 2)), DomainError);
}

TEST(NumArith, DivisionByZeroRaises) { EXPECT_THROW(Number(1) / Number(0), DivisionByZero); }

TEST(NumArith, ComplexPrint) {
    EXPECT_EQ(Number::complex(Number(2), Number(3)).to_string(), "2+3*I");
    EXPECT_EQ(Number::complex(Number(0), Number(-1)).to_string(), "-I");
}

TEST(NumArith, FloatContaminationIsMonotone) {
    const Number f = to_float(q(1, 4), Precision(20));
    const Number r = (f + Number(1)) * q(4, 5);
    EXPECT_FALSE(r.is_exact());
    EXPECT_FALSE((r - r).is_exact());
}

TEST(NumGcd, SmallValues) {
    EXPECT_EQ(gcd(Number(12), Number(18)), Number(6));
    EXPECT_EQ(gcd(Number(0), Number(5)), Number(5));
}

TEST(NumGcd, LargePowersAgainstBinaryGcd) {
    const mpz_class a = (mpz_class(1) << 100) * 3;
    const mpz_class b = (mpz_class(1) << 99) * 5;
    EXPECT_EQ(gcd(Number(a), Number(b)), Number(oracle::binary_gcd(a, b)));
    EXPECT_EQ(gcd(Number(a), Number(b)), Number(mpz_class(mpz_class(1) << 99)));
}

TEST(NumGcd, LcmOfIntegers) { EXPECT_EQ(lcm(Number(4), Number(6)), Number(12)); }

TEST(NumFactorial, Values) {
    EXPECT_EQ(factorial(Number(5)), Number(120));
    EXPECT_EQ(factorial(Number(0)), Number(1));
    EXPECT_EQ(factorial(Number(10)) / factorial(Number(8)), Number(90));
}

TEST(NumFactorial, RejectsNegative) { EXPECT_THROW(factorial(Number(-1)), DomainError); }

TEST(NumToFloat, Examples) {
    EXPECT_EQ(to_float(q(4, 5), Precision(20)).to_string(20), "0.80000000000000000000");
    // default print is the shortest string that reads back at the value's precision
    EXPECT_EQ(to_float(q(4, 5), Precision(20)).to_string(), "0.8");
    EXPECT_EQ(to_float(q(1, 3), Precision(5)).to_string(), "0.33333");
}

TEST(NumToFloat, HermiteValueIsCorrectlyRounded) {
    // 5897162382592 / 5^11 = 120773.88559548416 exactly
    const Number v = Number::make(mpz_class("5897162382592"), mpz_class("48828125"));
    EXPECT_EQ(to_float(v, Precision(19)).to_string(19), "120773.8855954841600");
}

TEST(NumToFloat, DoubleInputKeepsBinaryValue) {
    EXPECT_EQ(to_float(Number::from_double(0.8), Precision(20)).to_string(), "0.80000000000000004441");
}

TEST(NumFromString, DecimalsAndExponents) {
    EXPECT_EQ(Number::from_string("1.60219e-19").to_string(6), "1.60219E-19");
    EXPECT_EQ(Number::from_string("42"), Number(42));
    EXPECT_EQ(Number::from_string("-0.5").to_string(), "-0.5");
    EXPECT_EQ(Number::from_string("-1").to_string(), "-1");
}

TEST(Bernoulli, MatchesRecurrenceOracle) {
    EXPECT_EQ(bernoulli(0), Number(1));
    EXPECT_EQ(bernoulli(1), q(-1, 2));
    EXPECT_EQ(bernoulli(2), q(1, 6));
    EXPECT_EQ(bernoulli(4), q(-1, 30));
    for (unsigned n = 0; n <= 40; ++n) {
        EXPECT_EQ(bernoulli(n), Number(oracle::bernoulli(n))) << "n=" << n;
    }
}

TEST(Bernoulli, OddIndicesAboveOneVanish) {
    for (unsigned n = 3; n < 30; n += 2) {
        EXPECT_TRUE(bernoulli(n).is_zero());
    }
}

TEST(NumericFunctions, ZetaTwo) {
    const Number z = numeric::zeta(Number(2), Precision(20));
    EXPECT_EQ(z.to_string(20), "1.6449340668482264365");
}

TEST(NumericFunctions, GammaAtHalf) {
    // Gamma(1/2)^2 = Pi
    const Number g = numeric::gamma(q(1, 2), Precision(30));
    EXPECT_TRUE(oracle::rel_close(g * g, numeric::pi(Precision(30)), 1e-28));
}

TEST(NumericFunctions, LogZeroIsPole) { EXPECT_THROW(numeric::log(Number(0), Precision(20)), PoleError); }

// Invariants

TEST(NumInvariants, CanonicalRationals) {
    Gen g(101);
    for (int i = 0; i < 500; ++i) {
        const Number r = g.rational(1000, 1000);
        if (r.kind() == Number::Kind::Rational) {
            EXPECT_EQ(oracle::binary_gcd(abs(r.numerator()), r.denominator()), 1);
            EXPECT_GE(r.denominator(), 2);
        }
        EXPECT_EQ(Number::make(r.numerator(), r.denominator()), r);
    }
}

TEST(NumInvariants, FieldAxioms) {
    Gen g(102);
    for (int i = 0; i < 500; ++i) {
        const Number a = g.rational(50, 20), b = g.rational(50, 20), c = g.rational(50, 20);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_TRUE((a + (-a)).is_zero());
        if (!a.is_zero()) {
            EXPECT_TRUE((a * (Number(1) / a)).is_one());
        }
    }
}

TEST(NumInvariants, ComplexFieldAxioms) {
    Gen g(103);
    for (int i = 0; i < 200; ++i) {
        const Number a = Number::complex(g.rational(9, 5), g.rational(9, 5));
        const Number b = Number::complex(g.rational(9, 5), g.rational(9, 5));
        const Number c = g.rational(9, 5);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        if (!a.is_zero()) {
            EXPECT_TRUE((a * a.inverse()).is_one());
        }
    }
}

TEST(NumInvariants, ExactnessPreserved) {
    Gen g(104);
    for (int i = 0; i < 200; ++i) {
        const Number a = g.rational(99, 99), b = g.rational(99, 99, true);
        EXPECT_TRUE((a + b).is_exact());
        EXPECT_TRUE((a - b).is_exact());
        EXPECT_TRUE((a * b).is_exact());
        EXPECT_TRUE((a / b).is_exact());
        EXPECT_TRUE(pow(b, Number(g.between(-5, 5))).is_exact());
    }
}

TEST(NumInvariants, GcdDividesAndCofactorsCoprime) {
    Gen g(105);
    for (int i = 0; i < 500; ++i) {
        const Number common(g.between(1, 1000));
        const Number a = common * Number(g.between(-100000, 100000));
        const Number b = common * Number(g.between(-100000, 100000));
        const Number d = gcd(a, b);
        EXPECT_EQ(d, Number(oracle::binary_gcd(a.as_mpz(), b.as_mpz())));
        if (d.is_zero()) {
            continue;
        }
        EXPECT_TRUE((a / d).is_integer());
        EXPECT_TRUE((b / d).is_integer());
        EXPECT_TRUE(gcd(a / d, b / d).is_one());
    }
}

TEST(NumInvariants, RoundingBound) {
    Gen g(106);
    for (int i = 0; i < 300; ++i) {
        const Number a = g.rational(1000000, 100000, true);
        const int p = static_cast<int>(g.between(5, 40));
        const Number f = to_float(a, Precision(p));
        // |f - a| <= 10^(1-p) |a|
        const Number err = (f - a).abs();
        const Number bound = to_float(a.abs(), Precision(p + 10)) * pow(Number(10), Number(1 - p));
        EXPECT_LE(Number::compare_value(err, bound), 0) << a.to_string() << " at " << p;
    }
}
