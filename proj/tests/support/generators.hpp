#pragma once

#include "symkit/expr.hpp"
#include "symkit/function.hpp"
#include "symkit/ops.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace symkit::testing {

/// Seeded source of random numbers, expressions and polynomials.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    std::mt19937_64& engine() { return eng_; }

    long between(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(between(0, static_cast<long>(v.size()) - 1))];
    }

    template <typename T>
    std::vector<T> shuffled(std::vector<T> v) {
        std::shuffle(v.begin(), v.end(), eng_);
        return v;
    }

    /// p/q with |p| <= num and 1 <= q <= den.
    Number rational(long num, long den, bool nonzero = false) {
        for (;;) {
            Number r = Number::make(between(-num, num), between(1, den));
            if (!nonzero || !r.is_zero()) {
                return r;
            }
        }
    }

    /// Sum of `terms` monomials with integer coefficients in [-coef, coef].
    Expr poly(const std::vector<Expr>& vars, int terms, int max_deg, long coef) {
        std::vector<Expr> out;
        for (int t = 0; t < terms; ++t) {
            std::vector<Expr> f{Expr(between(-coef, coef))};
            for (const Expr& v : vars) {
                f.push_back(pow(v, Expr(between(0, max_deg))));
            }
            out.push_back(build_mul(std::move(f)));
        }
        return build_add(std::move(out));
    }

    /// Polynomial that is never zero (constant term fixed to a nonzero value).
    Expr nonzero_poly(const std::vector<Expr>& vars, int terms, int max_deg, long coef) {
        Expr p = poly(vars, terms, max_deg, coef);
        if (expand(p).is_zero()) {
            p = p + Expr(between(1, coef));
        }
        return p;
    }

    /// Random exact expression over `atoms`: sums, products, integer powers,
    /// and applications of sin/cos/exp.
    Expr expr(const std::vector<Expr>& atoms, int depth) {
        if (depth <= 0 || coin(0.3)) {
            return leaf(atoms);
        }
        switch (between(0, 5)) {
        case 0:
        case 1: {
            std::vector<Expr> ops;
            for (long k = between(2, 4); k > 0; --k) {
                ops.push_back(expr(atoms, depth - 1));
            }
            return build_add(std::move(ops));
        }
        case 2:
        case 3: {
            std::vector<Expr> ops;
            for (long k = between(2, 3); k > 0; --k) {
                ops.push_back(expr(atoms, depth - 1));
            }
            return build_mul(std::move(ops));
        }
        case 4: {
            long k = between(-2, 3);
            const Expr base = expr(atoms, depth - 1);
            if (k == 0 || (k < 0 && base.is_zero())) {
                k = 2;
            }
            return pow(base, Expr(k));
        }
        default: {
            const Expr arg = expr(atoms, depth - 1);
            switch (between(0, 2)) {
            case 0:
                return sin(arg);
            case 1:
                return cos(arg);
            default:
                return exp(arg);
            }
        }
        }
    }

    Expr leaf(const std::vector<Expr>& atoms) {
        if (coin(0.3)) {
            return Expr(rational(9, 4));
        }
        return pick(atoms);
    }

private:
    std::mt19937_64 eng_;
};

} // namespace symkit::testing
