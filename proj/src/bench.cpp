#include "symkit/bench.hpp"

#include "symkit/expr.hpp"
#include "symkit/function.hpp"
#include "symkit/matrix.hpp"
#include "symkit/ops.hpp"
#include "symkit/poly.hpp"
#include "symkit/series.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>

namespace symkit {

namespace {

class Stopwatch {
public:
    void start() { begin_ = Clock::now(); }
    void stop() { total_ += std::chrono::duration<double>(Clock::now() - begin_).count(); }
    double seconds() const { return total_; }

private:
    using Clock = std::chrono::steady_clock;
    Clock::time_point begin_;
    double total_ = 0.0;
};

void check(bool ok, const std::string& what) {
    if (!ok) {
        throw BenchFailure(what);
    }
}

std::vector<Expr> symbols(const std::string& stem, long n) {
    std::vector<Expr> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        out.push_back(symbol(stem + std::to_string(i)));
    }
    return out;
}

Expr hilbert(long n) {
    std::vector<Expr> entries;
    entries.reserve(static_cast<std::size_t>(n * n));
    for (long i = 1; i <= n; ++i) {
        for (long j = 1; j <= n; ++j) {
            entries.push_back(Expr(Number::make(1, i + j - 1)));
        }
    }
    return matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n), std::move(entries));
}

/// Sparse integer matrix of the P and Q tests: about 15% of the off-diagonal
/// entries are nonzero, values in [-9, 9], diagonal in [1, 9].
Expr sparse_integer_matrix(long n) {
    std::mt19937_64 rng(0x5eed0000ULL + static_cast<std::uint64_t>(n));
    std::uniform_int_distribution<int> value(1, 9);
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_real_distribution<double> fill(0.0, 1.0);
    std::vector<Expr> entries;
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) {
            if (i == j) {
                entries.emplace_back(value(rng));
            } else if (fill(rng) < 0.15) {
                const int v = value(rng);
                entries.emplace_back(sign(rng) ? v : -v);
            } else {
                entries.emplace_back(0);
            }
        }
    }
    return matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n), std::move(entries));
}

std::string run_expand_subs(long n, Stopwatch& sw) {
    check(n >= 2, "expand-subs needs n >= 2");
    const auto a = symbols("a", n);
    sw.start();
    const Expr e = expand(pow(build_add(a), Expr(2)));
    sw.stop();
    const std::size_t want = static_cast<std::size_t>(n * (n + 1) / 2);
    check(e.is(Kind::Add) && e.as<PairSeqNode>().pairs.size() == want,
          "expanded square has the wrong number of terms");
    sw.start();
    std::vector<Expr> tail(a.begin() + 2, a.end());
    const Expr r = expand(subs(e, eq(a[0], -build_add(tail))));
    sw.stop();
    check(r == pow(a[1], Expr(2)), "expected a1^2, got " + r.to_string());
    return r.to_string();
}

std::string run_gamma_series(long n, Stopwatch& sw) {
    const Expr x = symbol("x");
    sw.start();
    const PSeries s = series_of(gamma(x), eq(x, Expr(0)), static_cast<int>(n));
    sw.stop();
    if (n > -1) {
        check(s.coeff(-1) == Expr(1), "x^-1 coefficient is not 1");
    }
    if (n > 0) {
        check(s.coeff(0) == -Euler(), "constant coefficient is not -Euler");
    }
    if (n > 1) {
        const Expr want = pow(Pi(), Expr(2)) / Expr(12) + pow(Euler(), Expr(2)) / Expr(2);
        check(normal(s.coeff(1) - want) == Expr(0), "x coefficient mismatch: " + s.coeff(1).to_string());
    }
    return ps_to_string(s);
}

std::string run_a(long n, Stopwatch& sw) {
    std::string last;
    for (long i = 1; i <= n; ++i) {
        sw.start();
        const Expr r = factorial(Expr(1000 + i)) / factorial(Expr(900 + i));
        sw.stop();
        mpz_class want = 1;
        for (long k = 901 + i; k <= 1000 + i; ++k) {
            want *= k;
        }
        check(r == Expr(Number(want)), "factorial quotient mismatch at i=" + std::to_string(i));
        last = r.to_string();
    }
    return last;
}

std::string run_b(long n, Stopwatch& sw) {
    sw.start();
    Expr s(0);
    for (long i = 1; i <= n; ++i) {
        s = s + Expr(Number::make(1, i));
    }
    sw.stop();
    mpq_class want = 0;
    for (long i = 1; i <= n; ++i) {
        want += mpq_class(1, i);
    }
    check(s == Expr(Number(want)), "harmonic sum mismatch");
    return s.to_string();
}

std::string run_c(long n, Stopwatch& sw) {
    const Number x(13 * 17 * 31);
    const Number y(13 * 19 * 29);
    std::string last;
    for (long i = 1; i <= n; ++i) {
        const Number a = pow(x, Number(300 + i % 181));
        const Number b = pow(y, Number(200 + i % 183));
        sw.start();
        const Number g = gcd(a, b);
        sw.stop();
        const Number ca = a / g;
        const Number cb = b / g;
        check(ca.is_integer() && cb.is_integer(), "gcd does not divide its inputs");
        check(gcd(ca, cb).is_one(), "cofactors are not coprime");
        last = g.to_string();
    }
    return last;
}

Expr rational_sum(long n, const std::function<long(long)>& shift, const Expr& y, const Expr& t) {
    std::vector<Expr> terms;
    for (long i = 1; i <= n; ++i) {
        terms.push_back(Expr(i) * y * pow(t, Expr(i)) / pow(y + Expr(shift(i)) * t, Expr(i)));
    }
    return build_add(std::move(terms));
}

std::string run_rational_sum(long n, Stopwatch& sw, const std::function<long(long)>& shift) {
    const Expr y = symbol("y");
    const Expr t = symbol("t");
    sw.start();
    const Expr s = rational_sum(n, shift, y, t);
    const Expr r = normal(s);
    sw.stop();
    const Expr at = make_list({eq(y, Expr(Number::make(3, 7))), eq(t, Expr(Number::make(5, 11)))});
    check(subs(r, at) == subs(s, at), "normal changed the value of the sum");
    return r.to_string();
}

std::string run_gcd_test(const Expr& base, const Expr& p, const Expr& q, long n, Stopwatch& sw) {
    const Expr ep = expand(p);
    const Expr eq_ = expand(q);
    sw.start();
    const Expr g = poly_gcd(ep, eq_);
    sw.stop();
    const auto cp = divide(ep, g);
    const auto cq = divide(eq_, g);
    check(cp && cq, "gcd does not divide both inputs");
    check(poly_gcd(*cp, *cq) == Expr(1), "cofactors are not coprime");
    const Expr want = expand(pow(base, Expr(n)));
    check(g == want || g == expand(-want), "unexpected gcd " + g.to_string());
    return g.to_string();
}

std::string run_f(long n, Stopwatch& sw) {
    const Expr x = symbol("x");
    const Expr y = symbol("y");
    const Expr base = pow(x, Expr(2)) - Expr(3) * x * y + pow(y, Expr(2));
    const Expr p = pow(base, Expr(n + 1)) * pow(Expr(3) * x - Expr(7) * y + Expr(2), Expr(n + 2));
    const Expr q = pow(base, Expr(n)) * pow(Expr(3) * x - Expr(7) * y - Expr(2), Expr(n + 3));
    return run_gcd_test(base, p, q, n, sw);
}

std::string run_g(long n, Stopwatch& sw) {
    const Expr x = symbol("x");
    const Expr y = symbol("y");
    const Expr z = symbol("z");
    const Expr base = Expr(7) * y * pow(x, Expr(2)) * pow(z, Expr(2)) - Expr(3) * x * y * z +
                      Expr(11) * (x + Expr(1)) * pow(y, Expr(2)) + Expr(5) * z + Expr(1);
    const Expr p = pow(base, Expr(n + 1)) * pow(Expr(3) * x - Expr(7) * y + Expr(2) * z - Expr(3), Expr(n + 2));
    const Expr q = pow(base, Expr(n)) * pow(Expr(3) * x - Expr(7) * y + Expr(2) * z + Expr(3), Expr(n + 3));
    return run_gcd_test(base, p, q, n, sw);
}

std::string run_h(long n, Stopwatch& sw) {
    const Expr m = hilbert(n);
    sw.start();
    const Expr d = mat_det(m);
    sw.stop();
    // det H_n = c_n^4 / c_2n with c_k = 1! 2! ... (k-1)!
    auto c = [](long k) {
        mpz_class prod = 1, f = 1;
        for (long j = 1; j < k; ++j) {
            f *= j;
            prod *= f;
        }
        return prod;
    };
    const mpz_class cn = c(n);
    check(d == Expr(Number::make(cn * cn * cn * cn, c(2 * n))), "Hilbert determinant mismatch");
    return d.to_string();
}

std::string run_inverse(long n, Stopwatch& sw) {
    const Expr m = hilbert(n);
    sw.start();
    const Expr inv = mat_inverse(m);
    sw.stop();
    for (const auto& e : inv.as<MatrixNode>().entries) {
        check(e.is_integer(), "inverse entry is not an integer: " + e.to_string());
    }
    check(mat_entry(inv, 0, 0) == Expr(n * n), "inverse corner entry is not n^2");
    return inv.to_string();
}

std::string run_check_inverse(long n, Stopwatch& sw) {
    const Expr m = hilbert(n);
    const Expr inv = mat_inverse(m);
    sw.start();
    const Expr prod = mat_mul(m, inv);
    sw.stop();
    check(prod == identity_matrix(static_cast<std::size_t>(n)), "H * H^-1 is not the identity");
    return prod.to_string();
}

std::string run_m1(long n, Stopwatch& sw) {
    const auto a = symbols("a", n);
    std::vector<Expr> entries(static_cast<std::size_t>(n * n), Expr(0));
    for (long i = 0; i < n; ++i) {
        entries[static_cast<std::size_t>(i * n + i)] = a[static_cast<std::size_t>(i)];
        if (i + 1 < n) {
            entries[static_cast<std::size_t>(i * n + i + 1)] = Expr(1);
            entries[static_cast<std::size_t>((i + 1) * n + i)] = Expr(-1);
        }
    }
    const Expr m = matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n), std::move(entries));
    sw.start();
    const Expr d = mat_det(m);
    sw.stop();
    // continuant: D_k = a_k D_(k-1) + D_(k-2)
    Expr prev(1), cur = a[0];
    for (long k = 1; k < n; ++k) {
        Expr next = expand(a[static_cast<std::size_t>(k)] * cur + prev);
        prev = cur;
        cur = next;
    }
    check(expand(d - cur) == Expr(0), "tridiagonal determinant mismatch");
    return d.to_string();
}

std::string run_p(long n, Stopwatch& sw) {
    const Expr m = sparse_integer_matrix(n);
    sw.start();
    const Expr d = mat_det(m);
    sw.stop();
    check(!d.is_zero(), "sparse test matrix is singular");
    const Expr di = mat_det(mat_inverse(m));
    check(d * di == Expr(1), "det(A) det(A^-1) != 1");
    return d.to_string();
}

std::string run_q(long n, Stopwatch& sw) {
    const Expr m = sparse_integer_matrix(n);
    const Expr lambda = symbol("lambda");
    sw.start();
    const Expr cp = mat_charpoly(m, lambda);
    sw.stop();
    for (const Number& r : {Number::make(1, 3), Number(-2), Number::make(7, 5)}) {
        const Expr shifted = mat_sub(m, mat_scale(identity_matrix(static_cast<std::size_t>(n)), Expr(r)));
        check(subs(cp, eq(lambda, Expr(r))) == mat_det(shifted), "charpoly disagrees with det(m - r I)");
    }
    return cp.to_string();
}

struct TestDef {
    long default_n;
    std::function<std::string(long, Stopwatch&)> run;
};

const std::map<std::string, TestDef>& registry() {
    static const std::map<std::string, TestDef> tests = {
        {"expand-subs", {100, run_expand_subs}},
        {"gamma-series", {20, run_gamma_series}},
        {"A", {100, run_a}},
        {"B", {1000, run_b}},
        {"C", {200, run_c}},
        {"D", {10, [](long n, Stopwatch& sw) { return run_rational_sum(n, sw, [](long i) { return i; }); }}},
        {"E", {10, [](long n, Stopwatch& sw) {
                   return run_rational_sum(n, sw, [](long i) { return i > 5 ? i - 5 : 5 - i; });
               }}},
        {"F", {3, run_f}},
        {"G", {3, run_g}},
        {"H", {80, run_h}},
        {"I", {40, run_inverse}},
        {"J", {40, run_check_inverse}},
        {"K", {70, run_inverse}},
        {"L", {70, run_check_inverse}},
        {"M1", {14, run_m1}},
        {"P", {40, run_p}},
        {"Q", {20, run_q}},
    };
    return tests;
}

const TestDef& lookup(const std::string& id) {
    auto it = registry().find(id);
    if (it == registry().end()) {
        throw DomainError("unknown benchmark '" + id + "'");
    }
    return it->second;
}

} // namespace

std::vector<std::string> bench_tests() {
    return {"expand-subs", "gamma-series", "A", "B", "C", "D", "E", "F", "G",
            "H",           "I",            "J", "K", "L", "M1", "P", "Q"};
}

long bench_default_n(const std::string& test_id) { return lookup(test_id).default_n; }

BenchRecord bench_run(const std::string& test_id, long n) {
    const TestDef& def = lookup(test_id);
    Stopwatch sw;
    const std::string printed = def.run(n, sw);
    return {test_id, n, sw.seconds(), digest_of(printed)};
}

std::string bench_csv_header() { return "test_id,n,seconds,digest"; }

std::string bench_csv_line(const BenchRecord& r) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s,%ld,%.6f,%016llx", r.test_id.c_str(), r.n, r.seconds,
                  static_cast<unsigned long long>(r.digest));
    return buf;
}

std::uint64_t digest_of(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace symkit
