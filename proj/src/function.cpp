#include "symkit/function.hpp"

#include "symkit/numeric_functions.hpp"
#include "symkit/ops.hpp"
#include "symkit/series.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace symkit {

namespace {

class Registry {
public:
    const FunctionDef& add(FunctionDef def) {
        std::unique_lock lock(mutex_);
        if (by_name_.count(def.name)) {
            throw RegistrationError("function '" + def.name + "' is already registered");
        }
        if (def.arity == 0) {
            throw RegistrationError("function arity must be positive");
        }
        def.serial = next_serial_++;
        defs_.push_back(std::move(def));
        const FunctionDef& stored = defs_.back();
        by_name_.emplace(stored.name, &stored);
        return stored;
    }

    const FunctionDef* find(std::string_view name) const {
        std::shared_lock lock(mutex_);
        auto it = by_name_.find(std::string(name));
        return it == by_name_.end() ? nullptr : it->second;
    }

private:
    mutable std::shared_mutex mutex_;
    std::deque<FunctionDef> defs_; // deque keeps references stable
    std::unordered_map<std::string, const FunctionDef*> by_name_;
    std::uint64_t next_serial_ = 1;
};

Registry& registry() {
    static Registry r;
    return r;
}

void ensure_builtins() {
    static std::once_flag once;
    std::call_once(once, [] {
        sin_function();
        cos_function();
        exp_function();
        log_function();
        gamma_function();
        psi_function();
        zeta_function();
        factorial_function();
    });
}

bool is_inexact(const Expr& e) { return e.is_numeric() && !e.number().is_exact(); }

int digits_of(const Number& n) { return n.float_digits() ? n.float_digits() : Precision::default_digits; }

/// r when x is r*Pi with r rational.
std::optional<Number> pi_multiple(const Expr& x) {
    if (x == Pi()) {
        return Number(1);
    }
    if (x.is(Kind::Mul)) {
        const auto& m = x.as<PairSeqNode>();
        if (m.pairs.size() == 1 && m.pairs.front().rest == Pi() && m.pairs.front().key.is_one() &&
            m.overall.is_rational()) {
            return m.overall;
        }
    }
    return std::nullopt;
}

/// r mod 2 in [0, 2) when 2r is an integer.
std::optional<long> half_turns(const Number& r) {
    Number twice = r * Number(2);
    if (!twice.is_integer()) {
        return std::nullopt;
    }
    mpz_class q = twice.as_mpz() % 4;
    if (q < 0) {
        q += 4;
    }
    return q.get_si();
}

const Number& half() {
    static const Number h = Number::make(1, 2);
    return h;
}

// sin((k/2) Pi) for k = 0..3 and the cosine counterpart.
constexpr int kSinTable[4] = {0, 1, 0, -1};
constexpr int kCosTable[4] = {1, 0, -1, 0};

std::optional<Expr> trig_eval(const Expr& x, const int (&table)[4], Number (*numeric)(const Number&, Precision)) {
    if (x.is_numeric()) {
        const Number& v = x.number();
        if (!v.is_exact()) {
            return Expr(numeric(v, Precision(digits_of(v))));
        }
        if (v.is_zero()) {
            return Expr(table[0]);
        }
        return std::nullopt;
    }
    if (auto r = pi_multiple(x)) {
        if (auto q = half_turns(*r)) {
            return Expr(table[*q]);
        }
    }
    return std::nullopt;
}

std::optional<Number> unary_evalf(const std::vector<Number>& args, Precision p,
                                  Number (*fn)(const Number&, Precision)) {
    return fn(args[0], p);
}

FunctionDef make_sin() {
    FunctionDef d;
    d.name = "sin";
    d.eval = [](const std::vector<Expr>& a) { return trig_eval(a[0], kSinTable, &numeric::sin); };
    d.evalf = [](const std::vector<Number>& a, Precision p) { return unary_evalf(a, p, &numeric::sin); };
    d.derivative = [](const std::vector<Expr>& a, std::size_t) { return cos(a[0]); };
    return d;
}

FunctionDef make_cos() {
    FunctionDef d;
    d.name = "cos";
    d.eval = [](const std::vector<Expr>& a) { return trig_eval(a[0], kCosTable, &numeric::cos); };
    d.evalf = [](const std::vector<Number>& a, Precision p) { return unary_evalf(a, p, &numeric::cos); };
    d.derivative = [](const std::vector<Expr>& a, std::size_t) { return -sin(a[0]); };
    return d;
}

FunctionDef make_exp() {
    FunctionDef d;
    d.name = "exp";
    d.eval = [](const std::vector<Expr>& a) -> std::optional<Expr> {
        const Expr& x = a[0];
        if (x.is_zero() && x.number().is_exact()) {
            return Expr(1);
        }
        if (is_inexact(x)) {
            return Expr(numeric::exp(x.number(), Precision(digits_of(x.number()))));
        }
        if (x.is(Kind::Function) && x.as<FunctionNode>().def == &log_function()) {
            return x.as<FunctionNode>().args[0];
        }
        return std::nullopt;
    };
    d.evalf = [](const std::vector<Number>& a, Precision p) { return unary_evalf(a, p, &numeric::exp); };
    d.derivative = [](const std::vector<Expr>& a, std::size_t) { return exp(a[0]); };
    d.series = [](const std::vector<Expr>& a, const Expr& var, int order) -> std::optional<PSeries> {
        return ps_exp(series_of(a[0], var, Expr(0), order));
    };
    return d;
}

FunctionDef make_log() {
    FunctionDef d;
    d.name = "log";
    d.eval = [](const std::vector<Expr>& a) -> std::optional<Expr> {
        const Expr& x = a[0];
        if (!x.is_numeric()) {
            return std::nullopt;
        }
        const Number& v = x.number();
        if (v.is_zero()) {
            throw PoleError("log(0)");
        }
        if (v.is_one()) {
            return Expr(0);
        }
        if (!v.is_exact()) {
            return Expr(numeric::log(v, Precision(digits_of(v))));
        }
        return std::nullopt;
    };
    d.evalf = [](const std::vector<Number>& a, Precision p) { return unary_evalf(a, p, &numeric::log); };
    d.derivative = [](const std::vector<Expr>& a, std::size_t) { return build_power(a[0], Expr(-1)); };
    return d;
}

// ---------------------------------------------------------------------------
// Gamma

/// Gamma(1 + u) for a series u with positive low degree:
/// exp(-Euler u + sum_{k>=2} (-1)^k zeta(k) u^k / k).
PSeries gamma_at_one(const PSeries& u, int order) {
    PSeries logg = ps_scale(u, -Euler());
    PSeries upow = u;
    const int step = u.empty() ? order : std::max(1, u.ldegree());
    for (int k = 2; k * step < order; ++k) {
        upow = ps_mul(upow, u).truncate(order);
        Expr c = build_mul({Expr(k % 2 == 0 ? Number::make(1, k) : Number::make(-1, k)), zeta(Expr(k))});
        logg = ps_add(logg, ps_scale(upow, c));
    }
    return ps_exp(logg.truncate(order));
}

std::optional<PSeries> gamma_series(const std::vector<Expr>& args, const Expr& var, int order) {
    int probe = std::max(order, 1);
    PSeries a = series_of(args[0], var, Expr(0), probe);
    if (!a.empty() && a.ldegree() < 0) {
        throw SeriesError("essential singularity in gamma");
    }
    const Expr a0 = a.coeff(0);
    if (!a0.is_integer()) {
        return std::nullopt;
    }
    const long n = a0.number().to_long();
    if (n >= 1) {
        // Gamma(A) = Gamma(1 + u) (A-1)(A-2)...(A-n+1) with u = A - n
        if (order <= 0) {
            return PSeries(var, Expr(0), {}, order);
        }
        PSeries u = ps_add(a, PSeries(var, Expr(0), {{Expr(-n), 0}}, std::nullopt));
        PSeries out = gamma_at_one(u.truncate(order), order);
        for (long j = 1; j < n; ++j) {
            out = ps_mul(out, ps_add(a, PSeries(var, Expr(0), {{Expr(-j), 0}}, std::nullopt)));
        }
        return out.truncate(order);
    }
    // Pole at -m: Gamma(A) = Gamma(A + m + 1) / (A (A+1) ... (A+m))
    const long m = -n;
    PSeries shifted_u = ps_add(a, PSeries(var, Expr(0), {{Expr(m), 0}}, std::nullopt)); // A + m
    for (const int limit = probe + 32; shifted_u.empty() && probe < limit;) {
        probe += 4;
        a = series_of(args[0], var, Expr(0), probe);
        shifted_u = ps_add(a, PSeries(var, Expr(0), {{Expr(m), 0}}, std::nullopt));
    }
    if (shifted_u.empty()) {
        throw SeriesError("cannot determine the pole order of gamma");
    }
    const int l = shifted_u.ldegree();
    const int need = std::max(order, 1) + 2 * l * static_cast<int>(m + 1);
    PSeries aa = series_of(args[0], var, Expr(0), need);
    PSeries u = ps_add(aa, PSeries(var, Expr(0), {{Expr(m), 0}}, std::nullopt)).truncate(need);
    PSeries numer = gamma_at_one(u, need);
    PSeries denom = PSeries(var, Expr(0), {{Expr(1), 0}}, std::nullopt);
    for (long j = 0; j <= m; ++j) {
        denom = ps_mul(denom, ps_add(aa, PSeries(var, Expr(0), {{Expr(j), 0}}, std::nullopt)));
    }
    denom = denom.truncate(need + l * static_cast<int>(m));
    return ps_mul(numer, ps_pow(denom, Expr(-1))).truncate(order);
}

FunctionDef make_gamma() {
    FunctionDef d;
    d.name = "gamma";
    d.eval = [](const std::vector<Expr>& a) -> std::optional<Expr> {
        const Expr& x = a[0];
        if (!x.is_numeric()) {
            return std::nullopt;
        }
        const Number& v = x.number();
        if (v.is_integer()) {
            if (!v.is_positive()) {
                throw PoleError("gamma has a pole at " + v.to_string());
            }
            return Expr(factorial(v - Number(1)));
        }
        if (!v.is_exact() && v.is_real()) {
            return Expr(numeric::gamma(v, Precision(digits_of(v))));
        }
        return std::nullopt;
    };
    d.evalf = [](const std::vector<Number>& a, Precision p) -> std::optional<Number> {
        if (!a[0].is_real()) {
            return std::nullopt;
        }
        return numeric::gamma(a[0], p);
    };
    d.derivative = [](const std::vector<Expr>& a, std::size_t) { return gamma(a[0]) * psi(a[0]); };
    d.series = gamma_series;
    return d;
}

// ---------------------------------------------------------------------------
// psi(n, x)

FunctionDef make_psi() {
    FunctionDef d;
    d.name = "psi";
    d.arity = 2;
    d.eval = [](const std::vector<Expr>& a) -> std::optional<Expr> {
        const Expr& n = a[0];
        const Expr& x = a[1];
        if (!n.is_numeric() || !n.number().is_nonnegative_integer() || !x.is_integer()) {
            return std::nullopt;
        }
        if (!x.number().is_positive()) {
            throw PoleError("psi has a pole at " + x.to_string());
        }
        const long order = n.number().to_long();
        const long m = x.number().to_long();
        // psi_n(1) = -Euler (n = 0), (-1)^(n+1) n! zeta(n+1) otherwise
        Expr at_one = order == 0 ? -Euler()
                                 : build_mul({Expr(order % 2 == 1 ? factorial(Number(order))
                                                                  : -factorial(Number(order))),
                                              zeta(Expr(order + 1))});
        // psi_n(x+1) = psi_n(x) + (-1)^n n! / x^(n+1)
        Number tail(0);
        for (long k = 1; k < m; ++k) {
            tail += pow(Number(k), Number(-(order + 1)));
        }
        Number scale = factorial(Number(order));
        if (order % 2 == 1) {
            scale = -scale;
        }
        return at_one + Expr(scale * tail);
    };
    d.derivative = [](const std::vector<Expr>& a, std::size_t index) -> Expr {
        if (index == 0) {
            throw UnevaluatedDerivative("psi is not differentiable in its order");
        }
        return psi(a[0] + Expr(1), a[1]);
    };
    d.print = [](const std::vector<Expr>& a) {
        if (a[0].is_zero()) {
            return "psi(" + a[1].to_string() + ")";
        }
        return "psi(" + a[0].to_string() + "," + a[1].to_string() + ")";
    };
    return d;
}

// ---------------------------------------------------------------------------
// zeta

FunctionDef make_zeta() {
    FunctionDef d;
    d.name = "zeta";
    d.eval = [](const std::vector<Expr>& a) -> std::optional<Expr> {
        const Expr& s = a[0];
        if (!s.is_numeric()) {
            return std::nullopt;
        }
        const Number& v = s.number();
        if (!v.is_exact()) {
            if (!v.is_real()) {
                return std::nullopt;
            }
            return Expr(numeric::zeta(v, Precision(digits_of(v))));
        }
        if (!v.is_integer()) {
            return std::nullopt;
        }
        if (v.is_one()) {
            throw PoleError("zeta has a pole at 1");
        }
        if (v.is_zero()) {
            return Expr(-half());
        }
        if (!v.fits_long()) {
            return std::nullopt;
        }
        const long k = v.to_long();
        if (k < 0) {
            // zeta(-n) = -B_(n+1)/(n+1)
            return Expr(-bernoulli(static_cast<unsigned long>(1 - k)) / Number(1 - k));
        }
        if (k % 2 == 1) {
            return std::nullopt;
        }
        // zeta(2j) = (-1)^(j+1) B_2j (2 Pi)^(2j) / (2 (2j)!)
        const long j = k / 2;
        Number c = bernoulli(static_cast<unsigned long>(k)) * pow(Number(2), Number(k)) /
                   (Number(2) * factorial(Number(k)));
        if (j % 2 == 0) {
            c = -c;
        }
        return build_mul({Expr(c), build_power(Pi(), Expr(k))});
    };
    d.evalf = [](const std::vector<Number>& a, Precision p) -> std::optional<Number> {
        if (!a[0].is_real()) {
            return std::nullopt;
        }
        return numeric::zeta(a[0], p);
    };
    return d;
}

FunctionDef make_factorial() {
    FunctionDef d;
    d.name = "factorial";
    d.eval = [](const std::vector<Expr>& a) -> std::optional<Expr> {
        const Expr& n = a[0];
        if (!n.is_numeric()) {
            return std::nullopt;
        }
        const Number& v = n.number();
        if (v.is_integer()) {
            return Expr(factorial(v));
        }
        if (!v.is_exact() && v.is_real()) {
            return Expr(numeric::gamma(v + Number(1), Precision(digits_of(v))));
        }
        return std::nullopt;
    };
    d.evalf = [](const std::vector<Number>& a, Precision p) -> std::optional<Number> {
        if (!a[0].is_real()) {
            return std::nullopt;
        }
        return numeric::gamma(a[0] + Number(1), p);
    };
    return d;
}

} // namespace

const FunctionDef& fn_register(FunctionDef def) {
    ensure_builtins();
    return registry().add(std::move(def));
}

const FunctionDef* fn_lookup(std::string_view name) {
    ensure_builtins();
    return registry().find(name);
}

Expr fn_apply(const FunctionDef& def, std::vector<Expr> args) {
    if (args.size() != def.arity) {
        throw DomainError(def.name + " expects " + std::to_string(def.arity) + " argument(s), got " +
                          std::to_string(args.size()));
    }
    if (def.eval) {
        if (auto r = def.eval(args)) {
            return *r;
        }
    }
    return make_function_node(def, std::move(args));
}

#define SYMKIT_BUILTIN(accessor, maker)                                                                               \
    const FunctionDef& accessor() {                                                                                   \
        static const FunctionDef& def = registry().add(maker());                                                     \
        return def;                                                                                                   \
    }

SYMKIT_BUILTIN(sin_function, make_sin)
SYMKIT_BUILTIN(cos_function, make_cos)
SYMKIT_BUILTIN(exp_function, make_exp)
SYMKIT_BUILTIN(log_function, make_log)
SYMKIT_BUILTIN(gamma_function, make_gamma)
SYMKIT_BUILTIN(psi_function, make_psi)
SYMKIT_BUILTIN(zeta_function, make_zeta)
SYMKIT_BUILTIN(factorial_function, make_factorial)

#undef SYMKIT_BUILTIN

Expr sin(const Expr& x) { return fn_apply(sin_function(), {x}); }
Expr cos(const Expr& x) { return fn_apply(cos_function(), {x}); }
Expr exp(const Expr& x) { return fn_apply(exp_function(), {x}); }
Expr log(const Expr& x) { return fn_apply(log_function(), {x}); }
Expr gamma(const Expr& x) { return fn_apply(gamma_function(), {x}); }
Expr psi(const Expr& x) { return fn_apply(psi_function(), {Expr(0), x}); }
Expr psi(const Expr& n, const Expr& x) { return fn_apply(psi_function(), {n, x}); }
Expr zeta(const Expr& s) { return fn_apply(zeta_function(), {s}); }
Expr factorial(const Expr& n) { return fn_apply(factorial_function(), {n}); }

} // namespace symkit
