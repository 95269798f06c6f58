#include "poly_internal.hpp"

#include "hash_mix.hpp"
#include "symkit/errors.hpp"

#include <algorithm>

namespace symkit::detail {

namespace {

bool lex_greater(const Term& a, const Term& b) { return a.e > b.e; }

Exps add_exps(const Exps& a, const Exps& b) {
    Exps r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] + b[i];
    }
    return r;
}

} // namespace

Poly Poly::constant(std::size_t nv, const mpz_class& c) {
    Poly p(nv);
    if (c != 0) {
        p.terms_.push_back({Exps(nv, 0), c});
    }
    return p;
}

Poly Poly::variable(std::size_t nv, std::size_t index, std::int32_t power) {
    Poly p(nv);
    Exps e(nv, 0);
    e[index] = power;
    p.terms_.push_back({std::move(e), 1});
    return p;
}

Poly Poly::from_terms(std::size_t nv, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), lex_greater);
    Poly p(nv);
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().e == t.e) {
            p.terms_.back().c += t.c;
        } else {
            if (!p.terms_.empty() && p.terms_.back().c == 0) {
                p.terms_.pop_back();
            }
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().c == 0) {
        p.terms_.pop_back();
    }
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) {
        return true;
    }
    if (terms_.size() > 1) {
        return false;
    }
    return std::all_of(terms_[0].e.begin(), terms_[0].e.end(), [](std::int32_t x) { return x == 0; });
}

mpz_class Poly::constant_value() const { return terms_.empty() ? mpz_class(0) : terms_[0].c; }

int Poly::degree(std::size_t v) const {
    int d = 0;
    for (const auto& t : terms_) {
        d = std::max(d, static_cast<int>(t.e[v]));
    }
    return d;
}

int Poly::min_degree(std::size_t v) const {
    if (terms_.empty()) {
        return 0;
    }
    int d = terms_[0].e[v];
    for (const auto& t : terms_) {
        d = std::min(d, static_cast<int>(t.e[v]));
    }
    return d;
}

std::vector<Poly> Poly::coeffs(std::size_t v) const {
    std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(degree(v)) + 1);
    for (const auto& t : terms_) {
        Term u = t;
        u.e[v] = 0;
        buckets[static_cast<std::size_t>(t.e[v])].push_back(std::move(u));
    }
    std::vector<Poly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) {
        out.push_back(from_terms(nv_, std::move(b)));
    }
    return out;
}

Poly Poly::from_coeffs(std::size_t nv, std::size_t v, const std::vector<Poly>& cs) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        for (const auto& t : cs[k].terms()) {
            Term u = t;
            u.e[v] += static_cast<std::int32_t>(k);
            terms.push_back(std::move(u));
        }
    }
    return from_terms(nv, std::move(terms));
}

Poly Poly::lc(std::size_t v) const {
    const int d = degree(v);
    std::vector<Term> terms;
    for (const auto& t : terms_) {
        if (t.e[v] == d) {
            Term u = t;
            u.e[v] = 0;
            terms.push_back(std::move(u));
        }
    }
    return from_terms(nv_, std::move(terms));
}

mpz_class Poly::max_norm() const {
    mpz_class m = 0;
    for (const auto& t : terms_) {
        mpz_class a = abs(t.c);
        if (a > m) {
            m = a;
        }
    }
    return m;
}

mpz_class Poly::int_content() const {
    mpz_class g = 0;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
        if (g == 1) {
            break;
        }
    }
    return g;
}

Exps Poly::min_exps() const {
    if (terms_.empty()) {
        return Exps(nv_, 0);
    }
    Exps m = terms_[0].e;
    for (const auto& t : terms_) {
        for (std::size_t i = 0; i < nv_; ++i) {
            m[i] = std::min(m[i], t.e[i]);
        }
    }
    return m;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) {
        t.c = -t.c;
    }
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r(nv_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].e > o.terms_[j].e)) {
            r.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].e > terms_[i].e) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            mpz_class c = terms_[i].c + o.terms_[j].c;
            if (c != 0) {
                r.terms_.push_back({terms_[i].e, std::move(c)});
            }
            ++i;
            ++j;
        }
    }
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (terms_.empty() || o.terms_.empty()) {
        return Poly(nv_);
    }
    if (o.is_constant()) {
        return scaled(o.constant_value());
    }
    if (is_constant()) {
        return o.scaled(constant_value());
    }
    std::map<Exps, mpz_class, std::greater<>> acc;
    mpz_class prod;
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            mpz_mul(prod.get_mpz_t(), a.c.get_mpz_t(), b.c.get_mpz_t());
            auto [it, inserted] = acc.try_emplace(add_exps(a.e, b.e), prod);
            if (!inserted) {
                it->second += prod;
            }
        }
    }
    Poly r(nv_);
    r.terms_.reserve(acc.size());
    for (auto& [e, c] : acc) {
        if (c != 0) {
            r.terms_.push_back({e, std::move(c)});
        }
    }
    return r;
}

Poly Poly::scaled(const mpz_class& k) const {
    if (k == 0) {
        return Poly(nv_);
    }
    Poly r = *this;
    for (auto& t : r.terms_) {
        t.c *= k;
    }
    return r;
}

Poly Poly::div_int(const mpz_class& k) const {
    Poly r = *this;
    for (auto& t : r.terms_) {
        mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), k.get_mpz_t());
    }
    return r;
}

Poly Poly::shifted(const Exps& m) const {
    Poly r = *this;
    for (auto& t : r.terms_) {
        t.e = add_exps(t.e, m);
    }
    return r;
}

Poly Poly::unshifted(const Exps& m) const {
    Poly r = *this;
    for (auto& t : r.terms_) {
        for (std::size_t i = 0; i < nv_; ++i) {
            t.e[i] -= m[i];
        }
    }
    return r;
}

Poly Poly::pow(unsigned k) const {
    Poly result = constant(nv_, 1);
    Poly base = *this;
    while (k) {
        if (k & 1U) {
            result = result * base;
        }
        k >>= 1U;
        if (k) {
            base = base * base;
        }
    }
    return result;
}

bool Poly::operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].e != o.terms_[i].e || terms_[i].c != o.terms_[i].c) {
            return false;
        }
    }
    return true;
}

Poly Poly::eval(std::size_t v, const mpz_class& value) const {
    std::vector<mpz_class> powers(static_cast<std::size_t>(degree(v)) + 1);
    powers[0] = 1;
    for (std::size_t k = 1; k < powers.size(); ++k) {
        powers[k] = powers[k - 1] * value;
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term u{t.e, t.c * powers[static_cast<std::size_t>(t.e[v])]};
        u.e[v] = 0;
        out.push_back(std::move(u));
    }
    return from_terms(nv_, std::move(out));
}

std::uint64_t Poly::hash() const {
    std::uint64_t h = nv_;
    for (const auto& t : terms_) {
        for (auto x : t.e) {
            h = mix(h, static_cast<std::uint64_t>(x));
        }
        h = mix(h, mpz_get_ui(t.c.get_mpz_t()));
    }
    return h;
}

// ---------------------------------------------------------------------------
// Division

std::optional<Poly> divide(const Poly& a, const Poly& b) {
    if (b.is_zero()) {
        throw DivisionByZero("polynomial division by zero");
    }
    const std::size_t nv = a.nv();
    if (a.is_zero()) {
        return Poly(nv);
    }
    if (b.is_constant()) {
        const mpz_class& k = b.constant_value();
        for (const auto& t : a.terms()) {
            if (!mpz_divisible_p(t.c.get_mpz_t(), k.get_mpz_t())) {
                return std::nullopt;
            }
        }
        return a.div_int(k);
    }
    // deg_v(a) = deg_v(b) + deg_v(q) bounds every quotient exponent
    Exps room(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        room[v] = a.degree(v) - b.degree(v);
        if (room[v] < 0) {
            return std::nullopt;
        }
    }
    const Term& lb = b.lt();
    std::map<Exps, mpz_class, std::greater<>> r;
    for (const auto& t : a.terms()) {
        r.emplace(t.e, t.c);
    }
    std::vector<Term> q;
    mpz_class qc, prod;
    while (!r.empty()) {
        auto head = r.begin();
        Exps qe(nv);
        for (std::size_t v = 0; v < nv; ++v) {
            qe[v] = head->first[v] - lb.e[v];
            if (qe[v] < 0 || qe[v] > room[v]) {
                return std::nullopt;
            }
        }
        if (!mpz_divisible_p(head->second.get_mpz_t(), lb.c.get_mpz_t())) {
            return std::nullopt;
        }
        mpz_divexact(qc.get_mpz_t(), head->second.get_mpz_t(), lb.c.get_mpz_t());
        for (const auto& t : b.terms()) {
            mpz_mul(prod.get_mpz_t(), qc.get_mpz_t(), t.c.get_mpz_t());
            auto [it, inserted] = r.try_emplace(add_exps(t.e, qe), 0);
            it->second -= prod;
            if (it->second == 0) {
                r.erase(it);
            }
        }
        q.push_back({std::move(qe), qc});
    }
    return Poly::from_terms(nv, std::move(q));
}

Poly divide_exact(const Poly& a, const Poly& b) {
    auto q = divide(a, b);
    if (!q) {
        throw Error("internal error: inexact polynomial division");
    }
    return *q;
}

Poly prem(const Poly& a, const Poly& b, std::size_t v) {
    const int db = b.degree(v);
    int da = a.degree(v);
    if (da < db) {
        return a;
    }
    const Poly lb = b.lc(v);
    // b without its leading part in v
    std::vector<Poly> bc = b.coeffs(v);
    bc.back() = Poly(b.nv());
    const Poly b_tail = Poly::from_coeffs(b.nv(), v, bc);
    Poly r = a;
    int steps = da - db + 1;
    while (!r.is_zero() && r.degree(v) >= db) {
        const int dr = r.degree(v);
        std::vector<Poly> rc = r.coeffs(v);
        const Poly lr = rc.back();
        rc.back() = Poly(r.nv());
        const Poly r_tail = Poly::from_coeffs(r.nv(), v, rc);
        Exps shift(r.nv(), 0);
        shift[v] = dr - db;
        r = r_tail * lb - (lr * b_tail).shifted(shift);
        --steps;
    }
    if (steps > 0) {
        r = r * lb.pow(static_cast<unsigned>(steps));
    }
    return r;
}

Poly unit_normal(const Poly& p) {
    if (!p.is_zero() && p.lc_int() < 0) {
        return -p;
    }
    return p;
}

// ---------------------------------------------------------------------------
// Gcd

namespace {

Poly constant_gcd(const Poly& a, const Poly& b) {
    mpz_class g = gcd(a.int_content(), b.int_content());
    return Poly::constant(a.nv(), g);
}

std::vector<std::size_t> present_vars(const Poly& a, const Poly& b) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < a.nv(); ++v) {
        if (a.has_var(v) || b.has_var(v)) {
            out.push_back(v);
        }
    }
    return out;
}

Poly primitive(const Poly& p) {
    if (p.is_zero()) {
        return p;
    }
    return unit_normal(p.div_int(p.int_content()));
}

// Heuristic gcd on inputs free of integer content.
constexpr int kHeurRetries = 6;
// Largest image (in bits) the heuristic is allowed to build.
constexpr std::size_t kHeurMaxBits = 60000;

std::optional<Poly> heur_core(const Poly& a, const Poly& b);

std::optional<Poly> heur_any(const Poly& a, const Poly& b) {
    if (a.is_zero()) {
        return unit_normal(b);
    }
    if (b.is_zero()) {
        return unit_normal(a);
    }
    const mpz_class ca = a.int_content();
    const mpz_class cb = b.int_content();
    const mpz_class c = gcd(ca, cb);
    auto g = heur_core(a.div_int(ca), b.div_int(cb));
    if (!g) {
        return std::nullopt;
    }
    return g->scaled(c);
}

std::optional<Poly> heur_core(const Poly& a, const Poly& b) {
    const std::size_t nv = a.nv();
    const auto vars = present_vars(a, b);
    if (vars.empty()) {
        return constant_gcd(a, b);
    }
    const std::size_t x = vars.back();
    mpz_class xi = 2 * std::max(a.max_norm(), b.max_norm()) + 2;
    const int dmax = std::max(a.degree(x), b.degree(x));
    for (int attempt = 0; attempt <= kHeurRetries; ++attempt) {
        if (mpz_sizeinbase(xi.get_mpz_t(), 2) * static_cast<std::size_t>(std::max(dmax, 1)) > kHeurMaxBits) {
            return std::nullopt;
        }
        const Poly ea = a.eval(x, xi);
        const Poly eb = b.eval(x, xi);
        if (!ea.is_zero() && !eb.is_zero()) {
            if (auto gamma = heur_any(ea, eb)) {
                // balanced xi-adic expansion of every coefficient
                std::vector<Term> terms;
                const mpz_class half = xi / 2;
                for (const auto& t : gamma->terms()) {
                    mpz_class c = t.c;
                    std::int32_t k = 0;
                    while (c != 0) {
                        mpz_class d;
                        mpz_fdiv_r(d.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
                        if (d > half) {
                            d -= xi;
                        }
                        if (d != 0) {
                            Term u{t.e, d};
                            u.e[x] = k;
                            terms.push_back(std::move(u));
                        }
                        c = (c - d) / xi;
                        ++k;
                    }
                }
                Poly g = primitive(Poly::from_terms(nv, std::move(terms)));
                if (!g.is_zero() && divide(a, g) && divide(b, g)) {
                    return g;
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    return std::nullopt;
}

/// Main variable: lowest minimum degree, ties to the lower index.
std::size_t main_variable(const Poly& a, const Poly& b, const std::vector<std::size_t>& vars) {
    std::size_t best = vars.front();
    int best_deg = std::min(a.degree(best), b.degree(best));
    for (std::size_t v : vars) {
        int d = std::min(a.degree(v), b.degree(v));
        if (d < best_deg) {
            best = v;
            best_deg = d;
        }
    }
    return best;
}

Poly sr_core(Poly a, Poly b) {
    if (a.is_zero()) {
        return unit_normal(b);
    }
    if (b.is_zero()) {
        return unit_normal(a);
    }
    const auto vars = present_vars(a, b);
    if (vars.empty()) {
        return constant_gcd(a, b);
    }
    const std::size_t x = main_variable(a, b, vars);
    if (a.degree(x) < b.degree(x)) {
        std::swap(a, b);
    }
    const Poly ca = content(a, x);
    const Poly cb = content(b, x);
    const Poly c = sr_core(ca, cb);
    Poly pa = divide_exact(a, ca);
    Poly pb = divide_exact(b, cb);
    if (pb.degree(x) == 0) {
        return unit_normal(c);
    }
    const std::size_t nv = a.nv();
    Poly g = Poly::constant(nv, 1);
    Poly h = Poly::constant(nv, 1);
    Poly A = pa;
    Poly B = pb;
    for (;;) {
        const int d = A.degree(x) - B.degree(x);
        Poly R = prem(A, B, x);
        if (R.is_zero()) {
            break;
        }
        if (R.degree(x) == 0) {
            return unit_normal(c);
        }
        A = B;
        B = divide_exact(R, g * h.pow(static_cast<unsigned>(d)));
        g = A.lc(x);
        if (d == 0) {
            // h unchanged
        } else if (d == 1) {
            h = g;
        } else {
            h = divide_exact(g.pow(static_cast<unsigned>(d)), h.pow(static_cast<unsigned>(d - 1)));
        }
    }
    Poly result = divide_exact(B, content(B, x));
    return unit_normal(result * c);
}

} // namespace

Poly content(const Poly& p, std::size_t v) {
    if (p.is_zero()) {
        return p;
    }
    Poly g(p.nv());
    for (const auto& c : p.coeffs(v)) {
        if (c.is_zero()) {
            continue;
        }
        g = gcd(g, c);
        if (g.is_one()) {
            break;
        }
    }
    return g;
}

std::optional<Poly> heur_gcd(const Poly& a, const Poly& b) {
    auto g = heur_any(a, b);
    if (!g) {
        return std::nullopt;
    }
    return unit_normal(*g);
}

Poly sr_gcd(const Poly& a, const Poly& b) { return sr_core(a, b); }

Poly gcd(const Poly& a0, const Poly& b0) {
    if (a0.is_zero()) {
        return unit_normal(b0);
    }
    if (b0.is_zero()) {
        return unit_normal(a0);
    }
    const std::size_t nv = a0.nv();
    if (a0.is_constant() || b0.is_constant()) {
        return constant_gcd(a0, b0);
    }
    if (a0 == b0 || a0 == -b0) {
        return unit_normal(a0);
    }
    // integer content
    const mpz_class ia = a0.int_content();
    const mpz_class ib = b0.int_content();
    const mpz_class ic = gcd(ia, ib);
    Poly a = a0.div_int(ia);
    Poly b = b0.div_int(ib);
    // monomial factors
    const Exps ma = a.min_exps();
    const Exps mb = b.min_exps();
    Exps common(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        common[v] = std::min(ma[v], mb[v]);
    }
    a = a.unshifted(ma);
    b = b.unshifted(mb);
    // variables occurring in one input only cannot be in the gcd
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t v = 0; v < nv; ++v) {
            if (a.has_var(v) != b.has_var(v)) {
                Poly& side = a.has_var(v) ? a : b;
                side = content(side, v);
                changed = true;
            }
        }
    }
    Poly core;
    if (a.is_constant() || b.is_constant()) {
        core = Poly::constant(nv, 1);
    } else if (a == b || a == -b) {
        core = unit_normal(a);
    } else if (auto h = heur_core(primitive(a), primitive(b))) {
        core = *h;
    } else {
        core = sr_core(primitive(a), primitive(b));
    }
    return unit_normal(core.scaled(ic).shifted(common));
}

// ---------------------------------------------------------------------------
// Fractions

Frac frac_make(Poly num, Poly den) {
    if (den.is_zero()) {
        throw DivisionByZero("division by zero");
    }
    if (num.is_zero()) {
        return {num, Poly::constant(num.nv(), 1)};
    }
    if (!den.is_one()) {
        Poly g = gcd(num, den);
        if (!g.is_one()) {
            num = divide_exact(num, g);
            den = divide_exact(den, g);
        }
    }
    if (den.lc_int() < 0) {
        num = -num;
        den = -den;
    }
    return {std::move(num), std::move(den)};
}

Frac frac_add(const Frac& a, const Frac& b) {
    if (a.num.is_zero()) {
        return b;
    }
    if (b.num.is_zero()) {
        return a;
    }
    if (a.den == b.den) {
        return frac_make(a.num + b.num, a.den);
    }
    if (a.den.is_one()) {
        return {a.num * b.den + b.num, b.den};
    }
    if (b.den.is_one()) {
        return {a.num + b.num * a.den, a.den};
    }
    const Poly g = gcd(a.den, b.den);
    const Poly ab = divide_exact(a.den, g);
    const Poly bb = divide_exact(b.den, g);
    return frac_make(a.num * bb + b.num * ab, a.den * bb);
}

Frac frac_sub(const Frac& a, const Frac& b) { return frac_add(a, {-b.num, b.den}); }

Frac frac_mul(const Frac& a, const Frac& b) {
    if (a.num.is_zero() || b.num.is_zero()) {
        return {Poly(a.num.nv()), Poly::constant(a.num.nv(), 1)};
    }
    const Poly g1 = gcd(a.num, b.den);
    const Poly g2 = gcd(b.num, a.den);
    Poly num = divide_exact(a.num, g1) * divide_exact(b.num, g2);
    Poly den = divide_exact(a.den, g2) * divide_exact(b.den, g1);
    if (den.lc_int() < 0) {
        num = -num;
        den = -den;
    }
    return {std::move(num), std::move(den)};
}

Frac frac_inv(const Frac& a) {
    if (a.num.is_zero()) {
        throw DivisionByZero("division by zero");
    }
    if (a.num.lc_int() < 0) {
        return {-a.den, -a.num};
    }
    return {a.den, a.num};
}

Frac frac_div(const Frac& a, const Frac& b) { return frac_mul(a, frac_inv(b)); }

Frac frac_pow(const Frac& a, long k) {
    if (k < 0) {
        return frac_pow(frac_inv(a), -k);
    }
    return {a.num.pow(static_cast<unsigned>(k)), a.den.pow(static_cast<unsigned>(k))};
}

} // namespace symkit::detail
