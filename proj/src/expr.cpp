#include "symkit/expr.hpp"

#include "symkit/function.hpp"
#include "symkit/numeric_functions.hpp"
#include "symkit/series.hpp"

#include "hash_mix.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <ostream>

namespace symkit {

namespace {

// serials below this are reserved for the builtin constants, so their order never depends on first use
constexpr std::uint64_t kFirstFreeSerial = 8;

std::atomic<std::uint64_t> g_serial{kFirstFreeSerial};

std::uint64_t next_serial() { return g_serial.fetch_add(1, std::memory_order_relaxed); }

std::uint64_t kind_seed(Kind k) { return detail::splitmix(0xC0FFEE00ULL + static_cast<std::uint64_t>(k)); }

std::uint64_t mix_exprs(std::uint64_t h, const std::vector<Expr>& items) {
    h = detail::mix(h, items.size());
    for (const auto& e : items) {
        h = detail::mix(h, e.hash());
    }
    return h;
}

const std::shared_ptr<const Node>& small_integer(long v) {
    static const auto table = [] {
        std::array<std::shared_ptr<const Node>, 13> out;
        for (long i = 0; i < 13; ++i) {
            out[static_cast<std::size_t>(i)] = std::make_shared<const NumericNode>(Number(i - 2));
        }
        return out;
    }();
    return table[static_cast<std::size_t>(v + 2)];
}

} // namespace

// ---------------------------------------------------------------------------
// Nodes

NumericNode::NumericNode(Number v) : Node(Kind::Numeric), value(std::move(v)) {
    hash = detail::mix(kind_seed(kind), value.hash());
}

SymbolNode::SymbolNode(std::uint64_t s, std::string n) : Node(Kind::Symbol), serial(s), name(std::move(n)) {
    hash = detail::mix(kind_seed(kind), serial);
}

ConstantNode::ConstantNode(std::shared_ptr<const ConstantDef> d) : Node(Kind::Constant), def(std::move(d)) {
    hash = detail::mix(kind_seed(kind), def->serial);
}

PowerNode::PowerNode(Expr b, Expr e) : Node(Kind::Power), base(std::move(b)), exponent(std::move(e)) {
    hash = detail::mix(detail::mix(kind_seed(kind), base.hash()), exponent.hash());
}

PairSeqNode::PairSeqNode(Kind k, Number o, std::vector<Pair> p)
    : Node(k), overall(std::move(o)), pairs(std::move(p)) {
    std::uint64_t h = detail::mix(kind_seed(kind), overall.hash());
    for (const auto& pr : pairs) {
        h = detail::mix(detail::mix(h, pr.rest.hash()), pr.key.hash());
    }
    hash = h;
}

FunctionNode::FunctionNode(const FunctionDef* d, std::vector<Expr> a)
    : Node(Kind::Function), def(d), args(std::move(a)) {
    hash = mix_exprs(detail::mix(kind_seed(kind), def->serial), args);
}

SeriesNode::SeriesNode(std::shared_ptr<const PSeries> s) : Node(Kind::Series), series(std::move(s)) {
    std::uint64_t h = detail::mix(kind_seed(kind), series->var().hash());
    h = detail::mix(h, series->point().hash());
    h = detail::mix(h, series->order() ? static_cast<std::uint64_t>(*series->order()) + 1 : 0);
    for (const auto& t : series->terms()) {
        h = detail::mix(detail::mix(h, t.coeff.hash()), static_cast<std::uint64_t>(t.exponent));
    }
    hash = h;
}

ListNode::ListNode(std::vector<Expr> i) : Node(Kind::List), items(std::move(i)) {
    hash = mix_exprs(kind_seed(kind), items);
}

RelationalNode::RelationalNode(Expr l, Expr r, RelOp o)
    : Node(Kind::Relational), lhs(std::move(l)), rhs(std::move(r)), op(o) {
    hash = detail::mix(detail::mix(detail::mix(kind_seed(kind), static_cast<std::uint64_t>(op)), lhs.hash()),
                       rhs.hash());
}

MatrixNode::MatrixNode(std::size_t r, std::size_t c, std::vector<Expr> e)
    : Node(Kind::Matrix), rows(r), cols(c), entries(std::move(e)) {
    hash = mix_exprs(detail::mix(detail::mix(kind_seed(kind), rows), cols), entries);
}

// ---------------------------------------------------------------------------
// Expr basics

Expr::Expr() : node_(small_integer(0)) {}

Expr::Expr(const Number& value) {
    if (value.is_integer() && value.fits_long()) {
        const long v = value.to_long();
        if (v >= -2 && v <= 10) {
            node_ = small_integer(v);
            return;
        }
    }
    node_ = std::make_shared<const NumericNode>(value);
}

Kind Expr::kind() const noexcept { return node_->kind; }

std::uint64_t Expr::hash() const noexcept { return node_->hash; }

bool Expr::is_zero() const noexcept { return is_numeric() && as<NumericNode>().value.is_zero(); }

bool Expr::is_one() const noexcept { return is_numeric() && as<NumericNode>().value.is_one(); }

bool Expr::is_minus_one() const noexcept { return is_numeric() && as<NumericNode>().value.is_minus_one(); }

bool Expr::is_integer() const noexcept { return is_numeric() && as<NumericNode>().value.is_integer(); }

bool Expr::is_rational() const noexcept { return is_numeric() && as<NumericNode>().value.is_rational(); }

const Number& Expr::number() const {
    if (!is_numeric()) {
        throw DomainError("not a number: " + to_string());
    }
    return as<NumericNode>().value;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.ptr() == b.ptr()) {
        return true;
    }
    if (a.hash() != b.hash()) {
        return false;
    }
    return cmp(a, b) == 0;
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.to_string(); }

// ---------------------------------------------------------------------------
// Atoms

Expr symbol(std::string name) {
    const std::uint64_t serial = next_serial();
    if (name.empty()) {
        name = "symbol" + std::to_string(serial);
    }
    return Expr(std::make_shared<const SymbolNode>(serial, std::move(name)));
}

Expr constant(std::string name, Number fixed) {
    auto def = std::make_shared<ConstantDef>();
    def->serial = next_serial();
    def->name = std::move(name);
    def->fixed = std::move(fixed);
    return Expr(std::make_shared<const ConstantNode>(std::move(def)));
}

Expr constant(std::string name, std::function<Number(Precision)> evaluator) {
    auto def = std::make_shared<ConstantDef>();
    def->serial = next_serial();
    def->name = std::move(name);
    def->evaluator = std::move(evaluator);
    return Expr(std::make_shared<const ConstantNode>(std::move(def)));
}

namespace {

Expr builtin_constant(std::uint64_t serial, std::string name, std::function<Number(Precision)> evaluator) {
    auto def = std::make_shared<ConstantDef>();
    def->serial = serial;
    def->name = std::move(name);
    def->evaluator = std::move(evaluator);
    return Expr(std::make_shared<const ConstantNode>(std::move(def)));
}

} // namespace

const Expr& Pi() {
    static const Expr c = builtin_constant(1, "Pi", [](Precision p) { return numeric::pi(p); });
    return c;
}

const Expr& Euler() {
    static const Expr c = builtin_constant(2, "Euler", [](Precision p) { return numeric::euler(p); });
    return c;
}

const Expr& Catalan() {
    static const Expr c = builtin_constant(3, "Catalan", [](Precision p) { return numeric::catalan(p); });
    return c;
}

// ---------------------------------------------------------------------------
// Canonical constructors

namespace {

Expr raw_power(const Expr& base, const Expr& exponent) {
    return Expr(std::make_shared<const PowerNode>(base, exponent));
}

Expr raw_pairseq(Kind k, Number overall, std::vector<Pair> pairs) {
    return Expr(std::make_shared<const PairSeqNode>(k, std::move(overall), std::move(pairs)));
}

/// The product with its numeric coefficient removed (never a Numeric).
Expr mul_rest(const PairSeqNode& m) {
    if (m.pairs.size() == 1) {
        const Pair& p = m.pairs.front();
        return p.key.is_one() ? p.rest : raw_power(p.rest, Expr(p.key));
    }
    return raw_pairseq(Kind::Mul, Number(1), m.pairs);
}

void sort_and_merge(std::vector<Pair>& pairs) {
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return cmp(a.rest, b.rest) < 0; });
    std::vector<Pair> merged;
    merged.reserve(pairs.size());
    for (auto& p : pairs) {
        if (!merged.empty() && merged.back().rest == p.rest) {
            merged.back().key += p.key;
        } else {
            merged.push_back(std::move(p));
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Pair& p) { return p.key.is_zero(); }),
                 merged.end());
    pairs = std::move(merged);
}

} // namespace

Expr build_add(std::vector<Expr> terms) {
    Number overall(0);
    std::vector<Pair> pairs;
    pairs.reserve(terms.size());
    for (auto& t : terms) {
        switch (t.kind()) {
        case Kind::Numeric:
            overall += t.as<NumericNode>().value;
            break;
        case Kind::Add: {
            const auto& a = t.as<PairSeqNode>();
            overall += a.overall;
            pairs.insert(pairs.end(), a.pairs.begin(), a.pairs.end());
            break;
        }
        case Kind::Mul: {
            const auto& m = t.as<PairSeqNode>();
            if (m.overall.is_one()) {
                pairs.push_back({t, Number(1)});
            } else {
                pairs.push_back({mul_rest(m), m.overall});
            }
            break;
        }
        default:
            pairs.push_back({std::move(t), Number(1)});
            break;
        }
    }
    sort_and_merge(pairs);
    if (pairs.empty()) {
        return Expr(overall);
    }
    if (overall.is_zero() && pairs.size() == 1) {
        if (pairs.front().key.is_one()) {
            return pairs.front().rest;
        }
        return build_mul({Expr(pairs.front().key), pairs.front().rest});
    }
    return raw_pairseq(Kind::Add, std::move(overall), std::move(pairs));
}

namespace {

void absorb_factor(const Expr& f, Number& overall, std::vector<Pair>& pairs) {
    switch (f.kind()) {
    case Kind::Numeric:
        overall *= f.as<NumericNode>().value;
        return;
    case Kind::Mul: {
        const auto& m = f.as<PairSeqNode>();
        overall *= m.overall;
        pairs.insert(pairs.end(), m.pairs.begin(), m.pairs.end());
        return;
    }
    case Kind::Power: {
        const auto& p = f.as<PowerNode>();
        if (p.exponent.is_numeric() && !p.base.is_numeric() && !p.base.is(Kind::Mul)) {
            pairs.push_back({p.base, p.exponent.number()});
            return;
        }
        break;
    }
    default:
        break;
    }
    pairs.push_back({f, Number(1)});
}

} // namespace

Expr build_mul(std::vector<Expr> factors) {
    Number overall(1);
    std::vector<Pair> pairs;
    pairs.reserve(factors.size());
    for (const auto& f : factors) {
        absorb_factor(f, overall, pairs);
    }
    for (;;) {
        sort_and_merge(pairs);
        // A power raised to an integer may simplify further; re-absorb it.
        std::vector<Expr> redo;
        for (auto it = pairs.begin(); it != pairs.end();) {
            const bool nested = it->rest.is(Kind::Power) && it->key.is_integer() && !it->key.is_one();
            const bool numeric = it->rest.is_numeric();
            if (nested || numeric) {
                redo.push_back(build_power(it->rest, Expr(it->key)));
                it = pairs.erase(it);
            } else {
                ++it;
            }
        }
        if (redo.empty()) {
            break;
        }
        for (const auto& r : redo) {
            absorb_factor(r, overall, pairs);
        }
    }
    if (overall.is_zero() || pairs.empty()) {
        return Expr(overall);
    }
    if (pairs.size() == 1) {
        const Pair& p = pairs.front();
        if (overall.is_one()) {
            return p.key.is_one() ? p.rest : raw_power(p.rest, Expr(p.key));
        }
        if (p.key.is_one() && p.rest.is(Kind::Add)) {
            // numeric * sum distributes
            const auto& a = p.rest.as<PairSeqNode>();
            std::vector<Expr> terms;
            terms.reserve(a.pairs.size() + 1);
            terms.emplace_back(overall * a.overall);
            for (const auto& q : a.pairs) {
                terms.push_back(build_mul({Expr(overall * q.key), q.rest}));
            }
            return build_add(std::move(terms));
        }
    }
    return raw_pairseq(Kind::Mul, std::move(overall), std::move(pairs));
}

namespace {

std::optional<Expr> numeric_power(const Number& b, const Number& e) {
    if (e.is_integer() || !b.is_exact() || !e.is_exact()) {
        return Expr(pow(b, e));
    }
    if (!e.is_rational()) {
        return std::nullopt;
    }
    // exact base, exact non-integer rational exponent p/q
    if (b.is_zero()) {
        if (e.is_negative()) {
            throw DivisionByZero("zero raised to a negative power");
        }
        return Expr(0);
    }
    if (b.is_one()) {
        return Expr(1);
    }
    if (!b.is_rational() || b.is_negative()) {
        return std::nullopt;
    }
    const mpz_class& q = e.denominator();
    if (!q.fits_ulong_p()) {
        return std::nullopt;
    }
    if (auto r = exact_root(b, q.get_ui())) {
        return Expr(pow(*r, Number(e.numerator())));
    }
    return std::nullopt;
}

} // namespace

Expr build_power(const Expr& base, const Expr& exponent) {
    if (exponent.is_numeric()) {
        const Number& e = exponent.number();
        if (e.is_zero() && e.is_exact()) {
            return Expr(1);
        }
        if (e.is_one()) {
            return base;
        }
        if (base.is_numeric()) {
            if (auto r = numeric_power(base.number(), e)) {
                return *r;
            }
            return raw_power(base, exponent);
        }
        if (e.is_integer()) {
            if (base.is(Kind::Power)) {
                const auto& p = base.as<PowerNode>();
                return build_power(p.base, build_mul({p.exponent, exponent}));
            }
            if (base.is(Kind::Mul)) {
                const auto& m = base.as<PairSeqNode>();
                std::vector<Expr> factors;
                factors.reserve(m.pairs.size() + 1);
                factors.emplace_back(pow(m.overall, e));
                for (const auto& p : m.pairs) {
                    factors.push_back(build_power(p.rest, Expr(p.key * e)));
                }
                return build_mul(std::move(factors));
            }
        }
        return raw_power(base, exponent);
    }
    if (base.is_one()) {
        return base;
    }
    return raw_power(base, exponent);
}

Expr make_list(std::vector<Expr> items) { return Expr(std::make_shared<const ListNode>(std::move(items))); }

Expr make_relational(const Expr& lhs, const Expr& rhs, RelOp op) {
    return Expr(std::make_shared<const RelationalNode>(lhs, rhs, op));
}

Expr make_function_node(const FunctionDef& def, std::vector<Expr> args) {
    return Expr(std::make_shared<const FunctionNode>(&def, std::move(args)));
}

Expr make_series_node(std::shared_ptr<const PSeries> series) {
    return Expr(std::make_shared<const SeriesNode>(std::move(series)));
}

Expr make_matrix_node(std::size_t rows, std::size_t cols, std::vector<Expr> entries) {
    if (entries.size() != rows * cols) {
        throw ShapeError("matrix entry count does not match its shape");
    }
    return Expr(std::make_shared<const MatrixNode>(rows, cols, std::move(entries)));
}

// ---------------------------------------------------------------------------
// Order

namespace {

int sign_of(int c) { return (c > 0) - (c < 0); }

template <typename T, typename Cmp>
int lex(const std::vector<T>& a, const std::vector<T>& b, Cmp&& c) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (int r = c(a[i], b[i])) {
            return r;
        }
    }
    return a.size() == b.size() ? 0 : (a.size() < b.size() ? -1 : 1);
}

int cmp_pairs(const PairSeqNode& a, const PairSeqNode& b) {
    if (int r = lex(a.pairs, b.pairs, [](const Pair& x, const Pair& y) {
            if (int c = cmp(x.rest, y.rest)) {
                return c;
            }
            return Number::compare(x.key, y.key);
        })) {
        return r;
    }
    return Number::compare(a.overall, b.overall);
}

int cmp_series(const PSeries& a, const PSeries& b) {
    if (int r = cmp(a.var(), b.var())) {
        return r;
    }
    if (int r = cmp(a.point(), b.point())) {
        return r;
    }
    const int oa = a.order() ? *a.order() : INT32_MAX;
    const int ob = b.order() ? *b.order() : INT32_MAX;
    if (oa != ob) {
        return oa < ob ? -1 : 1;
    }
    return lex(a.terms(), b.terms(), [](const SeriesTerm& x, const SeriesTerm& y) {
        if (x.exponent != y.exponent) {
            return x.exponent < y.exponent ? -1 : 1;
        }
        return cmp(x.coeff, y.coeff);
    });
}

} // namespace

int cmp(const Expr& a, const Expr& b) {
    if (a.ptr() == b.ptr()) {
        return 0;
    }
    if (a.kind() != b.kind()) {
        return a.kind() < b.kind() ? -1 : 1;
    }
    auto cmp_expr = [](const Expr& x, const Expr& y) { return cmp(x, y); };
    switch (a.kind()) {
    case Kind::Numeric:
        return sign_of(Number::compare(a.as<NumericNode>().value, b.as<NumericNode>().value));
    case Kind::Symbol: {
        const auto sa = a.as<SymbolNode>().serial;
        const auto sb = b.as<SymbolNode>().serial;
        return sa == sb ? 0 : (sa < sb ? -1 : 1);
    }
    case Kind::Constant: {
        const auto sa = a.as<ConstantNode>().def->serial;
        const auto sb = b.as<ConstantNode>().def->serial;
        return sa == sb ? 0 : (sa < sb ? -1 : 1);
    }
    case Kind::Power: {
        const auto& pa = a.as<PowerNode>();
        const auto& pb = b.as<PowerNode>();
        if (int r = cmp(pa.base, pb.base)) {
            return r;
        }
        return cmp(pa.exponent, pb.exponent);
    }
    case Kind::Mul:
    case Kind::Add:
        return cmp_pairs(a.as<PairSeqNode>(), b.as<PairSeqNode>());
    case Kind::Function: {
        const auto& fa = a.as<FunctionNode>();
        const auto& fb = b.as<FunctionNode>();
        if (fa.def != fb.def) {
            return fa.def->serial < fb.def->serial ? -1 : 1;
        }
        return lex(fa.args, fb.args, cmp_expr);
    }
    case Kind::Series:
        return cmp_series(*a.as<SeriesNode>().series, *b.as<SeriesNode>().series);
    case Kind::List:
        return lex(a.as<ListNode>().items, b.as<ListNode>().items, cmp_expr);
    case Kind::Relational: {
        const auto& ra = a.as<RelationalNode>();
        const auto& rb = b.as<RelationalNode>();
        if (ra.op != rb.op) {
            return ra.op < rb.op ? -1 : 1;
        }
        if (int r = cmp(ra.lhs, rb.lhs)) {
            return r;
        }
        return cmp(ra.rhs, rb.rhs);
    }
    case Kind::Matrix: {
        const auto& ma = a.as<MatrixNode>();
        const auto& mb = b.as<MatrixNode>();
        if (ma.rows != mb.rows) {
            return ma.rows < mb.rows ? -1 : 1;
        }
        if (ma.cols != mb.cols) {
            return ma.cols < mb.cols ? -1 : 1;
        }
        return lex(ma.entries, mb.entries, cmp_expr);
    }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Operators

Expr operator+(const Expr& a, const Expr& b) { return build_add({a, b}); }

Expr operator-(const Expr& a, const Expr& b) { return build_add({a, -b}); }

Expr operator*(const Expr& a, const Expr& b) { return build_mul({a, b}); }

Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_zero() && b.number().is_exact()) {
        throw DivisionByZero();
    }
    return build_mul({a, build_power(b, Expr(-1))});
}

Expr operator-(const Expr& a) { return build_mul({Expr(-1), a}); }

Expr pow(const Expr& base, const Expr& exponent) { return build_power(base, exponent); }

Expr sqrt(const Expr& e) { return build_power(e, Expr(Number::make(1, 2))); }

// ---------------------------------------------------------------------------
// Traversal

bool has(const Expr& e, const Expr& needle) {
    if (e.hash() == needle.hash() && e == needle) {
        return true;
    }
    switch (e.kind()) {
    case Kind::Numeric:
    case Kind::Symbol:
    case Kind::Constant:
        return false;
    case Kind::Power:
        return has(e.as<PowerNode>().base, needle) || has(e.as<PowerNode>().exponent, needle);
    case Kind::Add:
    case Kind::Mul:
        for (const auto& p : e.as<PairSeqNode>().pairs) {
            if (has(p.rest, needle)) {
                return true;
            }
        }
        return false;
    case Kind::Function:
        return std::any_of(e.as<FunctionNode>().args.begin(), e.as<FunctionNode>().args.end(),
                           [&](const Expr& a) { return has(a, needle); });
    case Kind::Series: {
        const auto& s = *e.as<SeriesNode>().series;
        if (has(s.var(), needle) || has(s.point(), needle)) {
            return true;
        }
        return std::any_of(s.terms().begin(), s.terms().end(),
                           [&](const SeriesTerm& t) { return has(t.coeff, needle); });
    }
    case Kind::List:
        return std::any_of(e.as<ListNode>().items.begin(), e.as<ListNode>().items.end(),
                           [&](const Expr& a) { return has(a, needle); });
    case Kind::Relational:
        return has(e.as<RelationalNode>().lhs, needle) || has(e.as<RelationalNode>().rhs, needle);
    case Kind::Matrix:
        return std::any_of(e.as<MatrixNode>().entries.begin(), e.as<MatrixNode>().entries.end(),
                           [&](const Expr& a) { return has(a, needle); });
    }
    return false;
}

namespace {

bool map_vector(const std::vector<Expr>& in, std::vector<Expr>& out, const std::function<Expr(const Expr&)>& f) {
    bool changed = false;
    out.reserve(in.size());
    for (const auto& x : in) {
        out.push_back(f(x));
        changed = changed || out.back().ptr() != x.ptr();
    }
    return changed;
}

} // namespace

Expr map_operands(const Expr& e, const std::function<Expr(const Expr&)>& f) {
    switch (e.kind()) {
    case Kind::Numeric:
    case Kind::Symbol:
    case Kind::Constant:
        return e;
    case Kind::Power: {
        const auto& p = e.as<PowerNode>();
        Expr b = f(p.base);
        Expr x = f(p.exponent);
        if (b.ptr() == p.base.ptr() && x.ptr() == p.exponent.ptr()) {
            return e;
        }
        return build_power(b, x);
    }
    case Kind::Add:
    case Kind::Mul: {
        const auto& s = e.as<PairSeqNode>();
        std::vector<Expr> rests;
        rests.reserve(s.pairs.size());
        bool changed = false;
        for (const auto& p : s.pairs) {
            rests.push_back(f(p.rest));
            changed = changed || rests.back().ptr() != p.rest.ptr();
        }
        if (!changed) {
            return e;
        }
        std::vector<Expr> parts;
        parts.reserve(s.pairs.size() + 1);
        parts.emplace_back(s.overall);
        for (std::size_t i = 0; i < s.pairs.size(); ++i) {
            const Number& k = s.pairs[i].key;
            if (e.is(Kind::Add)) {
                parts.push_back(k.is_one() ? rests[i] : build_mul({Expr(k), rests[i]}));
            } else {
                parts.push_back(build_power(rests[i], Expr(k)));
            }
        }
        return e.is(Kind::Add) ? build_add(std::move(parts)) : build_mul(std::move(parts));
    }
    case Kind::Function: {
        const auto& fn = e.as<FunctionNode>();
        std::vector<Expr> args;
        if (!map_vector(fn.args, args, f)) {
            return e;
        }
        return fn_apply(*fn.def, std::move(args));
    }
    case Kind::Series: {
        const auto& s = *e.as<SeriesNode>().series;
        std::vector<SeriesTerm> terms;
        bool changed = false;
        for (const auto& t : s.terms()) {
            terms.push_back({f(t.coeff), t.exponent});
            changed = changed || terms.back().coeff.ptr() != t.coeff.ptr();
        }
        Expr point = f(s.point());
        changed = changed || point.ptr() != s.point().ptr();
        if (!changed) {
            return e;
        }
        return make_series(PSeries(s.var(), point, std::move(terms), s.order()));
    }
    case Kind::List: {
        std::vector<Expr> items;
        if (!map_vector(e.as<ListNode>().items, items, f)) {
            return e;
        }
        return make_list(std::move(items));
    }
    case Kind::Relational: {
        const auto& r = e.as<RelationalNode>();
        Expr l = f(r.lhs);
        Expr h = f(r.rhs);
        if (l.ptr() == r.lhs.ptr() && h.ptr() == r.rhs.ptr()) {
            return e;
        }
        return make_relational(l, h, r.op);
    }
    case Kind::Matrix: {
        const auto& m = e.as<MatrixNode>();
        std::vector<Expr> entries;
        if (!map_vector(m.entries, entries, f)) {
            return e;
        }
        return make_matrix_node(m.rows, m.cols, std::move(entries));
    }
    }
    return e;
}

std::vector<Expr> operands(const Expr& e) {
    switch (e.kind()) {
    case Kind::Power:
        return {e.as<PowerNode>().base, e.as<PowerNode>().exponent};
    case Kind::Add:
    case Kind::Mul: {
        const auto& s = e.as<PairSeqNode>();
        std::vector<Expr> out;
        const bool add = e.is(Kind::Add);
        if (add ? !s.overall.is_zero() : !s.overall.is_one()) {
            out.emplace_back(s.overall);
        }
        for (const auto& p : s.pairs) {
            if (p.key.is_one()) {
                out.push_back(p.rest);
            } else {
                out.push_back(add ? build_mul({Expr(p.key), p.rest}) : build_power(p.rest, Expr(p.key)));
            }
        }
        return out;
    }
    case Kind::Function:
        return e.as<FunctionNode>().args;
    case Kind::List:
        return e.as<ListNode>().items;
    case Kind::Relational:
        return {e.as<RelationalNode>().lhs, e.as<RelationalNode>().rhs};
    case Kind::Matrix:
        return e.as<MatrixNode>().entries;
    default:
        return {};
    }
}

} // namespace symkit
