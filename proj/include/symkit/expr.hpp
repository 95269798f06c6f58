#pragma once

#include "symkit/number.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace symkit {

/// Node kinds in canonical rank order.
enum class Kind : std::uint8_t {
    Numeric,
    Symbol,
    Constant,
    Power,
    Mul,
    Add,
    Function,
    Series,
    List,
    Relational,
    Matrix,
};

enum class RelOp : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

struct Node;
struct FunctionDef;
struct ConstantDef;
class PSeries;

/// Immutable, shareable handle to a canonical expression node.
class Expr {
public:
    Expr();
    Expr(const Number& value);
    Expr(const mpq_class& value) : Expr(Number(value)) {}
    template <std::integral T>
    Expr(T value) : Expr(Number(value)) {}
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    Kind kind() const noexcept;
    std::uint64_t hash() const noexcept;
    const Node& node() const noexcept { return *node_; }
    const std::shared_ptr<const Node>& ptr() const noexcept { return node_; }

    template <typename T>
    const T& as() const {
        return static_cast<const T&>(*node_);
    }

    bool is(Kind k) const noexcept { return kind() == k; }
    bool is_numeric() const noexcept { return kind() == Kind::Numeric; }
    bool is_symbol() const noexcept { return kind() == Kind::Symbol; }
    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    bool is_minus_one() const noexcept;
    bool is_integer() const noexcept;
    /// Exact rational numeric.
    bool is_rational() const noexcept;

    /// Value of a Numeric node; DomainError otherwise.
    const Number& number() const;

    std::string to_string() const;

    /// Structural identity (cmp == 0).
    friend bool operator==(const Expr& a, const Expr& b);
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

private:
    std::shared_ptr<const Node> node_;
};

struct Node {
    Node(Kind k) : kind(k) {}
    virtual ~Node() = default;
    Kind kind;
    std::uint64_t hash = 0;
};

struct NumericNode : Node {
    explicit NumericNode(Number v);
    Number value;
};

struct SymbolNode : Node {
    SymbolNode(std::uint64_t s, std::string n);
    std::uint64_t serial;
    std::string name;
};

/// Either a fixed Number or an arbitrary-precision generator.
struct ConstantDef {
    std::uint64_t serial = 0;
    std::string name;
    std::optional<Number> fixed;
    std::function<Number(Precision)> evaluator;
};

struct ConstantNode : Node {
    explicit ConstantNode(std::shared_ptr<const ConstantDef> d);
    std::shared_ptr<const ConstantDef> def;
};

struct PowerNode : Node {
    PowerNode(Expr b, Expr e);
    Expr base;
    Expr exponent;
};

/// (rest, key): coefficient in a sum, exponent in a product.
struct Pair {
    Expr rest;
    Number key;
};

/// Add: overall + sum key*rest.  Mul: overall * prod rest^key.
struct PairSeqNode : Node {
    PairSeqNode(Kind k, Number o, std::vector<Pair> p);
    Number overall;
    std::vector<Pair> pairs;
};

struct FunctionNode : Node {
    FunctionNode(const FunctionDef* d, std::vector<Expr> a);
    const FunctionDef* def;
    std::vector<Expr> args;
};

struct SeriesNode : Node {
    explicit SeriesNode(std::shared_ptr<const PSeries> s);
    std::shared_ptr<const PSeries> series;
};

struct ListNode : Node {
    explicit ListNode(std::vector<Expr> i);
    std::vector<Expr> items;
};

struct RelationalNode : Node {
    RelationalNode(Expr l, Expr r, RelOp o);
    Expr lhs;
    Expr rhs;
    RelOp op;
};

struct MatrixNode : Node {
    MatrixNode(std::size_t r, std::size_t c, std::vector<Expr> e);
    std::size_t rows;
    std::size_t cols;
    std::vector<Expr> entries;
};

/// sym_new: fresh symbol. Without a name it prints as "symbol<serial>".
Expr symbol(std::string name = {});
/// Constant with a fixed value, printed by name.
Expr constant(std::string name, Number fixed);
/// Constant with a digit generator.
Expr constant(std::string name, std::function<Number(Precision)> evaluator);

/// Pi, Euler's gamma and Catalan's constant.
const Expr& Pi();
const Expr& Euler();
const Expr& Catalan();

Expr build_add(std::vector<Expr> terms);
Expr build_mul(std::vector<Expr> factors);
Expr build_power(const Expr& base, const Expr& exponent);

Expr make_list(std::vector<Expr> items);
Expr make_relational(const Expr& lhs, const Expr& rhs, RelOp op);
inline Expr eq(const Expr& lhs, const Expr& rhs) { return make_relational(lhs, rhs, RelOp::Eq); }
/// Raw node used by the function registry once eval hooks decline.
Expr make_function_node(const FunctionDef& def, std::vector<Expr> args);
Expr make_series_node(std::shared_ptr<const PSeries> series);
Expr make_matrix_node(std::size_t rows, std::size_t cols, std::vector<Expr> entries);

/// Total order: kind rank first, then fields recursively. Returns -1, 0, +1.
int cmp(const Expr& a, const Expr& b);

struct ExprLess {
    bool operator()(const Expr& a, const Expr& b) const { return cmp(a, b) < 0; }
};

struct ExprHash {
    std::size_t operator()(const Expr& e) const noexcept { return static_cast<std::size_t>(e.hash()); }
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, const Expr& exponent);
Expr sqrt(const Expr& e);
inline Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
inline Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
inline Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }
inline Expr& operator/=(Expr& a, const Expr& b) { return a = a / b; }

std::ostream& operator<<(std::ostream& os, const Expr& e);

/// Occurrence test: does `needle` appear as a subexpression of `e`.
bool has(const Expr& e, const Expr& needle);

/// Rebuilds `e` with `f` applied to each immediate operand; returns `e`
/// itself when no operand changes. Atoms are returned unchanged.
Expr map_operands(const Expr& e, const std::function<Expr(const Expr&)>& f);

/// Immediate operands in order (sum terms, product factors, power base and
/// exponent, function arguments, list items, ...).
std::vector<Expr> operands(const Expr& e);

} // namespace symkit
