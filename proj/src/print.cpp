#include "symkit/expr.hpp"
#include "symkit/function.hpp"
#include "symkit/series.hpp"

#include <sstream>

namespace symkit {

namespace {

enum Level { kRelation = 0, kSum = 1, kProduct = 2, kPower = 3, kAtom = 4 };

int number_level(const Number& n) {
    if (!n.is_real()) {
        return kSum;
    }
    if (n.is_negative()) {
        return kSum;
    }
    if (n.kind() == Number::Kind::Rational) {
        return kProduct;
    }
    return kAtom;
}

int level(const Expr& e) {
    switch (e.kind()) {
    case Kind::Numeric:
        return number_level(e.number());
    case Kind::Add:
    case Kind::Series:
        return kSum;
    case Kind::Mul:
        return kProduct;
    case Kind::Power:
        return kPower;
    case Kind::Relational:
        return kRelation;
    default:
        return kAtom;
    }
}

std::string wrap(const Expr& e, int min_level) {
    std::string s = e.to_string();
    return level(e) < min_level ? "(" + s + ")" : s;
}

std::string power_string(const Expr& base, const Expr& exponent) {
    if (exponent.is_numeric() && exponent.number() == Number::make(1, 2)) {
        return "sqrt(" + base.to_string() + ")";
    }
    std::string b = wrap(base, kAtom);
    std::string x;
    if (exponent.is_numeric()) {
        const Number& n = exponent.number();
        x = n.is_nonnegative_integer() ? n.to_string() : "(" + n.to_string() + ")";
    } else {
        x = wrap(exponent, kAtom);
    }
    return b + "^" + x;
}

std::string factor_string(const Pair& p) {
    if (p.key.is_one()) {
        return wrap(p.rest, kProduct);
    }
    return power_string(p.rest, Expr(p.key));
}

std::string mul_string(const PairSeqNode& m) {
    std::string out;
    const Number& c = m.overall;
    if (c.is_minus_one()) {
        out = "-";
    } else if (!c.is_one()) {
        out = c.is_real() ? c.to_string() : "(" + c.to_string() + ")";
        out += "*";
    }
    bool first = true;
    for (const auto& p : m.pairs) {
        if (!first) {
            out += "*";
        }
        first = false;
        out += factor_string(p);
    }
    return out;
}

std::string term_string(const Pair& p) {
    if (p.key.is_one()) {
        return wrap(p.rest, kSum + 1);
    }
    if (p.key.is_minus_one()) {
        return "-" + wrap(p.rest, kProduct);
    }
    std::string k = p.key.is_real() ? p.key.to_string() : "(" + p.key.to_string() + ")";
    return k + "*" + wrap(p.rest, kProduct);
}

std::string add_string(const PairSeqNode& a) {
    std::string out;
    if (!a.overall.is_zero()) {
        out = a.overall.to_string();
    }
    for (const auto& p : a.pairs) {
        std::string t = term_string(p);
        if (!out.empty() && t[0] != '-') {
            out += "+";
        }
        out += t;
    }
    return out;
}

const char* relop_string(RelOp op) {
    switch (op) {
    case RelOp::Eq: return "==";
    case RelOp::Ne: return "!=";
    case RelOp::Lt: return "<";
    case RelOp::Le: return "<=";
    case RelOp::Gt: return ">";
    case RelOp::Ge: return ">=";
    }
    return "==";
}

std::string join(const std::vector<Expr>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) {
            out += ",";
        }
        out += items[i].to_string();
    }
    return out;
}

} // namespace

std::string Expr::to_string() const {
    switch (kind()) {
    case Kind::Numeric:
        return as<NumericNode>().value.to_string();
    case Kind::Symbol:
        return as<SymbolNode>().name;
    case Kind::Constant:
        return as<ConstantNode>().def->name;
    case Kind::Power:
        return power_string(as<PowerNode>().base, as<PowerNode>().exponent);
    case Kind::Mul:
        return mul_string(as<PairSeqNode>());
    case Kind::Add:
        return add_string(as<PairSeqNode>());
    case Kind::Function: {
        const auto& f = as<FunctionNode>();
        if (f.def->print) {
            return f.def->print(f.args);
        }
        return f.def->name + "(" + join(f.args) + ")";
    }
    case Kind::Series:
        return ps_to_string(*as<SeriesNode>().series);
    case Kind::List:
        return "[" + join(as<ListNode>().items) + "]";
    case Kind::Relational: {
        const auto& r = as<RelationalNode>();
        return r.lhs.to_string() + relop_string(r.op) + r.rhs.to_string();
    }
    case Kind::Matrix: {
        const auto& m = as<MatrixNode>();
        std::string out = "[";
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i) {
                out += ",";
            }
            std::vector<Expr> row(m.entries.begin() + static_cast<std::ptrdiff_t>(i * m.cols),
                                  m.entries.begin() + static_cast<std::ptrdiff_t>((i + 1) * m.cols));
            out += "[" + join(row) + "]";
        }
        return out + "]";
    }
    }
    return {};
}

} // namespace symkit
