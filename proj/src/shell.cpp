#include "symkit/shell.hpp"

#include "symkit/errors.hpp"
#include "symkit/function.hpp"
#include "symkit/matrix.hpp"
#include "symkit/ops.hpp"
#include "symkit/poly.hpp"
#include "symkit/series.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <istream>
#include <map>
#include <ostream>

namespace symkit {

namespace {

class Parser {
public:
    Parser(Session& session, std::string_view text) : session_(session), text_(text) {}

    Expr parse_all() {
        Expr e = expression();
        skip_space();
        if (pos_ < text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return e;
    }

private:
    struct Call {
        std::string name;
        std::size_t position;
        std::vector<Expr> args;
    };

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_ + 1); }
    [[noreturn]] void fail_at(const std::string& message, std::size_t at) const { throw ParseError(message, at + 1); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool peek(std::string_view token) {
        skip_space();
        return text_.substr(pos_, token.size()) == token;
    }

    bool accept(std::string_view token) {
        if (peek(token)) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view token) {
        if (!accept(token)) {
            fail(pos_ < text_.size() ? "expected '" + std::string(token) + "'"
                                     : "expected '" + std::string(token) + "' before end of input");
        }
    }

    Expr expression() {
        Expr lhs = sum();
        static const std::pair<std::string_view, RelOp> ops[] = {{"==", RelOp::Eq}, {"!=", RelOp::Ne},
                                                                 {"<=", RelOp::Le}, {">=", RelOp::Ge},
                                                                 {"<", RelOp::Lt},  {">", RelOp::Gt}};
        for (const auto& [tok, op] : ops) {
            if (accept(tok)) {
                return make_relational(lhs, sum(), op);
            }
        }
        return lhs;
    }

    Expr sum() {
        Expr acc = product();
        for (;;) {
            if (accept("+")) {
                acc = acc + product();
            } else if (accept("-")) {
                acc = acc - product();
            } else {
                return acc;
            }
        }
    }

    // one build_mul per chain: pairwise folding would distribute c*(a+b) before the next factor arrives
    Expr product() {
        std::vector<Expr> factors;
        signed_factor(factors, false);
        for (;;) {
            if (accept("*")) {
                signed_factor(factors, false);
            } else if (accept("/")) {
                signed_factor(factors, true);
            } else {
                return factors.size() == 1 ? factors.front() : build_mul(factors);
            }
        }
    }

    void signed_factor(std::vector<Expr>& out, bool invert) {
        bool negative = false;
        for (;;) {
            if (accept("-")) {
                negative = !negative;
            } else if (!accept("+")) {
                break;
            }
        }
        if (negative) {
            out.emplace_back(-1);
        }
        const Expr f = power();
        if (invert && f.is_zero()) {
            throw DivisionByZero("division by zero");
        }
        out.push_back(invert ? pow(f, Expr(-1)) : f);
    }

    Expr unary() {
        if (accept("-")) {
            return -unary();
        }
        if (accept("+")) {
            return unary();
        }
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (accept("^")) {
            return pow(base, unary());
        }
        return base;
    }

    Expr primary() {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return identifier();
        }
        if (c == '%') {
            const std::size_t start = pos_;
            int k = 0;
            while (pos_ < text_.size() && text_[pos_] == '%' && k < 3) {
                ++pos_;
                ++k;
            }
            auto e = session_.back_reference(k);
            if (!e) {
                fail_at("no expression for " + std::string(static_cast<std::size_t>(k), '%'), start);
            }
            return *e;
        }
        if (accept("(")) {
            Expr e = expression();
            expect(")");
            return e;
        }
        if (accept("[")) {
            return bracket();
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Expr number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) {
                ++p;
            }
            if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
                while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
                    ++p;
                }
                pos_ = p;
            }
        }
        try {
            return Expr(Number::from_string(text_.substr(start, pos_ - start)));
        } catch (const DomainError&) {
            fail_at("malformed number", start);
        }
    }

    Expr bracket() {
        std::vector<Expr> items;
        if (!accept("]")) {
            do {
                items.push_back(expression());
            } while (accept(","));
            expect("]");
        }
        // a list of equally long lists is a matrix
        if (!items.empty() && std::all_of(items.begin(), items.end(), [&](const Expr& e) {
                return e.is(Kind::List) && !e.as<ListNode>().items.empty() &&
                       e.as<ListNode>().items.size() == items.front().as<ListNode>().items.size();
            })) {
            std::vector<std::vector<Expr>> rows;
            for (const auto& r : items) {
                rows.push_back(r.as<ListNode>().items);
            }
            return matrix(rows);
        }
        return make_list(std::move(items));
    }

    Expr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        std::string name(text_.substr(start, pos_ - start));
        if (peek("(")) {
            ++pos_;
            Call call{name, start, {}};
            if (!accept(")")) {
                do {
                    call.args.push_back(expression());
                } while (accept(","));
                expect(")");
            }
            return apply(call);
        }
        if (name == "Pi") {
            return Pi();
        }
        if (name == "Euler") {
            return Euler();
        }
        if (name == "Catalan") {
            return Catalan();
        }
        if (name == "I") {
            return Expr(Number::imaginary_unit());
        }
        return session_.symbol(name);
    }

    void arity(const Call& c, std::size_t lo, std::size_t hi) const {
        if (c.args.size() < lo || c.args.size() > hi) {
            const std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi);
            fail_at(c.name + " takes " + want + " argument(s)", c.position);
        }
    }

    int small_int(const Call& c, const Expr& e) const {
        if (!e.is_integer() || !e.number().fits_long()) {
            fail_at(c.name + ": expected an integer, got " + e.to_string(), c.position);
        }
        return static_cast<int>(e.number().to_long());
    }

    Expr apply(const Call& c) {
        using Handler = std::function<Expr(Parser&, const Call&)>;
        static const std::map<std::string, Handler> commands = {
            {"expand", [](Parser& p, const Call& c) { p.arity(c, 1, 1); return expand(c.args[0]); }},
            {"normal", [](Parser& p, const Call& c) { p.arity(c, 1, 1); return normal(c.args[0]); }},
            {"collect", [](Parser& p, const Call& c) { p.arity(c, 2, 2); return collect(c.args[0], c.args[1]); }},
            {"degree",
             [](Parser& p, const Call& c) { p.arity(c, 2, 2); return Expr(degree(c.args[0], c.args[1])); }},
            {"ldegree",
             [](Parser& p, const Call& c) { p.arity(c, 2, 2); return Expr(ldegree(c.args[0], c.args[1])); }},
            {"coeff",
             [](Parser& p, const Call& c) {
                 p.arity(c, 3, 3);
                 return coeff(c.args[0], c.args[1], p.small_int(c, c.args[2]));
             }},
            {"diff",
             [](Parser& p, const Call& c) {
                 p.arity(c, 2, 3);
                 return diff(c.args[0], c.args[1], c.args.size() == 3 ? p.small_int(c, c.args[2]) : 1);
             }},
            {"series",
             [](Parser& p, const Call& c) {
                 p.arity(c, 3, 3);
                 return make_series(series_of(c.args[0], c.args[1], p.small_int(c, c.args[2])));
             }},
            {"subs", [](Parser& p, const Call& c) { p.arity(c, 2, 2); return subs(c.args[0], c.args[1]); }},
            {"evalf",
             [](Parser& p, const Call& c) {
                 p.arity(c, 1, 2);
                 const int digits = c.args.size() == 2 ? p.small_int(c, c.args[1]) : Precision::default_digits;
                 return evalf(c.args[0], Precision(digits));
             }},
            {"gcd", [](Parser& p, const Call& c) { p.arity(c, 2, 2); return poly_gcd(c.args[0], c.args[1]); }},
            {"lcm", [](Parser& p, const Call& c) { p.arity(c, 2, 2); return lcm(c.args[0], c.args[1]); }},
            {"lsolve",
             [](Parser& p, const Call& c) { p.arity(c, 2, 2); return solve_linear(c.args[0], c.args[1]); }},
            {"det", [](Parser& p, const Call& c) { p.arity(c, 1, 1); return mat_det(c.args[0]); }},
            {"inverse", [](Parser& p, const Call& c) { p.arity(c, 1, 1); return mat_inverse(c.args[0]); }},
            {"charpoly",
             [](Parser& p, const Call& c) { p.arity(c, 2, 2); return mat_charpoly(c.args[0], c.args[1]); }},
            {"transpose", [](Parser& p, const Call& c) { p.arity(c, 1, 1); return mat_transpose(c.args[0]); }},
            {"sqrt", [](Parser& p, const Call& c) { p.arity(c, 1, 1); return sqrt(c.args[0]); }},
            {"psi",
             [](Parser& p, const Call& c) {
                 p.arity(c, 1, 2);
                 return c.args.size() == 1 ? psi(c.args[0]) : psi(c.args[0], c.args[1]);
             }},
        };
        if (auto it = commands.find(c.name); it != commands.end()) {
            return it->second(*this, c);
        }
        if (const FunctionDef* def = fn_lookup(c.name)) {
            arity(c, def->arity, def->arity);
            return fn_apply(*def, c.args);
        }
        fail_at("unknown function '" + c.name + "'", c.position);
    }

    Session& session_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

Expr Session::parse(std::string_view text) { return Parser(*this, text).parse_all(); }

Expr Session::symbol(const std::string& name) {
    auto it = symbols_.find(name);
    if (it != symbols_.end()) {
        return it->second;
    }
    Expr s = symkit::symbol(name);
    symbols_.emplace(name, s);
    return s;
}

void Session::remember(const Expr& e) {
    ring_[2] = ring_[1];
    ring_[1] = ring_[0];
    ring_[0] = e;
}

std::optional<Expr> Session::back_reference(int k) const {
    if (k < 1 || k > 3) {
        return std::nullopt;
    }
    return ring_[static_cast<std::size_t>(k - 1)];
}

bool Session::execute_line(std::string_view line, std::ostream& out) {
    // '#' starts a comment
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
    }
    std::size_t start = 0;
    while (start < line.size()) {
        std::size_t end = start;
        int depth = 0;
        while (end < line.size()) {
            const char ch = line[end];
            if (ch == '(' || ch == '[') {
                ++depth;
            } else if (ch == ')' || ch == ']') {
                --depth;
            } else if (depth <= 0 && (ch == ';' || ch == ':')) {
                break;
            }
            ++end;
        }
        const bool silent = end < line.size() && line[end] == ':';
        const std::string_view statement = trim(line.substr(start, end - start));
        start = end + 1;
        if (statement.empty()) {
            continue;
        }
        if (statement == "quit" || statement == "exit") {
            return false;
        }
        try {
            Expr e = parse(statement);
            if (!silent) {
                out << e << '\n';
                remember(e);
            }
        } catch (const ParseError& err) {
            out << "syntax error: " << err.what() << '\n';
        } catch (const Error& err) {
            out << "error: " << err.what() << '\n';
        }
    }
    return true;
}

int Session::run(std::istream& in, std::ostream& out, const std::string& prompt) {
    std::string line;
    for (;;) {
        if (!prompt.empty()) {
            out << prompt << std::flush;
        }
        if (!std::getline(in, line)) {
            break;
        }
        if (!execute_line(line, out)) {
            break;
        }
    }
    if (in.bad()) {
        return 1;
    }
    return 0;
}

Expr parse(std::string_view text) {
    Session s;
    return s.parse(text);
}

} // namespace symkit
