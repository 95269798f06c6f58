#pragma once

#include "symkit/expr.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace symkit {

/// Parser state: the name -> symbol table and the back-reference ring.
class Session {
public:
    Session() = default;

    /// Parses and evaluates one expression. Commands such as expand(...) run
    /// while parsing. Syntax errors raise ParseError with a 1-based position.
    Expr parse(std::string_view text);

    /// Symbol for a name, created on first use.
    Expr symbol(const std::string& name);

    /// Pushes e as the most recently printed expression.
    void remember(const Expr& e);
    /// k = 1 is %, 2 is %%, 3 is %%%.
    std::optional<Expr> back_reference(int k) const;

    /// Runs every statement of one input line. Statements end with ';'
    /// (print) or ':' (silent); a trailing statement without a terminator
    /// is printed. Returns false once "quit" or "exit" is read.
    bool execute_line(std::string_view line, std::ostream& out);

    /// Read-eval-print loop. The prompt is written only when non-empty.
    int run(std::istream& in, std::ostream& out, const std::string& prompt = {});

private:
    std::unordered_map<std::string, Expr> symbols_;
    std::array<std::optional<Expr>, 3> ring_;
};

/// Parses with a fresh session.
Expr parse(std::string_view text);

} // namespace symkit
