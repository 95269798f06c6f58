#include "symkit/matrix.hpp"

#include "poly_internal.hpp"
#include "symkit/errors.hpp"
#include "symkit/ops.hpp"
#include "symkit/poly.hpp"

#include <algorithm>

namespace symkit {

using detail::Frac;
using detail::Poly;
using detail::PolyContext;

namespace {

const MatrixNode& as_matrix(const Expr& m) {
    if (!m.is(Kind::Matrix)) {
        throw ShapeError("not a matrix: " + m.to_string());
    }
    return m.as<MatrixNode>();
}

const MatrixNode& as_square(const Expr& m) {
    const auto& node = as_matrix(m);
    if (node.rows != node.cols) {
        throw ShapeError("matrix is not square");
    }
    return node;
}

bool all_rational(const std::vector<Expr>& entries) {
    return std::all_of(entries.begin(), entries.end(),
                       [](const Expr& e) { return e.is_numeric() && e.number().is_rational(); });
}

mpq_class to_mpq(const Expr& e) {
    const Number& n = e.number();
    mpq_class q(n.numerator(), n.denominator());
    return q;
}

Expr from_mpq(const mpq_class& q) { return Expr(Number(q)); }

// Field operations for the two element types used by elimination.
struct RationalField {
    using T = mpq_class;
    static bool is_zero(const T& x) { return sgn(x) == 0; }
    static T sub(const T& a, const T& b) { return a - b; }
    static T mul(const T& a, const T& b) { return a * b; }
    static T div(const T& a, const T& b) { return a / b; }
};

struct FracField {
    using T = Frac;
    static bool is_zero(const T& x) { return x.num.is_zero(); }
    static T sub(const T& a, const T& b) { return detail::frac_sub(a, b); }
    static T mul(const T& a, const T& b) { return detail::frac_mul(a, b); }
    static T div(const T& a, const T& b) { return detail::frac_div(a, b); }
};

/// Reduced row echelon form over the first `ncoef` columns. Returns the
/// pivot column of each pivot row.
template <class F>
std::vector<std::size_t> rref(std::vector<std::vector<typename F::T>>& a, std::size_t ncoef) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncoef && row < a.size(); ++col) {
        std::size_t p = row;
        while (p < a.size() && F::is_zero(a[p][col])) {
            ++p;
        }
        if (p == a.size()) {
            continue;
        }
        std::swap(a[row], a[p]);
        const auto pivot = a[row][col];
        for (std::size_t j = col; j < a[row].size(); ++j) {
            if (!F::is_zero(a[row][j])) {
                a[row][j] = F::div(a[row][j], pivot);
            }
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == row || F::is_zero(a[i][col])) {
                continue;
            }
            const auto factor = a[i][col];
            for (std::size_t j = col; j < a[i].size(); ++j) {
                if (!F::is_zero(a[row][j])) {
                    a[i][j] = F::sub(a[i][j], F::mul(factor, a[row][j]));
                }
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

mpq_class rational_det(std::vector<std::vector<mpq_class>> a) {
    const std::size_t n = a.size();
    mpq_class det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && sgn(a[p][k]) == 0) {
            ++p;
        }
        if (p == n) {
            return 0;
        }
        if (p != k) {
            std::swap(a[p], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (sgn(a[i][k]) == 0) {
                continue;
            }
            const mpq_class f = a[i][k] / a[k][k];
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    return det;
}

using PolyMatrix = std::vector<std::vector<Poly>>;

PolyMatrix minor_of(const PolyMatrix& m, std::size_t row, std::size_t col) {
    PolyMatrix out;
    out.reserve(m.size() - 1);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == row) {
            continue;
        }
        std::vector<Poly> r;
        r.reserve(m.size() - 1);
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j != col) {
                r.push_back(m[i][j]);
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

Poly bareiss(PolyMatrix m, std::size_t nv) {
    const std::size_t n = m.size();
    Poly prev = Poly::constant(nv, 1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k].is_zero()) {
            ++p;
        }
        if (p == n) {
            return Poly(nv);
        }
        if (p != k) {
            std::swap(m[p], m[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = prev.is_one() ? std::move(t) : detail::divide_exact(t, prev);
            }
            m[i][k] = Poly(nv);
        }
        prev = m[k][k];
    }
    Poly d = m[n - 1][n - 1];
    return negate ? -d : d;
}

Poly poly_det(PolyMatrix m, std::size_t nv);

Poly cofactor_det(const PolyMatrix& m, std::size_t nv) {
    const std::size_t n = m.size();
    if (n == 0) {
        return Poly::constant(nv, 1);
    }
    if (n == 1) {
        return m[0][0];
    }
    Poly sum(nv);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) {
            continue;
        }
        Poly t = m[0][j] * poly_det(minor_of(m, 0, j), nv);
        sum = (j % 2 == 0) ? sum + t : sum - t;
    }
    return sum;
}

Poly poly_det(PolyMatrix m, std::size_t nv) {
    Poly factor = Poly::constant(nv, 1);
    // expand along lines with at most one nonzero entry
    for (bool reduced = true; reduced && m.size() > 3;) {
        reduced = false;
        const std::size_t n = m.size();
        for (std::size_t i = 0; i < n && !reduced; ++i) {
            std::size_t count = 0, where = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (!m[i][j].is_zero()) {
                    ++count;
                    where = j;
                }
            }
            if (count == 0) {
                return Poly(nv);
            }
            if (count == 1) {
                factor = factor * m[i][where];
                if ((i + where) % 2 == 1) {
                    factor = -factor;
                }
                m = minor_of(m, i, where);
                reduced = true;
            }
        }
        for (std::size_t j = 0; j < n && !reduced; ++j) {
            std::size_t count = 0, where = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (!m[i][j].is_zero()) {
                    ++count;
                    where = i;
                }
            }
            if (count == 0) {
                return Poly(nv);
            }
            if (count == 1) {
                factor = factor * m[where][j];
                if ((where + j) % 2 == 1) {
                    factor = -factor;
                }
                m = minor_of(m, where, j);
                reduced = true;
            }
        }
    }
    if (m.size() <= 3) {
        return factor * cofactor_det(m, nv);
    }
    return factor * bareiss(std::move(m), nv);
}

Expr symbolic_det(const MatrixNode& node) {
    PolyContext ctx(PolyContext::Mode::Generators);
    for (const auto& e : node.entries) {
        ctx.scan(e);
    }
    ctx.finalize();
    const std::size_t n = node.rows;
    const std::size_t nv = ctx.nv();
    PolyMatrix m(n);
    Poly scale = Poly::constant(nv, 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Frac> row;
        row.reserve(n);
        Poly row_den = Poly::constant(nv, 1);
        for (std::size_t j = 0; j < n; ++j) {
            row.push_back(ctx.to_frac(node.entries[i * n + j]));
            const Poly& d = row.back().den;
            if (!d.is_one()) {
                row_den = detail::divide_exact(row_den * d, detail::gcd(row_den, d));
            }
        }
        for (auto& f : row) {
            m[i].push_back(f.den.is_one() && row_den.is_one() ? f.num
                                                               : f.num * detail::divide_exact(row_den, f.den));
        }
        scale = scale * row_den;
    }
    Poly d = poly_det(std::move(m), nv);
    return ctx.to_expr(detail::frac_make(std::move(d), std::move(scale)));
}

} // namespace

Expr matrix(std::size_t rows, std::size_t cols, std::vector<Expr> entries) {
    return make_matrix_node(rows, cols, std::move(entries));
}

Expr matrix(const std::vector<std::vector<Expr>>& rows) {
    if (rows.empty()) {
        throw ShapeError("matrix needs at least one row");
    }
    const std::size_t cols = rows.front().size();
    std::vector<Expr> entries;
    for (const auto& r : rows) {
        if (r.size() != cols) {
            throw ShapeError("rows of unequal length");
        }
        entries.insert(entries.end(), r.begin(), r.end());
    }
    return matrix(rows.size(), cols, std::move(entries));
}

Expr identity_matrix(std::size_t n) {
    std::vector<Expr> entries(n * n, Expr(0));
    for (std::size_t i = 0; i < n; ++i) {
        entries[i * n + i] = Expr(1);
    }
    return matrix(n, n, std::move(entries));
}

std::size_t mat_rows(const Expr& m) { return as_matrix(m).rows; }
std::size_t mat_cols(const Expr& m) { return as_matrix(m).cols; }

const Expr& mat_entry(const Expr& m, std::size_t i, std::size_t j) {
    const auto& node = as_matrix(m);
    if (i >= node.rows || j >= node.cols) {
        throw ShapeError("matrix index out of range");
    }
    return node.entries[i * node.cols + j];
}

Expr mat_add(const Expr& a, const Expr& b) {
    const auto& x = as_matrix(a);
    const auto& y = as_matrix(b);
    if (x.rows != y.rows || x.cols != y.cols) {
        throw ShapeError("matrix sizes differ");
    }
    std::vector<Expr> out;
    out.reserve(x.entries.size());
    for (std::size_t k = 0; k < x.entries.size(); ++k) {
        out.push_back(x.entries[k] + y.entries[k]);
    }
    return matrix(x.rows, x.cols, std::move(out));
}

Expr mat_sub(const Expr& a, const Expr& b) { return mat_add(a, mat_scale(b, Expr(-1))); }

Expr mat_scale(const Expr& m, const Expr& c) {
    const auto& x = as_matrix(m);
    std::vector<Expr> out;
    out.reserve(x.entries.size());
    for (const auto& e : x.entries) {
        out.push_back(c * e);
    }
    return matrix(x.rows, x.cols, std::move(out));
}

Expr mat_mul(const Expr& a, const Expr& b) {
    const auto& x = as_matrix(a);
    const auto& y = as_matrix(b);
    if (x.cols != y.rows) {
        throw ShapeError("matrix sizes do not match for multiplication");
    }
    std::vector<Expr> out;
    out.reserve(x.rows * y.cols);
    for (std::size_t i = 0; i < x.rows; ++i) {
        for (std::size_t j = 0; j < y.cols; ++j) {
            std::vector<Expr> terms;
            terms.reserve(x.cols);
            for (std::size_t k = 0; k < x.cols; ++k) {
                terms.push_back(x.entries[i * x.cols + k] * y.entries[k * y.cols + j]);
            }
            out.push_back(build_add(std::move(terms)));
        }
    }
    return matrix(x.rows, y.cols, std::move(out));
}

Expr mat_transpose(const Expr& m) {
    const auto& x = as_matrix(m);
    std::vector<Expr> out;
    out.reserve(x.entries.size());
    for (std::size_t j = 0; j < x.cols; ++j) {
        for (std::size_t i = 0; i < x.rows; ++i) {
            out.push_back(x.entries[i * x.cols + j]);
        }
    }
    return matrix(x.cols, x.rows, std::move(out));
}

Expr mat_normal(const Expr& m) { return normal(m); }

Expr mat_det(const Expr& m) {
    const auto& node = as_square(m);
    const std::size_t n = node.rows;
    if (all_rational(node.entries)) {
        std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] = to_mpq(node.entries[i * n + j]);
            }
        }
        return from_mpq(rational_det(std::move(a)));
    }
    return symbolic_det(node);
}

Expr mat_inverse(const Expr& m) {
    const auto& node = as_square(m);
    const std::size_t n = node.rows;
    if (all_rational(node.entries)) {
        std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] = to_mpq(node.entries[i * n + j]);
            }
            a[i][n + i] = 1;
        }
        if (rref<RationalField>(a, n).size() < n) {
            throw SingularMatrix();
        }
        std::vector<Expr> out;
        out.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                out.push_back(from_mpq(a[i][n + j]));
            }
        }
        return matrix(n, n, std::move(out));
    }
    PolyContext ctx(PolyContext::Mode::Generators);
    for (const auto& e : node.entries) {
        ctx.scan(e);
    }
    ctx.finalize();
    const std::size_t nv = ctx.nv();
    const Frac zero{Poly(nv), Poly::constant(nv, 1)};
    const Frac one{Poly::constant(nv, 1), Poly::constant(nv, 1)};
    std::vector<std::vector<Frac>> a(n, std::vector<Frac>(2 * n, zero));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = ctx.to_frac(node.entries[i * n + j]);
        }
        a[i][n + i] = one;
    }
    if (rref<FracField>(a, n).size() < n) {
        throw SingularMatrix();
    }
    std::vector<Expr> out;
    out.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.push_back(ctx.to_expr(a[i][n + j]));
        }
    }
    return matrix(n, n, std::move(out));
}

Expr mat_charpoly(const Expr& m, const Expr& lambda) {
    const auto& node = as_square(m);
    if (!lambda.is(Kind::Symbol)) {
        throw DomainError("charpoly needs a symbol");
    }
    for (const auto& e : node.entries) {
        if (has(e, lambda)) {
            throw DomainError(lambda.to_string() + " occurs in the matrix");
        }
    }
    const std::size_t n = node.rows;
    std::vector<Expr> entries = node.entries;
    for (std::size_t i = 0; i < n; ++i) {
        entries[i * n + i] = entries[i * n + i] - lambda;
    }
    return collect(mat_det(matrix(n, n, std::move(entries))), lambda);
}

Expr solve_linear(const Expr& equations, const Expr& variables) {
    auto items = [](const Expr& e) -> std::vector<Expr> {
        if (e.is(Kind::List)) {
            return e.as<ListNode>().items;
        }
        return {e};
    };
    const std::vector<Expr> eqs = items(equations);
    const std::vector<Expr> vars = items(variables);
    for (const auto& v : vars) {
        if (!v.is(Kind::Symbol)) {
            throw DomainError("solve_linear: not a symbol: " + v.to_string());
        }
    }
    const std::size_t m = eqs.size();
    const std::size_t n = vars.size();
    // rows of coefficients followed by the right-hand side
    std::vector<std::vector<Expr>> rows(m, std::vector<Expr>(n + 1));
    for (std::size_t i = 0; i < m; ++i) {
        Expr lhs = eqs[i];
        if (lhs.is(Kind::Relational)) {
            const auto& r = lhs.as<RelationalNode>();
            if (r.op != RelOp::Eq) {
                throw DomainError("solve_linear: expected an equation");
            }
            lhs = r.lhs - r.rhs;
        }
        Expr rest = expand(lhs);
        for (std::size_t j = 0; j < n; ++j) {
            if (degree(rest, vars[j]) > 1 || ldegree(rest, vars[j]) < 0) {
                throw DomainError("solve_linear: equation is not linear: " + eqs[i].to_string());
            }
            Expr c = coeff(rest, vars[j], 1);
            for (const auto& v : vars) {
                if (has(c, v)) {
                    throw DomainError("solve_linear: equation is not linear: " + eqs[i].to_string());
                }
            }
            rows[i][j] = c;
            rest = coeff(rest, vars[j], 0);
        }
        rows[i][n] = -rest;
    }
    PolyContext ctx(PolyContext::Mode::Generators);
    for (const auto& r : rows) {
        for (const auto& e : r) {
            ctx.scan(e);
        }
    }
    ctx.finalize();
    std::vector<std::vector<Frac>> a(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (const auto& e : rows[i]) {
            a[i].push_back(ctx.to_frac(e));
        }
    }
    const auto pivots = rref<FracField>(a, n);
    for (std::size_t i = pivots.size(); i < m; ++i) {
        if (!a[i][n].num.is_zero()) {
            throw NoUniqueSolution("linear system is inconsistent");
        }
    }
    if (pivots.size() < n) {
        throw NoUniqueSolution("linear system is underdetermined");
    }
    std::vector<Expr> out;
    out.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.push_back(eq(vars[j], ctx.to_expr(a[j][n])));
    }
    return make_list(std::move(out));
}

} // namespace symkit
