#pragma once

// Exact dense integer matrices: Bareiss determinant, adjugate, rational rank,
// column Hermite normal form and integer linear-system solving.

#include "sigtau/integer.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sigtau {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (const auto& r : rows) {
            if (r.size() != cols_) {
                throw std::invalid_argument("ragged matrix literal");
            }
            for (long long v : r) {
                data_.emplace_back(v);
            }
        }
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows)
    {
        if (rows.empty()) {
            return {};
        }
        IntMatrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) {
                throw std::invalid_argument("ragged matrix rows");
            }
            for (std::size_t j = 0; j < m.cols_; ++j) {
                m(i, j) = rows[i][j];
            }
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Integer> row(std::size_t i) const
    {
        return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
    }

    std::vector<Integer> column(std::size_t j) const
    {
        std::vector<Integer> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            c[i] = (*this)(i, j);
        }
        return c;
    }

    IntMatrix transpose() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    /// Rows listed in `which`, in that order.
    IntMatrix select_rows(const std::vector<std::size_t>& which) const
    {
        IntMatrix m(which.size(), cols_);
        for (std::size_t r = 0; r < which.size(); ++r) {
            if (which[r] >= rows_) {
                throw std::out_of_range("row index " + std::to_string(which[r]) + " out of range");
            }
            for (std::size_t j = 0; j < cols_; ++j) {
                m(r, j) = (*this)(which[r], j);
            }
        }
        return m;
    }

    IntMatrix minor(std::size_t skip_row, std::size_t skip_col) const
    {
        IntMatrix m(rows_ - 1, cols_ - 1);
        for (std::size_t i = 0, r = 0; i < rows_; ++i) {
            if (i == skip_row) {
                continue;
            }
            for (std::size_t j = 0, c = 0; j < cols_; ++j) {
                if (j == skip_col) {
                    continue;
                }
                m(r, c++) = (*this)(i, j);
            }
            ++r;
        }
        return m;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) {
            return;
        }
        for (std::size_t j = 0; j < cols_; ++j) {
            std::swap((*this)(a, j), (*this)(b, j));
        }
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_) {
            throw std::invalid_argument("matrix product shape mismatch");
        }
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Integer& aik = a(i, k);
                if (aik == 0) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    c(i, j) += aik * b(k, j);
                }
            }
        }
        return c;
    }

    friend std::vector<Integer> operator*(const IntMatrix& a, const std::vector<Integer>& x)
    {
        if (a.cols_ != x.size()) {
            throw std::invalid_argument("matrix-vector shape mismatch");
        }
        std::vector<Integer> y(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j) {
                y[i] += a(i, j) * x[j];
            }
        }
        return y;
    }

    friend IntMatrix operator*(const Integer& s, IntMatrix a)
    {
        for (auto& v : a.data_) {
            v *= s;
        }
        return a;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    std::string str() const
    {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            s += "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                s += (j ? " " : "") + (*this)(i, j).str();
            }
            s += "]\n";
        }
        return s;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

inline void require_square(const IntMatrix& a, const char* what)
{
    if (!a.is_square()) {
        throw std::invalid_argument(std::string(what) + " needs a square matrix, got " + std::to_string(a.rows()) +
                                    "x" + std::to_string(a.cols()));
    }
}

/// Fraction-free (Bareiss) determinant. Every division is exact.
inline Integer det_bareiss(IntMatrix a)
{
    require_square(a, "det_bareiss");
    const std::size_t n = a.rows();
    if (n == 0) {
        return 1;
    }
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a(r, k) == 0) {
                ++r;
            }
            if (r == n) {
                return 0;
            }
            a.swap_rows(k, r);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = exact_div(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

/// Rank over the rationals by fraction-free elimination.
inline std::size_t rational_rank(IntMatrix a)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && a(p, c) == 0) {
            ++p;
        }
        if (p == m) {
            continue;
        }
        a.swap_rows(r, p);
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                a(i, j) = exact_div(a(i, j) * a(r, c) - a(i, c) * a(r, j), prev);
            }
            a(i, c) = 0;
        }
        prev = a(r, c);
        ++r;
    }
    return r;
}

/// Adjugate (transposed cofactor matrix): a * adjugate(a) == det(a) * I.
inline IntMatrix adjugate(const IntMatrix& a)
{
    require_square(a, "adjugate");
    const std::size_t n = a.rows();
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        return IntMatrix::identity(1);
    }
    const Integer det = det_bareiss(a);
    if (det == 0) {
        IntMatrix adj(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Integer m = det_bareiss(a.minor(j, i));
                adj(i, j) = ((i + j) % 2 == 0) ? m : Integer(-m);
            }
        }
        return adj;
    }
    // Bareiss on [a | I] gives [U | R] with U = R a, U upper triangular.
    // Then adj(a) = det * a^-1 = det * U^-1 R; back substitution is exact
    // because the solution is integral.
    IntMatrix u(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            u(i, j) = a(i, j);
        }
        u(i, n + i) = 1;
    }
    Integer prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (u(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && u(r, k) == 0) {
                ++r;
            }
            u.swap_rows(k, r); // r < n since det != 0
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < 2 * n; ++j) {
                u(i, j) = exact_div(u(i, j) * u(k, k) - u(i, k) * u(k, j), prev);
            }
            u(i, k) = 0;
        }
        prev = u(k, k);
    }
    IntMatrix adj(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t ii = n; ii-- > 0;) {
            Integer s = det * u(ii, n + c);
            for (std::size_t j = ii + 1; j < n; ++j) {
                s -= u(ii, j) * adj(j, c);
            }
            adj(ii, c) = exact_div(s, u(ii, ii));
        }
    }
    return adj;
}

/// Column Hermite normal form: h = a * u with u unimodular, h lower
/// echelon. pivot_rows[c] is the row holding the positive pivot of column c;
/// entries left of a pivot are reduced into [0, pivot).
struct HermiteForm {
    IntMatrix h;
    IntMatrix u;
    std::vector<std::size_t> pivot_rows;

    std::size_t rank() const noexcept { return pivot_rows.size(); }
};

inline HermiteForm column_hermite_form(const IntMatrix& a)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    HermiteForm f{a, IntMatrix::identity(n), {}};
    IntMatrix& h = f.h;
    IntMatrix& u = f.u;

    auto combine = [&](std::size_t pc, std::size_t j, const Integer& x, const Integer& y, const Integer& s,
                       const Integer& t) {
        // col_pc <- x col_pc + y col_j ; col_j <- s col_pc + t col_j
        for (IntMatrix* mat : {&h, &u}) {
            IntMatrix& w = *mat;
            for (std::size_t r = 0; r < w.rows(); ++r) {
                Integer a_pc = w(r, pc);
                Integer a_j = w(r, j);
                if (a_pc == 0 && a_j == 0) {
                    continue;
                }
                w(r, pc) = x * a_pc + y * a_j;
                w(r, j) = s * a_pc + t * a_j;
            }
        }
    };

    std::size_t pc = 0;
    for (std::size_t i = 0; i < m && pc < n; ++i) {
        for (std::size_t j = pc + 1; j < n; ++j) {
            if (h(i, j) == 0) {
                continue;
            }
            Integer x;
            Integer y;
            const Integer av = h(i, pc);
            const Integer bv = h(i, j);
            const Integer g = extended_gcd(av, bv, x, y);
            combine(pc, j, x, y, Integer(-bv / g), Integer(av / g));
        }
        if (h(i, pc) == 0) {
            continue;
        }
        if (h(i, pc) < 0) {
            for (IntMatrix* mat : {&h, &u}) {
                for (std::size_t r = 0; r < mat->rows(); ++r) {
                    (*mat)(r, pc) = -(*mat)(r, pc);
                }
            }
        }
        const Integer piv = h(i, pc);
        for (std::size_t c = 0; c < pc; ++c) {
            const Integer q = (h(i, c) - floor_mod(h(i, c), piv)) / piv;
            if (q == 0) {
                continue;
            }
            for (IntMatrix* mat : {&h, &u}) {
                for (std::size_t r = 0; r < mat->rows(); ++r) {
                    (*mat)(r, c) -= q * (*mat)(r, pc);
                }
            }
        }
        f.pivot_rows.push_back(i);
        ++pc;
    }
    return f;
}

/// Solves a x = c over the integers from a precomputed Hermite form, so
/// that many right-hand sides can share one factorisation.
class IntegerSolver {
public:
    explicit IntegerSolver(const IntMatrix& a) : rows_(a.rows()), cols_(a.cols()), form_(column_hermite_form(a)) {}

    const HermiteForm& form() const noexcept { return form_; }

    std::optional<std::vector<Integer>> solve(const std::vector<Integer>& c) const
    {
        if (c.size() != rows_) {
            throw std::invalid_argument("right-hand side has length " + std::to_string(c.size()) + ", expected " +
                                        std::to_string(rows_));
        }
        const IntMatrix& h = form_.h;
        std::vector<Integer> y(cols_);
        std::size_t pc = 0;
        for (std::size_t i = 0; i < rows_; ++i) {
            Integer s = c[i];
            for (std::size_t j = 0; j < pc; ++j) {
                if (h(i, j) != 0) {
                    s -= h(i, j) * y[j];
                }
            }
            if (pc < form_.rank() && form_.pivot_rows[pc] == i) {
                if (!divides(h(i, pc), s)) {
                    return std::nullopt;
                }
                y[pc] = s / h(i, pc);
                ++pc;
            } else if (s != 0) {
                return std::nullopt;
            }
        }
        return form_.u * y;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    HermiteForm form_;
};

/// Some integral x with a x = c, or nullopt when none exists.
inline std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a, const std::vector<Integer>& c)
{
    return IntegerSolver(a).solve(c);
}

/// Independent route for square nonsingular a: x = adj(a) c / det(a).
inline std::optional<std::vector<Integer>> solve_adjugate(const IntMatrix& a, const std::vector<Integer>& c)
{
    require_square(a, "solve_adjugate");
    const Integer det = det_bareiss(a);
    if (det == 0) {
        throw std::invalid_argument("solve_adjugate needs a nonsingular matrix");
    }
    std::vector<Integer> num = adjugate(a) * c;
    for (auto& v : num) {
        if (!divides(det, v)) {
            return std::nullopt;
        }
        v /= det;
    }
    return num;
}

} // namespace sigtau
