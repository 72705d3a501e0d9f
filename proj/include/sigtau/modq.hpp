#pragma once

// Dense matrices over the prime field Z/q.

#include "sigtau/int_matrix.hpp"
#include "sigtau/integer.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigtau {

class InvalidModulus : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void require_prime_modulus(std::int64_t q)
{
    if (!is_prime(q)) {
        throw InvalidModulus("modulus " + std::to_string(q) + " is not prime");
    }
    if (q > 3037000499LL) {
        throw InvalidModulus("modulus " + std::to_string(q) + " is too large for 64-bit products");
    }
}

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t q)
{
    Integer x;
    Integer y;
    if (extended_gcd(Integer(a), Integer(q), x, y) != 1) {
        throw std::domain_error(std::to_string(a) + " is not invertible mod " + std::to_string(q));
    }
    return floor_mod(to_int64(floor_mod(x, Integer(q))), q);
}

class ModQMatrix {
public:
    ModQMatrix(std::int64_t q, std::size_t rows, std::size_t cols) : q_(q), rows_(rows), cols_(cols), data_(rows * cols)
    {
        require_prime_modulus(q);
    }

    static ModQMatrix from_rows(std::int64_t q, std::size_t cols, const std::vector<std::vector<std::int64_t>>& rows)
    {
        ModQMatrix m(q, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) {
                throw std::invalid_argument("row " + std::to_string(i) + " has wrong length");
            }
            for (std::size_t j = 0; j < cols; ++j) {
                m.set(i, j, rows[i][j]);
            }
        }
        return m;
    }

    static ModQMatrix identity(std::int64_t q, std::size_t n)
    {
        ModQMatrix m(q, n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m.set(i, i, 1);
        }
        return m;
    }

    std::int64_t q() const noexcept { return q_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, std::int64_t v) { data_[i * cols_ + j] = floor_mod(v, q_); }

    std::vector<std::int64_t> row(std::size_t i) const
    {
        return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
    }

    std::vector<std::vector<std::int64_t>> row_list() const
    {
        std::vector<std::vector<std::int64_t>> out;
        for (std::size_t i = 0; i < rows_; ++i) {
            out.push_back(row(i));
        }
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        for (std::size_t j = 0; j < cols_; ++j) {
            std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
        }
    }

    ModQMatrix transpose() const
    {
        ModQMatrix t(q_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                t.data_[j * rows_ + i] = (*this)(i, j);
            }
        }
        return t;
    }

    /// Rows of a stacked on rows of b.
    static ModQMatrix stack(const ModQMatrix& a, const ModQMatrix& b)
    {
        if (a.q_ != b.q_ || a.cols_ != b.cols_) {
            throw std::invalid_argument("cannot stack matrices of different shape or modulus");
        }
        ModQMatrix m(a.q_, a.rows_ + b.rows_, a.cols_);
        std::copy(a.data_.begin(), a.data_.end(), m.data_.begin());
        std::copy(b.data_.begin(), b.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(a.data_.size()));
        return m;
    }

    friend ModQMatrix operator*(const ModQMatrix& a, const ModQMatrix& b)
    {
        if (a.q_ != b.q_ || a.cols_ != b.rows_) {
            throw std::invalid_argument("mod-q product shape or modulus mismatch");
        }
        ModQMatrix c(a.q_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const std::int64_t aik = a(i, k);
                if (aik == 0) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    std::int64_t& v = c.data_[i * c.cols_ + j];
                    v = (v + aik * b(k, j)) % a.q_;
                }
            }
        }
        return c;
    }

    friend bool operator==(const ModQMatrix&, const ModQMatrix&) = default;

private:
    std::int64_t q_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::int64_t> data_;
};

/// Entrywise reduction Z -> Z/q into [0, q).
inline ModQMatrix omega_reduce(const IntMatrix& m, std::int64_t q)
{
    require_prime_modulus(q);
    ModQMatrix out(q, m.rows(), m.cols());
    const Integer qq(q);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out.set(i, j, to_int64(floor_mod(m(i, j), qq)));
        }
    }
    return out;
}

struct RowEchelon {
    ModQMatrix reduced;
    std::size_t rank;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form over Z/q. Zero rows are kept at the bottom.
inline RowEchelon rref_mod_q(ModQMatrix m)
{
    const std::int64_t q = m.q();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) {
            ++p;
        }
        if (p == m.rows()) {
            continue;
        }
        m.swap_rows(r, p);
        const std::int64_t inv = inverse_mod(m(r, c), q);
        for (std::size_t j = c; j < m.cols(); ++j) {
            m.set(r, j, m(r, j) * inv % q);
        }
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) {
                continue;
            }
            const std::int64_t f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) {
                m.set(i, j, m(i, j) - f * m(r, j));
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), r, std::move(pivots)};
}

inline std::size_t rank_mod_q(const ModQMatrix& m) { return rref_mod_q(m).rank; }

/// Basis of {x : M x^T = 0}, one vector per row.
inline ModQMatrix nullspace_mod_q(const ModQMatrix& m)
{
    const RowEchelon e = rref_mod_q(m);
    const std::int64_t q = m.q();
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : e.pivots) {
        is_pivot[c] = true;
    }
    ModQMatrix out(q, m.cols() - e.rank, m.cols());
    std::size_t row = 0;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) {
            continue;
        }
        out.set(row, f, 1);
        for (std::size_t i = 0; i < e.rank; ++i) {
            out.set(row, e.pivots[i], -e.reduced(i, f));
        }
        ++row;
    }
    return out;
}

} // namespace sigtau
