#pragma once

// Finite-rank commutative unital Z-algebras given by structure constants,
// their elements, Z-linear maps, and the basis-pair derivation checker.

#include "sigtau/integer.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sigtau {

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidAlgebra : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidEndomorphism : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Integer coordinate vector with respect to a fixed basis.
class Element {
public:
    Element() = default;
    explicit Element(std::vector<Integer> coords) : coords_(std::move(coords)) {}
    Element(std::initializer_list<long long> coords)
    {
        coords_.reserve(coords.size());
        for (long long c : coords) {
            coords_.emplace_back(c);
        }
    }

    static Element zero(std::size_t n) { return Element(std::vector<Integer>(n)); }

    static Element unit(std::size_t n, std::size_t i)
    {
        Element e = zero(n);
        e.coords_.at(i) = 1;
        return e;
    }

    std::size_t size() const noexcept { return coords_.size(); }
    const Integer& operator[](std::size_t i) const { return coords_[i]; }
    Integer& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<Integer>& coords() const noexcept { return coords_; }

    bool is_zero() const
    {
        for (const auto& c : coords_) {
            if (c != 0) {
                return false;
            }
        }
        return true;
    }

    Element& operator+=(const Element& o)
    {
        check_same_size(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            coords_[i] += o.coords_[i];
        }
        return *this;
    }

    Element& operator-=(const Element& o)
    {
        check_same_size(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            coords_[i] -= o.coords_[i];
        }
        return *this;
    }

    Element& operator*=(const Integer& s)
    {
        for (auto& c : coords_) {
            c *= s;
        }
        return *this;
    }

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator-(Element a)
    {
        for (auto& c : a.coords_) {
            c = -c;
        }
        return a;
    }
    friend Element operator*(const Integer& s, Element a) { return a *= s; }
    friend Element operator*(Element a, const Integer& s) { return a *= s; }
    friend bool operator==(const Element&, const Element&) = default;

    std::string str() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) {
                s += ",";
            }
            s += coords_[i].str();
        }
        return s + ")";
    }

private:
    void check_same_size(const Element& o) const
    {
        if (o.size() != size()) {
            throw DimensionMismatch("element sizes differ: " + std::to_string(size()) + " vs " +
                                    std::to_string(o.size()));
        }
    }

    std::vector<Integer> coords_;
};

/// Commutative unital Z-algebra of finite rank, multiplication given by the
/// coordinates of every basis product. Construction checks shape,
/// commutativity and the unity law; associativity is checked on demand since
/// it costs O(n^5).
class AlgebraSpec {
public:
    AlgebraSpec(std::vector<std::vector<Element>> table, Element unity, std::vector<std::string> labels = {})
        : table_(std::move(table)), unity_(std::move(unity)), labels_(std::move(labels))
    {
        const std::size_t n = table_.size();
        if (n == 0) {
            throw InvalidAlgebra("rank must be positive");
        }
        for (const auto& row : table_) {
            if (row.size() != n) {
                throw InvalidAlgebra("structure constant table is not square");
            }
            for (const auto& e : row) {
                if (e.size() != n) {
                    throw InvalidAlgebra("structure constant has wrong length");
                }
            }
        }
        if (unity_.size() != n) {
            throw InvalidAlgebra("unity has wrong length");
        }
        if (labels_.empty()) {
            for (std::size_t i = 0; i < n; ++i) {
                labels_.push_back("e" + std::to_string(i));
            }
        }
        if (labels_.size() != n) {
            throw InvalidAlgebra("label count differs from rank");
        }
        sparse_.resize(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (table_[i][j] != table_[j][i]) {
                    throw InvalidAlgebra("not commutative at basis pair (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
                }
                for (std::size_t k = 0; k < n; ++k) {
                    if (table_[i][j][k] != 0) {
                        sparse_[i * n + j].emplace_back(k, table_[i][j][k]);
                    }
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (mul(unity_, basis(i)) != basis(i)) {
                throw InvalidAlgebra("unity law fails on basis element " + std::to_string(i));
            }
        }
    }

    std::size_t rank() const noexcept { return table_.size(); }
    const Element& product(std::size_t i, std::size_t j) const { return table_.at(i).at(j); }
    const Element& unity() const noexcept { return unity_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    Element basis(std::size_t i) const { return Element::unit(rank(), i); }
    Element zero() const { return Element::zero(rank()); }

    void check_element(const Element& x) const
    {
        if (x.size() != rank()) {
            throw DimensionMismatch("element of length " + std::to_string(x.size()) +
                                    " does not conform to rank " + std::to_string(rank()));
        }
    }

    Element mul(const Element& a, const Element& b) const
    {
        check_element(a);
        check_element(b);
        const std::size_t n = rank();
        std::vector<Integer> out(n);
        Integer ab;
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (b[j] == 0) {
                    continue;
                }
                ab = a[i] * b[j];
                for (const auto& [k, c] : sparse_[i * n + j]) {
                    out[k] += ab * c;
                }
            }
        }
        return Element(std::move(out));
    }

    Element power(const Element& a, std::size_t k) const
    {
        Element result = unity_;
        for (std::size_t i = 0; i < k; ++i) {
            result = mul(result, a);
        }
        return result;
    }

    /// First basis triple violating (ab)c == a(bc), if any.
    std::optional<std::array<std::size_t, 3>> first_associativity_failure() const
    {
        const std::size_t n = rank();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    if (mul(product(i, j), basis(k)) != mul(basis(i), product(j, k))) {
                        return std::array<std::size_t, 3>{i, j, k};
                    }
                }
            }
        }
        return std::nullopt;
    }

    /// Human-readable form, e.g. "2 - zeta + 3*zeta^2".
    std::string describe(const Element& x) const
    {
        check_element(x);
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < rank(); ++i) {
            const Integer& c = x[i];
            if (c == 0) {
                continue;
            }
            Integer mag = abs(c);
            if (first) {
                if (c < 0) {
                    os << "-";
                }
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            const bool is_one_label = labels_[i] == "1";
            if (is_one_label) {
                os << mag;
            } else if (mag == 1) {
                os << labels_[i];
            } else {
                os << mag << "*" << labels_[i];
            }
        }
        if (first) {
            os << "0";
        }
        return os.str();
    }

    friend bool operator==(const AlgebraSpec& a, const AlgebraSpec& b)
    {
        return a.table_ == b.table_ && a.unity_ == b.unity_;
    }

private:
    std::vector<std::vector<Element>> table_;
    Element unity_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::pair<std::size_t, Integer>>> sparse_;
};

inline Element mul(const AlgebraSpec& spec, const Element& a, const Element& b) { return spec.mul(a, b); }

/// Z-linear map stored as the images of the basis elements.
class LinearMap {
public:
    LinearMap() = default;
    explicit LinearMap(std::vector<Element> images) : images_(std::move(images)) {}

    static LinearMap zero(std::size_t n) { return LinearMap(std::vector<Element>(n, Element::zero(n))); }

    static LinearMap identity(std::size_t n)
    {
        std::vector<Element> im;
        for (std::size_t i = 0; i < n; ++i) {
            im.push_back(Element::unit(n, i));
        }
        return LinearMap(std::move(im));
    }

    std::size_t size() const noexcept { return images_.size(); }
    const std::vector<Element>& images() const noexcept { return images_; }
    const Element& image(std::size_t i) const { return images_.at(i); }

    bool is_zero() const
    {
        for (const auto& e : images_) {
            if (!e.is_zero()) {
                return false;
            }
        }
        return true;
    }

    friend LinearMap operator+(const LinearMap& a, const LinearMap& b)
    {
        if (a.size() != b.size()) {
            throw DimensionMismatch("linear maps of different size");
        }
        std::vector<Element> im;
        for (std::size_t i = 0; i < a.size(); ++i) {
            im.push_back(a.images_[i] + b.images_[i]);
        }
        return LinearMap(std::move(im));
    }

    friend LinearMap operator*(const Integer& s, const LinearMap& a)
    {
        std::vector<Element> im;
        for (const auto& e : a.images_) {
            im.push_back(s * e);
        }
        return LinearMap(std::move(im));
    }

    friend bool operator==(const LinearMap&, const LinearMap&) = default;

private:
    std::vector<Element> images_;
};

inline void check_map(const AlgebraSpec& spec, const LinearMap& m)
{
    if (m.size() != spec.rank()) {
        throw DimensionMismatch("map has " + std::to_string(m.size()) + " images, rank is " +
                                std::to_string(spec.rank()));
    }
    for (const auto& e : m.images()) {
        spec.check_element(e);
    }
}

inline Element apply_map(const AlgebraSpec& spec, const LinearMap& m, const Element& x)
{
    check_map(spec, m);
    spec.check_element(x);
    Element out = spec.zero();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0) {
            out += x[i] * m.image(i);
        }
    }
    return out;
}

/// Where a basis-pair law fails: lhs is the value at alpha_i alpha_j, rhs the
/// value the law demands.
struct PairFailure {
    std::size_t i = 0;
    std::size_t j = 0;
    Element lhs;
    Element rhs;

    std::string str() const
    {
        return "basis pair (" + std::to_string(i) + "," + std::to_string(j) + "): " + lhs.str() +
               " != " + rhs.str();
    }
};

/// std::nullopt when m is unital and multiplicative on every basis pair,
/// otherwise the first failing pair in row-major order (unity failure is
/// reported as pair (rank, rank)).
inline std::optional<PairFailure> endomorphism_defect(const AlgebraSpec& spec, const LinearMap& m)
{
    check_map(spec, m);
    const std::size_t n = spec.rank();
    Element one = apply_map(spec, m, spec.unity());
    if (one != spec.unity()) {
        return PairFailure{n, n, one, spec.unity()};
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Element lhs = apply_map(spec, m, spec.product(i, j));
            Element rhs = spec.mul(m.image(i), m.image(j));
            if (lhs != rhs) {
                return PairFailure{i, j, std::move(lhs), std::move(rhs)};
            }
        }
    }
    return std::nullopt;
}

inline bool is_endomorphism(const AlgebraSpec& spec, const LinearMap& m)
{
    return !endomorphism_defect(spec, m).has_value();
}

/// Unital ring endomorphism, validated when made.
class Endomorphism {
public:
    static Endomorphism make(const AlgebraSpec& spec, LinearMap m)
    {
        if (auto bad = endomorphism_defect(spec, m)) {
            throw InvalidEndomorphism("not a unital endomorphism: " + bad->str());
        }
        return Endomorphism(std::move(m));
    }

    static Endomorphism identity(const AlgebraSpec& spec) { return Endomorphism(LinearMap::identity(spec.rank())); }

    const LinearMap& map() const noexcept { return map_; }
    const Element& image(std::size_t i) const { return map_.image(i); }
    std::size_t size() const noexcept { return map_.size(); }

    friend bool operator==(const Endomorphism&, const Endomorphism&) = default;

private:
    explicit Endomorphism(LinearMap m) : map_(std::move(m)) {}
    LinearMap map_;
};

inline Element apply_map(const AlgebraSpec& spec, const Endomorphism& e, const Element& x)
{
    return apply_map(spec, e.map(), x);
}

inline void check_endomorphism_pair(const AlgebraSpec& spec, const Endomorphism& sigma, const Endomorphism& tau)
{
    check_map(spec, sigma.map());
    check_map(spec, tau.map());
    if (sigma == tau) {
        throw InvalidEndomorphism("sigma and tau must be different endomorphisms");
    }
}

/// First basis pair where D(a_i a_j) != D(a_i) tau(a_j) + sigma(a_i) D(a_j).
/// Checking every basis pair decides the full derivation law.
inline std::optional<PairFailure> derivation_defect(const AlgebraSpec& spec, const LinearMap& d,
                                                    const Endomorphism& sigma, const Endomorphism& tau)
{
    check_map(spec, d);
    check_endomorphism_pair(spec, sigma, tau);
    const std::size_t n = spec.rank();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Element lhs = apply_map(spec, d, spec.product(i, j));
            Element rhs = spec.mul(d.image(i), tau.image(j)) + spec.mul(sigma.image(i), d.image(j));
            if (lhs != rhs) {
                return PairFailure{i, j, std::move(lhs), std::move(rhs)};
            }
        }
    }
    return std::nullopt;
}

inline bool is_derivation(const AlgebraSpec& spec, const LinearMap& d, const Endomorphism& sigma,
                          const Endomorphism& tau)
{
    return !derivation_defect(spec, d, sigma, tau).has_value();
}

/// Sum of sigma(alpha^i) tau(alpha^j) over all i + j = k - 1 (k terms).
inline Element sigma_tau_power_sum(const AlgebraSpec& spec, const Endomorphism& sigma, const Endomorphism& tau,
                                   const Element& alpha, std::size_t k)
{
    if (k == 0) {
        throw std::invalid_argument("power sum index k must be at least 1");
    }
    spec.check_element(alpha);
    const Element s = apply_map(spec, sigma, alpha);
    const Element t = apply_map(spec, tau, alpha);
    std::vector<Element> s_pow{spec.unity()};
    std::vector<Element> t_pow{spec.unity()};
    for (std::size_t e = 1; e < k; ++e) {
        s_pow.push_back(spec.mul(s_pow.back(), s));
        t_pow.push_back(spec.mul(t_pow.back(), t));
    }
    Element sum = spec.zero();
    for (std::size_t i = 0; i < k; ++i) {
        sum += spec.mul(s_pow[i], t_pow[k - 1 - i]);
    }
    return sum;
}

/// x -> beta (tau(x) - sigma(x)).
inline LinearMap inner_map(const AlgebraSpec& spec, const Endomorphism& sigma, const Endomorphism& tau,
                           const Element& beta)
{
    spec.check_element(beta);
    std::vector<Element> im;
    for (std::size_t i = 0; i < spec.rank(); ++i) {
        im.push_back(spec.mul(beta, tau.image(i) - sigma.image(i)));
    }
    return LinearMap(std::move(im));
}

/// True when the unity is basis element 0 and basis element i equals
/// alpha^i for alpha = basis element 1.
inline bool has_power_basis(const AlgebraSpec& spec)
{
    if (spec.unity() != spec.basis(0)) {
        return false;
    }
    if (spec.rank() == 1) {
        return true;
    }
    Element p = spec.basis(1);
    for (std::size_t i = 2; i < spec.rank(); ++i) {
        p = spec.mul(p, spec.basis(1));
        if (p != spec.basis(i)) {
            return false;
        }
    }
    return true;
}

/// On a power basis {1, a, ..., a^(n-1)}: the map sending a^i to g^i.
inline LinearMap power_basis_map(const AlgebraSpec& spec, const Element& generator_image)
{
    if (!has_power_basis(spec)) {
        throw InvalidAlgebra("algebra basis is not a power basis");
    }
    spec.check_element(generator_image);
    std::vector<Element> im{spec.unity()};
    for (std::size_t i = 1; i < spec.rank(); ++i) {
        im.push_back(spec.mul(im.back(), generator_image));
    }
    return LinearMap(std::move(im));
}

/// On a power basis: D(1) = 0 and D(a^k) = (sum_{i+j=k-1} sigma(a^i) tau(a^j)) D(a)
/// for k = 1..n-1. Whether the result is a derivation depends on the algebra.
inline LinearMap power_rule_map(const AlgebraSpec& spec, const Endomorphism& sigma, const Endomorphism& tau,
                                const Element& d_generator)
{
    if (!has_power_basis(spec)) {
        throw InvalidAlgebra("algebra basis is not a power basis");
    }
    spec.check_element(d_generator);
    const std::size_t n = spec.rank();
    std::vector<Element> im{spec.zero()};
    if (n == 1) {
        return LinearMap(std::move(im));
    }
    const Element a = spec.basis(1);
    const Element s = apply_map(spec, sigma, a);
    const Element t = apply_map(spec, tau, a);
    // Running sum: P_k = P_{k-1} * tau(a) + sigma(a)^(k-1), P_1 = 1.
    Element sum = spec.unity();
    Element s_pow = spec.unity();
    for (std::size_t k = 1; k < n; ++k) {
        if (k > 1) {
            s_pow = spec.mul(s_pow, s);
            sum = spec.mul(sum, t) + s_pow;
        }
        im.push_back(spec.mul(sum, d_generator));
    }
    return LinearMap(std::move(im));
}

/// Z[X]/(f) for monic f = X^n + c_{n-1} X^{n-1} + ... + c_0, power basis
/// {1, X, ..., X^(n-1)}. `low_coeffs` holds c_0..c_{n-1}.
inline AlgebraSpec polynomial_quotient(const std::vector<Integer>& low_coeffs, const std::string& symbol = "X")
{
    const std::size_t n = low_coeffs.size();
    if (n == 0) {
        throw InvalidAlgebra("modulus must have positive degree");
    }
    // powers[e] = coordinates of X^e for e = 0..2n-2
    std::vector<Element> powers;
    for (std::size_t e = 0; e < n; ++e) {
        powers.push_back(Element::unit(n, e));
    }
    for (std::size_t e = n; e + 1 < 2 * n; ++e) {
        // X^e = X * X^(e-1); shift and reduce X^n = -sum c_i X^i
        const Element& prev = powers[e - 1];
        Element next = Element::zero(n);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            next[i + 1] = prev[i];
        }
        const Integer top = prev[n - 1];
        for (std::size_t i = 0; i < n; ++i) {
            next[i] -= top * low_coeffs[i];
        }
        powers.push_back(std::move(next));
    }
    std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            table[i][j] = powers[i + j];
        }
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(i == 0 ? "1" : (i == 1 ? symbol : symbol + "^" + std::to_string(i)));
    }
    return AlgebraSpec(std::move(table), Element::unit(n, 0), std::move(labels));
}

} // namespace sigtau
