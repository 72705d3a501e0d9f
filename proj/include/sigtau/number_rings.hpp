#pragma once

// Structure-constant models of Z[zeta_p], quadratic rings and Z[sqrt m, sqrt n],
// with their unital ring endomorphisms.

#include "sigtau/algebra.hpp"
#include "sigtau/integer.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigtau {

class InvalidRing : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Coordinates of zeta^e in the basis {1, zeta, ..., zeta^(p-2)}.
inline Element cyclotomic_zeta_power(std::int64_t p, std::int64_t e)
{
    e = floor_mod(e, p);
    const auto n = static_cast<std::size_t>(p - 1);
    if (e < p - 1) {
        return Element::unit(n, static_cast<std::size_t>(e));
    }
    Element x = Element::zero(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = -1;
    }
    return x;
}

/// Z[zeta] for an odd prime p, basis {1, zeta, ..., zeta^(p-2)}.
class CyclotomicRing {
public:
    explicit CyclotomicRing(std::int64_t p) : p_(p), spec_(build(p)) {}

    std::int64_t p() const noexcept { return p_; }
    const AlgebraSpec& spec() const noexcept { return spec_; }
    std::size_t rank() const noexcept { return spec_.rank(); }
    std::string name() const { return "cyclotomic:" + std::to_string(p_); }

    /// Coordinates of zeta^k for any integer k.
    Element zeta_power(std::int64_t k) const { return cyclotomic_zeta_power(p_, k); }

    /// zeta -> zeta^u, u in 1..p-1.
    Endomorphism endomorphism(std::int64_t u) const
    {
        if (u < 1 || u >= p_) {
            throw InvalidEndomorphism("exponent " + std::to_string(u) + " outside 1.." + std::to_string(p_ - 1));
        }
        std::vector<Element> im;
        for (std::int64_t i = 0; i < p_ - 1; ++i) {
            im.push_back(zeta_power(u * i));
        }
        return Endomorphism::make(spec_, LinearMap(std::move(im)));
    }

    /// u with endo(zeta) = zeta^u.
    std::int64_t exponent_of(const Endomorphism& e) const
    {
        for (std::int64_t u = 1; u < p_; ++u) {
            if (e.image(1) == zeta_power(u)) {
                return u;
            }
        }
        throw InvalidEndomorphism("endomorphism does not send zeta to a power of zeta");
    }

    std::vector<Endomorphism> endomorphisms() const
    {
        std::vector<Endomorphism> out;
        for (std::int64_t u = 1; u < p_; ++u) {
            out.push_back(endomorphism(u));
        }
        return out;
    }

private:
    static AlgebraSpec build(std::int64_t p)
    {
        if (p < 3 || !is_prime(p)) {
            throw InvalidRing("p = " + std::to_string(p) + " is not an odd prime");
        }
        const auto n = static_cast<std::size_t>(p - 1);
        std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                table[i][j] = cyclotomic_zeta_power(p, static_cast<std::int64_t>(i + j));
            }
        }
        std::vector<std::string> labels{"1", "zeta"};
        for (std::size_t i = 2; i < n; ++i) {
            labels.push_back("zeta^" + std::to_string(i));
        }
        labels.resize(n);
        return AlgebraSpec(std::move(table), Element::unit(n, 0), std::move(labels));
    }

    std::int64_t p_;
    AlgebraSpec spec_;
};

/// Ring of integers of Q(sqrt d): basis {1, sqrt d} when d != 1 mod 4,
/// otherwise {1, theta} with theta = (1 + sqrt d)/2.
class QuadraticRing {
public:
    enum class Case { NotOneMod4, OneMod4 };

    explicit QuadraticRing(std::int64_t d) : d_(d), case_(classify(d)), spec_(build(d, case_)) {}

    std::int64_t d() const noexcept { return d_; }
    Case residue_case() const noexcept { return case_; }
    const AlgebraSpec& spec() const noexcept { return spec_; }
    std::size_t rank() const noexcept { return 2; }
    std::string name() const { return "quadratic:" + std::to_string(d_); }

    Endomorphism identity() const { return Endomorphism::identity(spec_); }

    /// sqrt d -> -sqrt d; in the theta basis theta -> 1 - theta.
    Endomorphism conjugation() const
    {
        Element g = case_ == Case::NotOneMod4 ? Element{0, -1} : Element{1, -1};
        return Endomorphism::make(spec_, LinearMap({Element{1, 0}, g}));
    }

    /// sqrt d in this basis (2 theta - 1 in the theta basis).
    Element sqrt_d() const { return case_ == Case::NotOneMod4 ? Element{0, 1} : Element{-1, 2}; }

    std::vector<Endomorphism> endomorphisms() const { return {identity(), conjugation()}; }

private:
    static Case classify(std::int64_t d)
    {
        if (d == 0 || d == 1 || !is_square_free(d)) {
            throw InvalidRing("d = " + std::to_string(d) + " must be square-free and not 0 or 1");
        }
        return floor_mod(d, std::int64_t{4}) == 1 ? Case::OneMod4 : Case::NotOneMod4;
    }

    static AlgebraSpec build(std::int64_t d, Case c)
    {
        Element gen_sq = c == Case::NotOneMod4 ? Element{d, 0} : Element{(d - 1) / 4, 1};
        std::vector<std::vector<Element>> table{{Element{1, 0}, Element{0, 1}}, {Element{0, 1}, gen_sq}};
        std::string label = c == Case::NotOneMod4 ? "sqrt(" + std::to_string(d) + ")" : "theta";
        return AlgebraSpec(std::move(table), Element{1, 0}, {"1", label});
    }

    std::int64_t d_;
    Case case_;
    AlgebraSpec spec_;
};

/// Z[sqrt m, sqrt n] with basis {1, sqrt m, sqrt n, sqrt mn}.
class BiquadraticRing {
public:
    struct GcdSplit {
        std::int64_t k;
        std::int64_t r;
        std::int64_t s;
    };

    BiquadraticRing(std::int64_t m, std::int64_t n) : m_(m), n_(n), spec_(build(m, n))
    {
        const std::int64_t k = std::gcd(m, n);
        split_ = {k, m / k, n / k};
    }

    std::int64_t m() const noexcept { return m_; }
    std::int64_t n() const noexcept { return n_; }
    const GcdSplit& gcd_split() const noexcept { return split_; }
    const AlgebraSpec& spec() const noexcept { return spec_; }
    std::size_t rank() const noexcept { return 4; }
    std::string name() const { return "biquadratic:" + std::to_string(m_) + "," + std::to_string(n_); }

    /// The four sign maps: phi1 = id, phi2 flips sqrt n,
    /// phi3 flips sqrt m, phi4 flips both.
    Endomorphism phi(int i) const
    {
        if (i < 1 || i > 4) {
            throw InvalidEndomorphism("phi index must be in 1..4");
        }
        const long long sm = (i == 3 || i == 4) ? -1 : 1;
        const long long sn = (i == 2 || i == 4) ? -1 : 1;
        return Endomorphism::make(spec_, LinearMap({Element{1, 0, 0, 0}, Element{0, sm, 0, 0},
                                                    Element{0, 0, sn, 0}, Element{0, 0, 0, sm * sn}}));
    }

    /// 1..4 for one of the sign maps phi1..phi4.
    int phi_index(const Endomorphism& e) const
    {
        for (int i = 1; i <= 4; ++i) {
            if (phi(i) == e) {
                return i;
            }
        }
        throw InvalidEndomorphism("not one of phi1..phi4");
    }

    std::vector<Endomorphism> endomorphisms() const { return {phi(1), phi(2), phi(3), phi(4)}; }

private:
    static AlgebraSpec build(std::int64_t m, std::int64_t n)
    {
        for (std::int64_t v : {m, n}) {
            if (v == 0 || v == 1 || !is_square_free(v)) {
                throw InvalidRing(std::to_string(v) + " must be square-free and not 0 or 1");
            }
        }
        if (m == n) {
            throw InvalidRing("m and n must differ");
        }
        const long long mn = m * n;
        const Element one{1, 0, 0, 0};
        const Element a{0, 1, 0, 0};
        const Element b{0, 0, 1, 0};
        const Element ab{0, 0, 0, 1};
        std::vector<std::vector<Element>> table{
            {one, a, b, ab},
            {a, Element{m, 0, 0, 0}, ab, Element{0, 0, m, 0}},
            {b, ab, Element{n, 0, 0, 0}, Element{0, n, 0, 0}},
            {ab, Element{0, 0, m, 0}, Element{0, n, 0, 0}, Element{mn, 0, 0, 0}},
        };
        const std::string sm = "sqrt(" + std::to_string(m) + ")";
        const std::string sn = "sqrt(" + std::to_string(n) + ")";
        const std::string smn = "sqrt(" + std::to_string(m) + "*" + std::to_string(n) + ")";
        return AlgebraSpec(std::move(table), one, {"1", sm, sn, smn});
    }

    std::int64_t m_;
    std::int64_t n_;
    AlgebraSpec spec_;
    GcdSplit split_{};
};

inline std::vector<Endomorphism> endomorphisms(const CyclotomicRing& r) { return r.endomorphisms(); }
inline std::vector<Endomorphism> endomorphisms(const QuadraticRing& r) { return r.endomorphisms(); }
inline std::vector<Endomorphism> endomorphisms(const BiquadraticRing& r) { return r.endomorphisms(); }

inline CyclotomicRing make_cyclotomic(std::int64_t p) { return CyclotomicRing(p); }
inline QuadraticRing make_quadratic(std::int64_t d) { return QuadraticRing(d); }
inline BiquadraticRing make_biquadratic(std::int64_t m, std::int64_t n) { return BiquadraticRing(m, n); }

} // namespace sigtau
