#pragma once

// (sigma, tau)-derivations of the number rings: builders, module bases and
// innerness deciders (closed forms plus an exact generic solver).

#include "sigtau/algebra.hpp"
#include "sigtau/conjecture.hpp"
#include "sigtau/int_matrix.hpp"
#include "sigtau/integer.hpp"
#include "sigtau/number_rings.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sigtau {

class NotADerivation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when det(A) is not +-p, so the adjugate criterion has no footing.
class ConjectureViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require_derivation(const AlgebraSpec& spec, const LinearMap& d, const Endomorphism& sigma,
                               const Endomorphism& tau)
{
    if (auto bad = derivation_defect(spec, d, sigma, tau)) {
        throw NotADerivation("map is not a (sigma,tau)-derivation: " + bad->str());
    }
}

struct InnernessVerdict {
    bool inner = false;
    std::optional<Element> witness;
    std::optional<std::string> obstruction;

    static InnernessVerdict yes(Element beta) { return {true, std::move(beta), std::nullopt}; }
    static InnernessVerdict no(std::string why) { return {false, std::nullopt, std::move(why)}; }
};

/// Z-span of (sigma, tau)-derivations given by explicit basis maps.
struct DerivationSpace {
    AlgebraSpec spec;
    Endomorphism sigma;
    Endomorphism tau;
    std::vector<LinearMap> basis_maps;

    /// Rational rank of the maps, each flattened to its n*n image coordinates.
    std::size_t rank() const
    {
        if (basis_maps.empty()) {
            return 0;
        }
        const std::size_t n = spec.rank();
        IntMatrix m(basis_maps.size(), n * n);
        for (std::size_t r = 0; r < basis_maps.size(); ++r) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    m(r, i * n + j) = basis_maps[r].image(i)[j];
                }
            }
        }
        return rational_rank(std::move(m));
    }
};

// ---------------------------------------------------------------- cyclotomic

/// D(zeta^k) = (sum_{i+j=k-1} sigma(zeta^i) tau(zeta^j)) D(zeta), D(1) = 0.
inline LinearMap build_cyclotomic_derivation(const CyclotomicRing& ring, const Endomorphism& sigma,
                                             const Endomorphism& tau, const Element& d_zeta)
{
    check_endomorphism_pair(ring.spec(), sigma, tau);
    return power_rule_map(ring.spec(), sigma, tau, d_zeta);
}

/// D_i(zeta) = zeta^i for i = 0..p-2.
inline DerivationSpace cyclotomic_basis(const CyclotomicRing& ring, const Endomorphism& sigma,
                                        const Endomorphism& tau)
{
    std::vector<LinearMap> maps;
    for (std::size_t i = 0; i < ring.rank(); ++i) {
        maps.push_back(build_cyclotomic_derivation(ring, sigma, tau, ring.spec().basis(i)));
    }
    return {ring.spec(), sigma, tau, std::move(maps)};
}

// ----------------------------------------------------------------- generic

/// Decides D = beta (tau - sigma) over the integers. The unknown beta must
/// satisfy beta * (tau - sigma)(a_i) = D(a_i) for every basis element; the
/// multiplication matrices of the (tau - sigma)(a_i) are stacked into one
/// system which is factored once and reused for every D.
class GenericInnernessSolver {
public:
    GenericInnernessSolver(const AlgebraSpec& spec, const Endomorphism& sigma, const Endomorphism& tau)
        : spec_(spec), sigma_(sigma), tau_(tau), solver_(stacked(spec, sigma, tau))
    {
        check_endomorphism_pair(spec, sigma, tau);
    }

    InnernessVerdict decide(const LinearMap& d) const
    {
        require_derivation(spec_, d, sigma_, tau_);
        return decide_unchecked(d);
    }

    /// As decide, for callers that already know d is a derivation.
    InnernessVerdict decide_unchecked(const LinearMap& d) const
    {
        const std::size_t n = spec_.rank();
        std::vector<Integer> rhs;
        rhs.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                rhs.push_back(d.image(i)[k]);
            }
        }
        auto x = solver_.solve(rhs);
        if (!x) {
            return InnernessVerdict::no("no integral beta solves beta*(tau - sigma)(a_i) = D(a_i) for all i");
        }
        return InnernessVerdict::yes(Element(std::move(*x)));
    }

private:
    static IntMatrix stacked(const AlgebraSpec& spec, const Endomorphism& sigma, const Endomorphism& tau)
    {
        const std::size_t n = spec.rank();
        IntMatrix m(n * n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const Element g = tau.image(i) - sigma.image(i);
            for (std::size_t j = 0; j < n; ++j) {
                const Element col = spec.mul(spec.basis(j), g);
                for (std::size_t k = 0; k < n; ++k) {
                    m(i * n + k, j) = col[k];
                }
            }
        }
        return m;
    }

    AlgebraSpec spec_;
    Endomorphism sigma_;
    Endomorphism tau_;
    IntegerSolver solver_;
};

inline InnernessVerdict is_inner_generic(const AlgebraSpec& spec, const Endomorphism& sigma, const Endomorphism& tau,
                                         const LinearMap& d)
{
    return GenericInnernessSolver(spec, sigma, tau).decide(d);
}

template <class Ring>
InnernessVerdict is_inner_generic(const Ring& ring, const Endomorphism& sigma, const Endomorphism& tau,
                                  const LinearMap& d)
{
    return is_inner_generic(ring.spec(), sigma, tau, d);
}

/// Innerness through the adjugate of A = build_A(p, u, w): with
/// A b = coords(beta (sigma - tau)(zeta)), D is inner iff A X = -C has an
/// integral solution, i.e. det(A) divides every entry of Adj(A)(-C).
inline InnernessVerdict cyclotomic_inner_conjectural(const CyclotomicRing& ring, const Endomorphism& sigma,
                                                     const Endomorphism& tau, const LinearMap& d)
{
    require_derivation(ring.spec(), d, sigma, tau);
    const IntMatrix a = build_A(ring.p(), ring.exponent_of(sigma), ring.exponent_of(tau));
    const Integer det = det_bareiss(a);
    if (det != ring.p() && det != -ring.p()) {
        throw ConjectureViolation("det(A) = " + det.str() + " for p = " + std::to_string(ring.p()));
    }
    std::vector<Integer> minus_c;
    for (const auto& c : d.image(1).coords()) {
        minus_c.push_back(-c);
    }
    std::vector<Integer> x = adjugate(a) * minus_c;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!divides(det, x[i])) {
            return InnernessVerdict::no("entry " + std::to_string(i) + " of Adj(A)(-C) is " + x[i].str() +
                                        ", not divisible by p = " + std::to_string(ring.p()));
        }
        x[i] /= det;
    }
    return InnernessVerdict::yes(Element(std::move(x)));
}

// ---------------------------------------------------------------- quadratic

/// Any Z-linear map with D(1) = 0 is a derivation for both orderings of
/// (identity, conjugation). images = {D(1), D(generator)}.
inline LinearMap build_quadratic_derivation(const QuadraticRing& ring, const std::vector<Element>& images)
{
    if (images.size() != 2) {
        throw DimensionMismatch("quadratic derivation needs 2 images, got " + std::to_string(images.size()));
    }
    for (const auto& e : images) {
        ring.spec().check_element(e);
    }
    if (!images[0].is_zero()) {
        throw NotADerivation("D(1) must be 0");
    }
    return LinearMap(images);
}

inline LinearMap build_quadratic_derivation(const QuadraticRing& ring, const Element& d_generator)
{
    return build_quadratic_derivation(ring, {Element::zero(2), d_generator});
}

/// D_0(g) = 1, D_1(g) = g for the ring generator g.
inline DerivationSpace quadratic_basis(const QuadraticRing& ring, const Endomorphism& sigma, const Endomorphism& tau)
{
    check_endomorphism_pair(ring.spec(), sigma, tau);
    return {ring.spec(),
            sigma,
            tau,
            {build_quadratic_derivation(ring, Element{1, 0}), build_quadratic_derivation(ring, Element{0, 1})}};
}

/// Closed-form criterion. With (sigma, tau) = (conj, id) and D(g) = c0 + c1 g:
///   g = sqrt d: inner iff 2d | c0 and 2 | c1, beta = c1/2 + (c0/2d) sqrt d;
///   g = theta:  inner iff d | (-c0 + c1 (d-1)/2) and d | (2 c0 + c1),
///               beta = b0 + b1 theta with those quotients.
/// The opposite ordering negates beta.
inline InnernessVerdict quadratic_inner(const QuadraticRing& ring, const Endomorphism& sigma, const Endomorphism& tau,
                                        const LinearMap& d)
{
    require_derivation(ring.spec(), d, sigma, tau);
    const Integer sign = sigma == ring.conjugation() ? 1 : -1;
    const Integer& c0 = d.image(1)[0];
    const Integer& c1 = d.image(1)[1];
    const Integer dd = ring.d();
    Integer b0;
    Integer b1;
    if (ring.residue_case() == QuadraticRing::Case::NotOneMod4) {
        if (!divides(2 * dd, c0)) {
            return InnernessVerdict::no("2d does not divide c0 (c0 = " + c0.str() + ", 2d = " + Integer(2 * dd).str() +
                                        ")");
        }
        if (!divides(2, c1)) {
            return InnernessVerdict::no("c1 is odd (c1 = " + c1.str() + ")");
        }
        b0 = c1 / 2;
        b1 = c0 / (2 * dd);
    } else {
        const Integer e0 = -c0 + c1 * ((dd - 1) / 2);
        const Integer e1 = 2 * c0 + c1;
        if (!divides(dd, e0)) {
            return InnernessVerdict::no("d does not divide -c0 + c1(d-1)/2 (= " + e0.str() + ", d = " + dd.str() + ")");
        }
        if (!divides(dd, e1)) {
            return InnernessVerdict::no("d does not divide 2c0 + c1 (= " + e1.str() + ", d = " + dd.str() + ")");
        }
        b0 = e0 / dd;
        b1 = e1 / dd;
    }
    return InnernessVerdict::yes(Element(std::vector<Integer>{sign * b0, sign * b1}));
}

// -------------------------------------------------------------- biquadratic

struct BiquadraticCase {
    enum class Kind { I, II, III };
    Kind kind;
    int sign; // +1 or -1

    std::string str() const
    {
        const char* k = kind == Kind::I ? "I" : (kind == Kind::II ? "II" : "III");
        return std::string(k) + (sign > 0 ? "+" : "-");
    }

    friend bool operator==(const BiquadraticCase&, const BiquadraticCase&) = default;
};

/// I: sigma, tau agree on sqrt m (D(sqrt m) = 0, D(sqrt mn) = +-sqrt m D(sqrt n)).
/// II: they agree on sqrt n (D(sqrt n) = 0, D(sqrt mn) = +-sqrt n D(sqrt m)).
/// III: they agree on sqrt mn (D(sqrt mn) = 0, sqrt m D(sqrt n) = +-sqrt n D(sqrt m)).
/// The sign is the common image sign of the generator they agree on.
inline BiquadraticCase classify_biquadratic(const BiquadraticRing& ring, const Endomorphism& sigma,
                                            const Endomorphism& tau)
{
    check_endomorphism_pair(ring.spec(), sigma, tau);
    ring.phi_index(sigma);
    ring.phi_index(tau);
    for (std::size_t g = 1; g <= 3; ++g) {
        if (sigma.image(g) == tau.image(g)) {
            const auto kind = g == 1 ? BiquadraticCase::Kind::I
                                     : (g == 2 ? BiquadraticCase::Kind::II : BiquadraticCase::Kind::III);
            return {kind, sigma.image(g)[g] > 0 ? 1 : -1};
        }
    }
    throw InvalidEndomorphism("endomorphisms agree on no generator");
}

namespace detail {

inline Element times_sqrt(const BiquadraticRing& ring, const Element& x, std::size_t generator)
{
    return ring.spec().mul(x, ring.spec().basis(generator));
}

} // namespace detail

/// Completes a derivation from its free images:
///   case I: {D(sqrt n)}; case II: {D(sqrt m)}; case III: {D(sqrt m), D(sqrt n)},
/// the last pair required to satisfy sqrt m D(sqrt n) = +-sqrt n D(sqrt m).
inline LinearMap build_biquadratic_derivation(const BiquadraticRing& ring, const Endomorphism& sigma,
                                              const Endomorphism& tau, const std::vector<Element>& free_images)
{
    const BiquadraticCase c = classify_biquadratic(ring, sigma, tau);
    const AlgebraSpec& spec = ring.spec();
    for (const auto& e : free_images) {
        spec.check_element(e);
    }
    const std::size_t want = c.kind == BiquadraticCase::Kind::III ? 2 : 1;
    if (free_images.size() != want) {
        throw DimensionMismatch("case " + c.str() + " takes " + std::to_string(want) + " free image(s), got " +
                                std::to_string(free_images.size()));
    }
    const Element zero = spec.zero();
    const Integer s = c.sign;
    switch (c.kind) {
    case BiquadraticCase::Kind::I: {
        const Element& dn = free_images[0];
        return LinearMap({zero, zero, dn, s * detail::times_sqrt(ring, dn, 1)});
    }
    case BiquadraticCase::Kind::II: {
        const Element& dm = free_images[0];
        return LinearMap({zero, dm, zero, s * detail::times_sqrt(ring, dm, 2)});
    }
    case BiquadraticCase::Kind::III: {
        const Element& dm = free_images[0];
        const Element& dn = free_images[1];
        if (detail::times_sqrt(ring, dn, 1) != s * detail::times_sqrt(ring, dm, 2)) {
            throw NotADerivation(std::string("case III images violate sqrt m D(sqrt n) = ") + (c.sign > 0 ? "" : "-") +
                                 "sqrt n D(sqrt m)");
        }
        return LinearMap({zero, dm, dn, zero});
    }
    }
    throw std::logic_error("unreachable");
}

/// The four generators of the derivation module, per case.
///   I:   D_i(sqrt n) in {1, sqrt m, sqrt n, sqrt mn}
///   II:  D_i(sqrt m) in {1, sqrt m, sqrt n, sqrt mn}
///   III: (D(sqrt m), D(sqrt n)) in {(m, sqrt mn), (sqrt m, sqrt n), (r sqrt n, s sqrt m), (sqrt mn, n)}
///        with m = kr, n = ks, k = gcd(m, n); the D(sqrt n) images are negated for sign -.
inline DerivationSpace biquadratic_basis(const BiquadraticRing& ring, const Endomorphism& sigma,
                                         const Endomorphism& tau)
{
    const BiquadraticCase c = classify_biquadratic(ring, sigma, tau);
    const AlgebraSpec& spec = ring.spec();
    std::vector<LinearMap> maps;
    if (c.kind != BiquadraticCase::Kind::III) {
        for (std::size_t i = 0; i < 4; ++i) {
            maps.push_back(build_biquadratic_derivation(ring, sigma, tau, {spec.basis(i)}));
        }
    } else {
        const auto split = ring.gcd_split();
        const long long m = ring.m();
        const long long n = ring.n();
        const long long e = c.sign;
        const std::vector<std::pair<Element, Element>> pairs{
            {Element{m, 0, 0, 0}, Element{0, 0, 0, e}},
            {Element{0, 1, 0, 0}, Element{0, 0, e, 0}},
            {Element{0, 0, split.r, 0}, Element{0, e * split.s, 0, 0}},
            {Element{0, 0, 0, 1}, Element{e * n, 0, 0, 0}},
        };
        for (const auto& [dm, dn] : pairs) {
            maps.push_back(build_biquadratic_derivation(ring, sigma, tau, {dm, dn}));
        }
    }
    return {spec, sigma, tau, std::move(maps)};
}

/// sum_i coeffs[i] * basis map i.
inline LinearMap combine(const DerivationSpace& space, const std::vector<Integer>& coeffs)
{
    if (coeffs.size() != space.basis_maps.size()) {
        throw DimensionMismatch("expected " + std::to_string(space.basis_maps.size()) + " coefficients, got " +
                                std::to_string(coeffs.size()));
    }
    LinearMap out = LinearMap::zero(space.spec.rank());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] != 0) {
            out = out + coeffs[i] * space.basis_maps[i];
        }
    }
    return out;
}

/// beta = D(g) / (2 tau(g)) for the generator g that sigma and tau flip
/// (sqrt n in case I, sqrt m in cases II and III). Since tau(g) = +-g and
/// g^2 = v, this is +-D(g) g / (2v), decided coordinate by coordinate.
inline InnernessVerdict biquadratic_inner(const BiquadraticRing& ring, const Endomorphism& sigma,
                                          const Endomorphism& tau, const LinearMap& d)
{
    require_derivation(ring.spec(), d, sigma, tau);
    const BiquadraticCase c = classify_biquadratic(ring, sigma, tau);
    const std::size_t g = c.kind == BiquadraticCase::Kind::I ? 2 : 1;
    const Integer v = g == 2 ? ring.n() : ring.m();
    const Integer tau_sign = tau.image(g)[g];
    const Element num = detail::times_sqrt(ring, d.image(g), g);
    const char* gname = g == 2 ? "n" : "m";
    // num = D(g) g; its 1 and g coordinates carry a factor v from g^2.
    std::vector<Integer> beta(4);
    for (std::size_t i = 0; i < 4; ++i) {
        if (!divides(2 * v, num[i])) {
            return InnernessVerdict::no(std::string("D(sqrt ") + gname + ")/(2 sqrt " + gname +
                                        ") is not in the ring: coordinate " + std::to_string(i) + " of D(sqrt " +
                                        gname + ") sqrt " + gname + " is " + num[i].str() + ", not divisible by 2" +
                                        gname + " = " + Integer(2 * v).str());
        }
        beta[i] = tau_sign * (num[i] / (2 * v));
    }
    return InnernessVerdict::yes(Element(std::move(beta)));
}

} // namespace sigtau
