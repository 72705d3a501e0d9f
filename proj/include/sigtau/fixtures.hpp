#pragma once

// Worked inputs: the p = 5 pair (zeta, zeta^2) and the p = 17 code setup.

#include "sigtau/codes.hpp"
#include "sigtau/derivations.hpp"
#include "sigtau/number_rings.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sigtau::fixtures {

struct CyclotomicSetup {
    CyclotomicRing ring;
    std::int64_t u;
    std::int64_t w;
    Element d_zeta;

    Endomorphism sigma() const { return ring.endomorphism(u); }
    Endomorphism tau() const { return ring.endomorphism(w); }
    LinearMap derivation() const { return build_cyclotomic_derivation(ring, sigma(), tau(), d_zeta); }
};

/// p = 5, sigma(zeta) = zeta, tau(zeta) = zeta^2, D(zeta) = zeta.
inline CyclotomicSetup p5_example() { return {CyclotomicRing(5), 1, 2, Element{0, 1, 0, 0}}; }

/// p = 17, sigma(zeta) = zeta, tau(zeta) = zeta^3,
/// D(zeta) = 1 + zeta + zeta^2 + zeta^3 + zeta^5 + zeta^7 + zeta^8 + zeta^11.
inline CyclotomicSetup p17_code_example()
{
    CyclotomicRing ring(17);
    Element dz = Element::zero(16);
    for (std::size_t e : {0, 1, 2, 3, 5, 7, 8, 11}) {
        dz[e] = 1;
    }
    return {std::move(ring), 1, 3, std::move(dz)};
}

/// Labelled subsets of exponents j, each selecting the row D(zeta^j) of B.
inline std::vector<std::pair<std::string, std::vector<std::size_t>>> p17_subsets()
{
    return {
        {"S1", {1, 2, 4, 5, 6, 7, 10, 13}},
        {"S2", {1, 2, 4, 5, 6, 7, 9, 12}},
        {"S3", {1, 2, 5, 6, 7, 9, 12}},
        {"S4", {1, 2, 5, 6, 7, 9, 10, 12, 14}},
        {"S5", {1, 2, 6, 7, 9, 12, 14}},
        {"S6", {1, 2, 6, 7, 9, 12}},
        {"S7", {1, 2, 5, 6, 7}},
        {"S8", {1, 2, 6, 7}},
        {"S9", {1, 2, 6, 7, 15}},
        {"S10", {1, 2, 6, 7, 10, 13, 14, 15}},
        {"S11", {1, 2, 4, 5, 6, 10, 13, 14, 15}},
        {"S12", {1, 4, 5, 6, 10, 13, 14, 15}},
        {"S13", {1, 4, 5, 6, 10, 13}},
    };
}

} // namespace sigtau::fixtures
