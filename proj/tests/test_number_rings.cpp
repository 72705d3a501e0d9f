#include "cases.hpp"
#include "oracles.hpp"

#include "sigtau/number_rings.hpp"

#include <gtest/gtest.h>

using namespace sigtau;

TEST(Cyclotomic, RejectsNonPrimes)
{
    for (std::int64_t p : {-3, 0, 1, 2, 4, 9, 15}) {
        EXPECT_THROW(CyclotomicRing{p}, InvalidRing) << p;
    }
}

TEST(Cyclotomic, StructureConstantsMatchPolynomialOracle)
{
    for (std::int64_t p : cases::small_primes(13)) {
        const CyclotomicRing ring(p);
        const oracle::Cyclo cy{p};
        for (std::size_t i = 0; i < ring.rank(); ++i) {
            for (std::size_t j = 0; j < ring.rank(); ++j) {
                EXPECT_EQ(ring.spec().product(i, j).coords(),
                          cy.zeta_pow(static_cast<std::int64_t>(i + j)));
            }
        }
        EXPECT_FALSE(ring.spec().first_associativity_failure());
    }
}

TEST(Cyclotomic, ZetaPowersAndEndomorphisms)
{
    const CyclotomicRing ring(7);
    EXPECT_EQ(ring.zeta_power(6), (Element{-1, -1, -1, -1, -1, -1}));
    EXPECT_EQ(ring.zeta_power(7), ring.spec().unity());
    EXPECT_EQ(ring.zeta_power(-1), ring.zeta_power(6));
    const auto ends = ring.endomorphisms();
    ASSERT_EQ(ends.size(), 6U);
    const oracle::Cyclo cy{7};
    for (std::int64_t u = 1; u < 7; ++u) {
        const Endomorphism e = ring.endomorphism(u);
        EXPECT_EQ(ring.exponent_of(e), u);
        EXPECT_TRUE(is_endomorphism(ring.spec(), e.map()));
        for (std::size_t i = 0; i < ring.rank(); ++i) {
            EXPECT_EQ(e.image(i).coords(), cy.apply(u, ring.spec().basis(i).coords()));
        }
    }
    EXPECT_THROW(ring.endomorphism(0), InvalidEndomorphism);
    EXPECT_THROW(ring.endomorphism(7), InvalidEndomorphism);
}

TEST(Quadratic, Cases)
{
    EXPECT_EQ(QuadraticRing(-1).residue_case(), QuadraticRing::Case::NotOneMod4);
    EXPECT_EQ(QuadraticRing(5).residue_case(), QuadraticRing::Case::OneMod4);
    EXPECT_EQ(QuadraticRing(-3).residue_case(), QuadraticRing::Case::OneMod4);
    EXPECT_THROW(QuadraticRing(1), InvalidRing);
    EXPECT_THROW(QuadraticRing(0), InvalidRing);
    EXPECT_THROW(QuadraticRing(8), InvalidRing);
}

TEST(Quadratic, GeneratorSatisfiesMinimalPolynomial)
{
    for (std::int64_t d : cases::quadratic_params(50)) {
        const QuadraticRing ring(d);
        const auto& s = ring.spec();
        const Element g = s.basis(1);
        // sqrt d squared is d in either basis.
        EXPECT_EQ(s.mul(ring.sqrt_d(), ring.sqrt_d()), Integer(d) * s.unity()) << d;
        if (ring.residue_case() == QuadraticRing::Case::OneMod4) {
            // theta^2 = theta + (d - 1)/4.
            EXPECT_EQ(s.mul(g, g), g + Integer((d - 1) / 4) * s.unity()) << d;
        }
        const Endomorphism c = ring.conjugation();
        EXPECT_TRUE(is_endomorphism(s, c.map()));
        EXPECT_EQ(apply_map(s, c, ring.sqrt_d()), -ring.sqrt_d());
        EXPECT_EQ(ring.endomorphisms().size(), 2U);
    }
}

TEST(Biquadratic, ValidationAndProducts)
{
    EXPECT_THROW(BiquadraticRing(2, 2), InvalidRing);
    EXPECT_THROW(BiquadraticRing(1, 3), InvalidRing);
    EXPECT_THROW(BiquadraticRing(4, 3), InvalidRing);
    const BiquadraticRing ring(6, 10);
    EXPECT_EQ(ring.gcd_split().k, 2);
    EXPECT_EQ(ring.gcd_split().r, 3);
    EXPECT_EQ(ring.gcd_split().s, 5);
    const auto& s = ring.spec();
    EXPECT_EQ(s.mul(s.basis(3), s.basis(3)), Integer(60) * s.unity());
    EXPECT_EQ(s.mul(s.basis(1), s.basis(3)), Integer(6) * s.basis(2));
    EXPECT_EQ(s.mul(s.basis(2), s.basis(3)), Integer(10) * s.basis(1));
}

TEST(Biquadratic, FourEndomorphismsFlipSigns)
{
    for (const auto& [m, n] : cases::biquadratic_params()) {
        const BiquadraticRing ring(m, n);
        EXPECT_FALSE(ring.spec().first_associativity_failure());
        const int signs[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
        for (int i = 1; i <= 4; ++i) {
            const Endomorphism e = ring.phi(i);
            EXPECT_TRUE(is_endomorphism(ring.spec(), e.map()));
            EXPECT_EQ(e.image(1), Integer(signs[i - 1][0]) * ring.spec().basis(1));
            EXPECT_EQ(e.image(2), Integer(signs[i - 1][1]) * ring.spec().basis(2));
            EXPECT_EQ(e.image(3), Integer(signs[i - 1][0] * signs[i - 1][1]) * ring.spec().basis(3));
            EXPECT_EQ(ring.phi_index(e), i);
        }
        EXPECT_THROW(ring.phi(5), InvalidEndomorphism);
    }
}
