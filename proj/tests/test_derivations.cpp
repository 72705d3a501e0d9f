#include "cases.hpp"
#include "oracles.hpp"

#include "sigtau/derivations.hpp"
#include "sigtau/fixtures.hpp"

#include <gtest/gtest.h>

using namespace sigtau;

// ---------------------------------------------------------------- cyclotomic

TEST(Cyclotomic, BuiltMapIsDerivationWithGivenGeneratorImage)
{
    const auto ex = fixtures::p5_example();
    const LinearMap d = ex.derivation();
    EXPECT_TRUE(d.image(0).is_zero());
    EXPECT_EQ(d.image(1), ex.d_zeta);
    // D(zeta^2) = (sigma(zeta) + tau(zeta)) D(zeta) = zeta^2 + zeta^3.
    EXPECT_EQ(d.image(2), (Element{0, 0, 1, 1}));
    EXPECT_TRUE(is_derivation(ex.ring.spec(), d, ex.sigma(), ex.tau()));
}

TEST(Cyclotomic, LinearMapWithOnlyZetaImageIsNotDerivation)
{
    // D(sum a_i zeta^i) = a_1 zeta fails for every pair once p >= 5.
    for (std::int64_t p : {5, 7}) {
        const CyclotomicRing ring(p);
        std::vector<Element> im(ring.rank(), ring.spec().zero());
        im[1] = ring.zeta_power(1);
        const LinearMap d(im);
        for (const auto& [s, t] : cases::ordered_pairs(ring)) {
            EXPECT_FALSE(is_derivation(ring.spec(), d, s, t));
        }
    }
}

TEST(Cyclotomic, RejectsEqualEndomorphisms)
{
    const CyclotomicRing ring(5);
    EXPECT_THROW(build_cyclotomic_derivation(ring, ring.endomorphism(2), ring.endomorphism(2), ring.zeta_power(1)),
                 InvalidEndomorphism);
}

TEST(Cyclotomic, BasisIsGeneratorImagesOfPowerBasis)
{
    const CyclotomicRing ring(7);
    const auto s = ring.endomorphism(2);
    const auto t = ring.endomorphism(5);
    const DerivationSpace sp = cyclotomic_basis(ring, s, t);
    ASSERT_EQ(sp.basis_maps.size(), 6U);
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_EQ(sp.basis_maps[i].image(1), ring.spec().basis(i));
        EXPECT_TRUE(is_derivation(ring.spec(), sp.basis_maps[i], s, t));
    }
    EXPECT_EQ(sp.rank(), 6U);
}

TEST(Cyclotomic, ConjecturalDecider)
{
    const auto ex = fixtures::p5_example();
    const auto v = cyclotomic_inner_conjectural(ex.ring, ex.sigma(), ex.tau(), ex.derivation());
    EXPECT_FALSE(v.inner);
    ASSERT_TRUE(v.obstruction);
    EXPECT_NE(v.obstruction->find("not divisible by p = 5"), std::string::npos);

    // beta = 1 gives witness (1, 0, ..., 0).
    const auto one = inner_map(ex.ring.spec(), ex.sigma(), ex.tau(), ex.ring.spec().unity());
    const auto w = cyclotomic_inner_conjectural(ex.ring, ex.sigma(), ex.tau(), one);
    ASSERT_TRUE(w.inner);
    EXPECT_EQ(*w.witness, ex.ring.spec().unity());

    // Random beta at p = 7 is recovered exactly.
    std::mt19937_64 rng(oracle::seed);
    const CyclotomicRing ring(7);
    for (const auto& [s, t] : cases::ordered_pairs(ring)) {
        const Element beta = cases::random_element(rng, 6);
        const auto got = cyclotomic_inner_conjectural(ring, s, t, inner_map(ring.spec(), s, t, beta));
        ASSERT_TRUE(got.inner);
        EXPECT_EQ(*got.witness, beta);
    }
}

TEST(Cyclotomic, DecidersRequireDerivation)
{
    const CyclotomicRing ring(5);
    const LinearMap bad({ring.spec().zero(), ring.zeta_power(1), ring.spec().zero(), ring.spec().zero()});
    EXPECT_THROW(is_inner_generic(ring, ring.endomorphism(1), ring.endomorphism(2), bad), NotADerivation);
    EXPECT_THROW(cyclotomic_inner_conjectural(ring, ring.endomorphism(1), ring.endomorphism(2), bad), NotADerivation);
}

// ----------------------------------------------------------------- generic

TEST(Generic, WitnessReproducesInnerMaps)
{
    std::mt19937_64 rng(oracle::seed + 1);
    for (std::int64_t d : {-5, -1, 2, 3, 5, 13}) {
        const QuadraticRing ring(d);
        for (const auto& [s, t] : cases::ordered_pairs(ring)) {
            const Element beta = cases::random_element(rng, 2);
            const LinearMap m = inner_map(ring.spec(), s, t, beta);
            const auto v = is_inner_generic(ring, s, t, m);
            ASSERT_TRUE(v.inner);
            EXPECT_EQ(inner_map(ring.spec(), s, t, *v.witness), m);
        }
    }
}

TEST(Generic, ZeroDerivationIsInner)
{
    const BiquadraticRing ring(2, 3);
    const auto v = is_inner_generic(ring, ring.phi(1), ring.phi(2), LinearMap::zero(4));
    ASSERT_TRUE(v.inner);
    EXPECT_TRUE(inner_map(ring.spec(), ring.phi(1), ring.phi(2), *v.witness).is_zero());
}

// --------------------------------------------------------------- quadratic

TEST(Quadratic, AnyMapKillingOneIsDerivation)
{
    std::mt19937_64 rng(oracle::seed + 2);
    const QuadraticRing ring(2);
    for (int i = 0; i < 20; ++i) {
        const LinearMap d = build_quadratic_derivation(ring, cases::random_element(rng, 2));
        EXPECT_TRUE(is_derivation(ring.spec(), d, ring.conjugation(), ring.identity()));
        EXPECT_TRUE(is_derivation(ring.spec(), d, ring.identity(), ring.conjugation()));
    }
    EXPECT_THROW(build_quadratic_derivation(ring, std::vector<Element>{Element{1, 0}, Element{0, 1}}),
                 NotADerivation);
}

TEST(Quadratic, ClosedFormExamples)
{
    const QuadraticRing ring(2);
    const auto s = ring.identity();
    const auto t = ring.conjugation();
    // D(sqrt 2) = 4 + 2 sqrt 2 is inner; the witness reproduces D.
    const LinearMap d = build_quadratic_derivation(ring, Element{4, 2});
    const auto v = quadratic_inner(ring, s, t, d);
    ASSERT_TRUE(v.inner);
    EXPECT_EQ(inner_map(ring.spec(), s, t, *v.witness), d);
    EXPECT_EQ(v.inner, is_inner_generic(ring, s, t, d).inner);
    // For sigma = conjugation the witness is 1 + sqrt 2.
    const auto v2 = quadratic_inner(ring, t, s, d);
    ASSERT_TRUE(v2.inner);
    EXPECT_EQ(*v2.witness, (Element{1, 1}));
    // D(sqrt 2) = 1 fails on 2d.
    const auto no = quadratic_inner(ring, s, t, build_quadratic_derivation(ring, Element{1, 0}));
    EXPECT_FALSE(no.inner);
    EXPECT_NE(no.obstruction->find("2d"), std::string::npos);
    // D = 0 gives beta = 0.
    const auto zero = quadratic_inner(ring, s, t, LinearMap::zero(2));
    ASSERT_TRUE(zero.inner);
    EXPECT_TRUE(zero.witness->is_zero());
}

TEST(Quadratic, OneModFourRing)
{
    // d = 5: (tau - sigma)(theta) = +-(1 - 2 theta), a unit times sqrt 5.
    const QuadraticRing ring(5);
    const auto s = ring.identity();
    const auto t = ring.conjugation();
    for (int c0 = -6; c0 <= 6; ++c0) {
        for (int c1 = -6; c1 <= 6; ++c1) {
            const LinearMap d = build_quadratic_derivation(ring, Element{c0, c1});
            const auto a = quadratic_inner(ring, s, t, d);
            const auto b = is_inner_generic(ring, s, t, d);
            ASSERT_EQ(a.inner, b.inner) << c0 << "," << c1;
            if (a.inner) {
                EXPECT_EQ(*a.witness, *b.witness);
            }
        }
    }
}

// ------------------------------------------------------------- biquadratic

TEST(Biquadratic, ClassificationTable)
{
    const BiquadraticRing ring(2, 3);
    auto tag = [&](int a, int b) { return classify_biquadratic(ring, ring.phi(a), ring.phi(b)).str(); };
    EXPECT_EQ(tag(1, 2), "I+");
    EXPECT_EQ(tag(2, 1), "I+");
    EXPECT_EQ(tag(3, 4), "I-");
    EXPECT_EQ(tag(4, 3), "I-");
    EXPECT_EQ(tag(1, 3), "II+");
    EXPECT_EQ(tag(2, 4), "II-");
    EXPECT_EQ(tag(1, 4), "III+");
    EXPECT_EQ(tag(4, 1), "III+");
    EXPECT_EQ(tag(2, 3), "III-");
    EXPECT_THROW(classify_biquadratic(ring, ring.phi(1), ring.phi(1)), InvalidEndomorphism);
}

TEST(Biquadratic, BuildExamples)
{
    const BiquadraticRing ring(2, 3);
    const auto& sp = ring.spec();
    // Case I, D(sqrt 3) = 1: D(sqrt 6) = sqrt 2 and D(sqrt 2) = 0.
    const LinearMap d = build_biquadratic_derivation(ring, ring.phi(1), ring.phi(2), {sp.unity()});
    EXPECT_TRUE(d.image(1).is_zero());
    EXPECT_EQ(d.image(3), sp.basis(1));
    EXPECT_TRUE(is_derivation(sp, d, ring.phi(1), ring.phi(2)));
    // Case III: D(sqrt 2) = sqrt 2, D(sqrt 3) = sqrt 3.
    const LinearMap d3 = build_biquadratic_derivation(ring, ring.phi(1), ring.phi(4), {sp.basis(1), sp.basis(2)});
    EXPECT_TRUE(d3.image(3).is_zero());
    EXPECT_TRUE(is_derivation(sp, d3, ring.phi(1), ring.phi(4)));
    // Zero free images give the zero map.
    EXPECT_TRUE(build_biquadratic_derivation(ring, ring.phi(1), ring.phi(4), {sp.zero(), sp.zero()}).is_zero());
    // Constraint violations and wrong counts.
    EXPECT_THROW(build_biquadratic_derivation(ring, ring.phi(1), ring.phi(4), {sp.basis(1), sp.zero()}),
                 NotADerivation);
    EXPECT_THROW(build_biquadratic_derivation(ring, ring.phi(1), ring.phi(2), {sp.unity(), sp.unity()}),
                 DimensionMismatch);
}

TEST(Biquadratic, CaseThreeBasisUsesGcdSplit)
{
    const BiquadraticRing ring(6, 10);
    const DerivationSpace sp = biquadratic_basis(ring, ring.phi(1), ring.phi(4));
    ASSERT_EQ(sp.basis_maps.size(), 4U);
    // Third generator: D(sqrt m) = r sqrt n, D(sqrt n) = s sqrt m with (r, s) = (3, 5).
    EXPECT_EQ(sp.basis_maps[2].image(1), (Element{0, 0, 3, 0}));
    EXPECT_EQ(sp.basis_maps[2].image(2), (Element{0, 5, 0, 0}));
    EXPECT_EQ(sp.rank(), 4U);
}

TEST(Biquadratic, CaseThreeBasisSpansTheModule)
{
    // Every derivation whose free images are small lies in the Z-span of the
    // basis: compare against the lattice of all solutions of the constraint.
    for (const auto& [m, n] : cases::biquadratic_params()) {
        const BiquadraticRing ring(m, n);
        for (const auto& [s, t] : cases::ordered_pairs(ring)) {
            if (classify_biquadratic(ring, s, t).kind != BiquadraticCase::Kind::III) {
                continue;
            }
            const DerivationSpace sp = biquadratic_basis(ring, s, t);
            IntMatrix gens(16, 4);
            for (std::size_t j = 0; j < 4; ++j) {
                for (std::size_t i = 0; i < 4; ++i) {
                    for (std::size_t k = 0; k < 4; ++k) {
                        gens(i * 4 + k, j) = sp.basis_maps[j].image(i)[k];
                    }
                }
            }
            const IntegerSolver solver(gens);
            std::mt19937_64 rng(oracle::seed + 3);
            for (int trial = 0; trial < 200; ++trial) {
                const Element dm = cases::random_element(rng, 4, -3, 3);
                const Element dn = cases::random_element(rng, 4, -3, 3);
                LinearMap d;
                try {
                    d = build_biquadratic_derivation(ring, s, t, {dm, dn});
                } catch (const NotADerivation&) {
                    continue;
                }
                std::vector<Integer> rhs;
                for (const auto& im : d.images()) {
                    rhs.insert(rhs.end(), im.coords().begin(), im.coords().end());
                }
                EXPECT_TRUE(solver.solve(rhs).has_value()) << ring.name();
            }
        }
    }
}

TEST(Biquadratic, InnerExamples)
{
    const BiquadraticRing ring(2, 3);
    const auto& sp = ring.spec();
    const auto s = ring.phi(1);
    const auto t = ring.phi(2);
    const auto no = biquadratic_inner(ring, s, t, build_biquadratic_derivation(ring, s, t, {sp.unity()}));
    EXPECT_FALSE(no.inner);
    const LinearMap d = build_biquadratic_derivation(ring, s, t, {Integer(6) * sp.basis(2)});
    const auto yes = biquadratic_inner(ring, s, t, d);
    ASSERT_TRUE(yes.inner);
    EXPECT_TRUE(*yes.witness == Integer(3) * sp.unity() || *yes.witness == Integer(-3) * sp.unity());
    EXPECT_EQ(inner_map(sp, s, t, *yes.witness), d);
    const auto zero = biquadratic_inner(ring, s, t, LinearMap::zero(4));
    ASSERT_TRUE(zero.inner);
    EXPECT_TRUE(zero.witness->is_zero());
}

TEST(Biquadratic, CombineChecksLength)
{
    const BiquadraticRing ring(2, 3);
    const DerivationSpace sp = biquadratic_basis(ring, ring.phi(1), ring.phi(2));
    EXPECT_THROW(combine(sp, {1, 2}), DimensionMismatch);
    EXPECT_EQ(combine(sp, {1, 0, 0, 0}), sp.basis_maps[0]);
}
