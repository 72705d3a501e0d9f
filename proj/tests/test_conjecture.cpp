#include "cases.hpp"
#include "criteria.hpp"
#include "oracles.hpp"

#include "sigtau/conjecture.hpp"

#include <gtest/gtest.h>

using namespace sigtau;

TEST(BuildA, MatchesPrintedP5Matrix)
{
    EXPECT_EQ(build_A(5, 1, 2), criteria::p5_matrix_from_text());
    EXPECT_EQ(det_bareiss(build_A(5, 1, 2)), 5);
}

TEST(BuildA, PrintedSystemHasNoIntegerSolution)
{
    // A X = C with C = (0, 1, 0, 0): det 5 and Adj(A) C not divisible by 5.
    const IntMatrix a = criteria::p5_matrix_from_text();
    EXPECT_FALSE(solve_integer(a, {0, 1, 0, 0}));
    EXPECT_FALSE(solve_adjugate(a, {0, 1, 0, 0}));
}

TEST(BuildA, ColumnsAreMultiplicationByDifference)
{
    for (std::int64_t p : cases::small_primes(11)) {
        const oracle::Cyclo cy{p};
        for (std::int64_t u = 1; u < p; ++u) {
            for (std::int64_t w = 1; w < p; ++w) {
                if (u != w) {
                    EXPECT_EQ(criteria::to_mat(build_A(p, u, w)), cy.multiplication_matrix(u, w));
                }
            }
        }
    }
}

TEST(BuildA, InputValidation)
{
    EXPECT_THROW(build_A(9, 1, 2), InvalidRing);
    EXPECT_THROW(build_A(5, 0, 2), std::invalid_argument);
    EXPECT_THROW(build_A(5, 2, 2), std::invalid_argument);
}

TEST(Sweep, SmallRanges)
{
    const SweepReport five = sweep(5, 5);
    EXPECT_EQ(five.total(), 12U);
    for (const auto& c : five.cases) {
        EXPECT_EQ(c.det, 5);
    }
    const SweepReport small = sweep(3, 13);
    EXPECT_EQ(small.total(), 266U);
    EXPECT_TRUE(small.failures.empty());
    EXPECT_TRUE(small.sign_mismatches.empty());
}

TEST(Sweep, DeterminantsAgreeWithLaplaceExpansion)
{
    for (const auto& c : sweep(3, 7).cases) {
        EXPECT_EQ(oracle::cofactor_det(oracle::Cyclo{c.p}.multiplication_matrix(c.u, c.w)), c.det);
    }
}

TEST(Sweep, ThreadCountDoesNotChangeOutput)
{
    const SweepReport one = sweep(3, 23, 1);
    const SweepReport many = sweep(3, 23, 4);
    ASSERT_EQ(one.total(), many.total());
    for (std::size_t i = 0; i < one.total(); ++i) {
        EXPECT_EQ(one.cases[i].p, many.cases[i].p);
        EXPECT_EQ(one.cases[i].u, many.cases[i].u);
        EXPECT_EQ(one.cases[i].w, many.cases[i].w);
        EXPECT_EQ(one.cases[i].det, many.cases[i].det);
    }
}

TEST(Sweep, CanonicalOrder)
{
    const SweepReport r = sweep(3, 11, 3);
    for (std::size_t i = 1; i < r.total(); ++i) {
        const auto& a = r.cases[i - 1];
        const auto& b = r.cases[i];
        EXPECT_LT(std::tie(a.p, a.u, a.w), std::tie(b.p, b.u, b.w));
    }
}

TEST(Sweep, PrimeList)
{
    EXPECT_EQ(odd_primes_between(1, 20), (std::vector<std::int64_t>{3, 5, 7, 11, 13, 17, 19}));
    EXPECT_TRUE(odd_primes_between(24, 28).empty());
}
