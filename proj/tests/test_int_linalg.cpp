#include "cases.hpp"
#include "criteria.hpp"
#include "oracles.hpp"

#include "sigtau/int_matrix.hpp"
#include "sigtau/modq.hpp"

#include <gtest/gtest.h>

using namespace sigtau;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo = -5, int hi = 5)
{
    std::vector<std::vector<Integer>> rows;
    for (std::size_t i = 0; i < r; ++i) {
        rows.push_back(oracle::random_vec(rng, c, lo, hi));
    }
    return IntMatrix::from_rows(rows);
}

} // namespace

TEST(Determinant, BareissMatchesCofactorExpansion)
{
    std::mt19937_64 rng(oracle::seed);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + rng() % 6;
        const IntMatrix a = random_matrix(rng, n, n);
        EXPECT_EQ(det_bareiss(a), oracle::cofactor_det(criteria::to_mat(a)));
    }
    EXPECT_EQ(det_bareiss(IntMatrix(0, 0)), 1);
    EXPECT_THROW(det_bareiss(IntMatrix(2, 3)), std::invalid_argument);
}

TEST(Determinant, SingularAndPivoting)
{
    EXPECT_EQ(det_bareiss(IntMatrix::from_rows({{0, 1}, {1, 0}})), -1);
    EXPECT_EQ(det_bareiss(IntMatrix::from_rows({{1, 2}, {2, 4}})), 0);
    EXPECT_EQ(det_bareiss(IntMatrix::from_rows({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}})), -1);
}

TEST(Adjugate, TimesMatrixIsDeterminantIdentity)
{
    std::mt19937_64 rng(oracle::seed + 1);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng() % 5;
        const IntMatrix a = random_matrix(rng, n, n, -3, 3);
        const Integer d = det_bareiss(a);
        EXPECT_EQ(a * adjugate(a), d * IntMatrix::identity(n));
        EXPECT_EQ(adjugate(a) * a, d * IntMatrix::identity(n));
    }
    // Rank n - 2 gives the zero adjugate.
    EXPECT_EQ(adjugate(IntMatrix::from_rows({{1, 1, 1}, {2, 2, 2}, {3, 3, 3}})), IntMatrix(3, 3));
}

TEST(Rank, RationalRank)
{
    EXPECT_EQ(rational_rank(IntMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}})), 2U);
    EXPECT_EQ(rational_rank(IntMatrix(3, 4)), 0U);
    std::mt19937_64 rng(oracle::seed + 2);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + rng() % 5;
        const IntMatrix a = random_matrix(rng, n, n);
        EXPECT_EQ(rational_rank(a) == n, det_bareiss(a) != 0);
    }
}

TEST(Hermite, TransformIsUnimodularAndTriangular)
{
    std::mt19937_64 rng(oracle::seed + 3);
    for (int t = 0; t < 100; ++t) {
        const std::size_t r = 1 + rng() % 6;
        const std::size_t c = 1 + rng() % 4;
        const IntMatrix a = random_matrix(rng, r, c);
        const HermiteForm h = column_hermite_form(a);
        EXPECT_EQ(a * h.u, h.h);
        const Integer du = det_bareiss(h.u);
        EXPECT_TRUE(du == 1 || du == -1);
        EXPECT_EQ(h.rank(), rational_rank(a));
        // Column j is zero above its pivot row, pivots positive and increasing.
        for (std::size_t j = 0; j < h.rank(); ++j) {
            const std::size_t pr = h.pivot_rows[j];
            EXPECT_GT(h.h(pr, j), 0);
            for (std::size_t i = 0; i < pr; ++i) {
                EXPECT_EQ(h.h(i, j), 0);
            }
            if (j > 0) {
                EXPECT_GT(pr, h.pivot_rows[j - 1]);
            }
        }
    }
}

TEST(Solver, AgreesWithAdjugateOnSquareSystems)
{
    std::mt19937_64 rng(oracle::seed + 4);
    std::size_t solvable = 0;
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + rng() % 5;
        const IntMatrix a = random_matrix(rng, n, n, -3, 3);
        if (det_bareiss(a) == 0) {
            continue;
        }
        // Half the right-hand sides come from an integral x.
        std::vector<Integer> c = t % 2 == 0 ? a * oracle::random_vec(rng, n, -4, 4) : oracle::random_vec(rng, n, -6, 6);
        const auto x = solve_integer(a, c);
        const auto y = solve_adjugate(a, c);
        ASSERT_EQ(x.has_value(), y.has_value());
        if (x) {
            EXPECT_EQ(a * *x, c);
            EXPECT_EQ(*x, *y);
            ++solvable;
        }
    }
    EXPECT_GT(solvable, 100U);
}

TEST(Solver, OverdeterminedSystems)
{
    std::mt19937_64 rng(oracle::seed + 5);
    for (int t = 0; t < 200; ++t) {
        const std::size_t c = 1 + rng() % 4;
        const std::size_t r = c + rng() % 5;
        const IntMatrix a = random_matrix(rng, r, c);
        const auto x0 = oracle::random_vec(rng, c, -5, 5);
        const auto rhs = a * x0;
        const auto x = solve_integer(a, rhs);
        ASSERT_TRUE(x);
        EXPECT_EQ(a * *x, rhs);
        // Perturbing one entry by 1 either stays solvable with a true solution or is rejected.
        auto bumped = rhs;
        bumped[0] += 1;
        if (const auto z = solve_integer(a, bumped)) {
            EXPECT_EQ(a * *z, bumped);
        }
    }
    // 2x = 1 has no integer solution.
    EXPECT_FALSE(solve_integer(IntMatrix::from_rows({{2}}), {1}));
}

TEST(ModQ, RankNullspaceAndInverse)
{
    EXPECT_THROW(require_prime_modulus(4), InvalidModulus);
    EXPECT_EQ(inverse_mod(3, 7), 5);
    std::mt19937_64 rng(oracle::seed + 6);
    for (std::int64_t q : {2, 3, 5, 7}) {
        for (int t = 0; t < 40; ++t) {
            const std::size_t r = 1 + rng() % 5;
            const std::size_t c = 1 + rng() % 7;
            std::vector<std::vector<std::int64_t>> rows(r, std::vector<std::int64_t>(c));
            for (auto& row : rows) {
                for (auto& x : row) {
                    x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
                }
            }
            const ModQMatrix m = ModQMatrix::from_rows(q, c, rows);
            const ModQMatrix ns = nullspace_mod_q(m);
            EXPECT_EQ(rank_mod_q(m) + ns.rows(), c);
            EXPECT_EQ(rank_mod_q(ns), ns.rows());
            EXPECT_EQ(m * ns.transpose(), ModQMatrix(q, r, ns.rows()));
        }
    }
}

TEST(ModQ, OmegaReducesNegativesIntoRange)
{
    const ModQMatrix m = omega_reduce(IntMatrix::from_rows({{-1, 5}, {7, -8}}), 3);
    EXPECT_EQ(m.row(0), (std::vector<std::int64_t>{2, 2}));
    EXPECT_EQ(m.row(1), (std::vector<std::int64_t>{1, 1}));
}
