#pragma once

// Multiplication matrices of zeta^u - zeta^w in Z[zeta_p] and the sweep
// checking that each has determinant p.

#include "sigtau/int_matrix.hpp"
#include "sigtau/integer.hpp"
#include "sigtau/number_rings.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace sigtau {

/// Matrix of x -> (zeta^u - zeta^w) x in the power basis, so that for
/// sigma(zeta) = zeta^u, tau(zeta) = zeta^w one has A b = coords(beta (sigma - tau)(zeta)).
/// Column j holds the coordinates of (zeta^u - zeta^w) zeta^j.
inline IntMatrix build_A(std::int64_t p, std::int64_t u, std::int64_t w)
{
    if (p < 3 || !is_prime(p)) {
        throw InvalidRing("p = " + std::to_string(p) + " is not an odd prime");
    }
    if (u < 1 || u >= p || w < 1 || w >= p) {
        throw std::invalid_argument("exponents must lie in 1.." + std::to_string(p - 1));
    }
    if (u == w) {
        throw std::invalid_argument("u and w must differ");
    }
    const auto n = static_cast<std::size_t>(p - 1);
    IntMatrix a(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto jj = static_cast<std::int64_t>(j);
        const Element col = cyclotomic_zeta_power(p, u + jj) - cyclotomic_zeta_power(p, w + jj);
        for (std::size_t i = 0; i < n; ++i) {
            a(i, j) = col[i];
        }
    }
    return a;
}

struct ConjectureCase {
    std::int64_t p = 0;
    std::int64_t u = 0;
    std::int64_t w = 0;
    Integer det;

    bool pass() const { return det == p; }
    bool sign_mismatch() const { return det == -p; }
};

struct SweepReport {
    std::int64_t p_min = 0;
    std::int64_t p_max = 0;
    std::vector<ConjectureCase> cases;
    std::vector<ConjectureCase> failures;
    std::vector<ConjectureCase> sign_mismatches;
    double seconds = 0.0;

    std::size_t total() const noexcept { return cases.size(); }
};

inline std::vector<std::int64_t> odd_primes_between(std::int64_t lo, std::int64_t hi)
{
    std::vector<std::int64_t> out;
    for (std::int64_t p = std::max<std::int64_t>(lo, 3); p <= hi; ++p) {
        if (is_prime(p)) {
            out.push_back(p);
        }
    }
    return out;
}

/// det(build_A(p, u, w)) for every odd prime p in [p_min, p_max] and every
/// ordered pair u != w. `jobs` worker threads; 0 means hardware concurrency.
inline SweepReport sweep(std::int64_t p_min, std::int64_t p_max, unsigned jobs = 1)
{
    if (p_min < 3 || p_max < p_min) {
        throw std::invalid_argument("sweep range must satisfy 3 <= p_min <= p_max");
    }
    const auto primes = odd_primes_between(p_min, p_max);
    if (primes.empty()) {
        throw std::invalid_argument("no odd primes in [" + std::to_string(p_min) + ", " + std::to_string(p_max) + "]");
    }
    const auto start = std::chrono::steady_clock::now();
    SweepReport report;
    report.p_min = p_min;
    report.p_max = p_max;
    for (std::int64_t p : primes) {
        for (std::int64_t u = 1; u < p; ++u) {
            for (std::int64_t w = 1; w < p; ++w) {
                if (u != w) {
                    report.cases.push_back({p, u, w, 0});
                }
            }
        }
    }
    // Largest primes first so the workers finish together.
    std::vector<std::size_t> order(report.cases.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = order.size() - 1 - i;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < order.size(); t = next++) {
            ConjectureCase& c = report.cases[order[t]];
            c.det = det_bareiss(build_A(c.p, c.u, c.w));
        }
    };
    if (jobs == 0) {
        jobs = std::max(1u, std::thread::hardware_concurrency());
    }
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < jobs; ++i) {
            pool.emplace_back(worker);
        }
    }
    for (const auto& c : report.cases) {
        if (c.sign_mismatch()) {
            report.sign_mismatches.push_back(c);
        } else if (!c.pass()) {
            report.failures.push_back(c);
        }
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace sigtau
