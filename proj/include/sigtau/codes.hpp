#pragma once

// Linear codes from derivation images: the integer matrix B of images,
// its reduction mod a prime q, and [n, k, d] / dual / LCD analysis.

#include "sigtau/algebra.hpp"
#include "sigtau/int_matrix.hpp"
#include "sigtau/integer.hpp"
#include "sigtau/modq.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace sigtau {

class DistanceBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DependentSubset : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::uint64_t default_distance_budget = std::uint64_t{1} << 24;

/// Row i holds the coordinates of D(a_i).
struct IddMatrix {
    IntMatrix b;

    std::size_t n() const noexcept { return b.cols(); }
};

inline IddMatrix idd_matrix(const AlgebraSpec& spec, const LinearMap& d)
{
    check_map(spec, d);
    const std::size_t n = spec.rank();
    IntMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            b(i, j) = d.image(i)[j];
        }
    }
    return {std::move(b)};
}

inline void check_subset(const IddMatrix& b, const std::vector<std::size_t>& t)
{
    for (std::size_t i : t) {
        if (i >= b.b.rows()) {
            throw std::out_of_range("subset index " + std::to_string(i) + " outside 0.." +
                                    std::to_string(b.b.rows() - 1));
        }
    }
}

/// True iff the rows indexed by t (basis positions) are independent over Q.
inline bool independent_subset_check(const IddMatrix& b, const std::vector<std::size_t>& t)
{
    check_subset(b, t);
    if (t.empty()) {
        return true;
    }
    return rational_rank(b.b.select_rows(t)) == t.size();
}

class LinearCode {
public:
    /// Code spanned by the rows of `generator`.
    explicit LinearCode(ModQMatrix generator, std::size_t generator_count = npos)
        : generator_(std::move(generator)), standard_(generator_.q(), 0, generator_.cols())
    {
        RowEchelon e = rref_mod_q(generator_);
        k_ = e.rank;
        std::vector<std::vector<std::int64_t>> rows;
        for (std::size_t i = 0; i < k_; ++i) {
            rows.push_back(e.reduced.row(i));
        }
        standard_ = ModQMatrix::from_rows(generator_.q(), generator_.cols(), rows);
        subset_size_ = generator_count == npos ? generator_.rows() : generator_count;
    }

    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    std::int64_t q() const noexcept { return generator_.q(); }
    std::size_t n() const noexcept { return generator_.cols(); }
    std::size_t k() const noexcept { return k_; }
    const ModQMatrix& generator() const noexcept { return generator_; }
    const ModQMatrix& standard_form() const noexcept { return standard_; }
    /// Number of generators the code was built from.
    std::size_t subset_size() const noexcept { return subset_size_; }
    /// Rank mod q fell below the number of generators.
    bool rank_dropped() const noexcept { return k_ < subset_size_; }

private:
    ModQMatrix generator_;
    ModQMatrix standard_;
    std::size_t k_ = 0;
    std::size_t subset_size_ = 0;
};

/// Selected rows of B reduced mod q. The subset must be independent over Z.
inline LinearCode hom_idd_code(const IddMatrix& b, const std::vector<std::size_t>& t, std::int64_t q)
{
    require_prime_modulus(q);
    if (!independent_subset_check(b, t)) {
        throw DependentSubset("selected derivation images are not Z-linearly independent");
    }
    return LinearCode(omega_reduce(b.b.select_rows(t), q), t.size());
}

namespace detail {

inline std::uint64_t message_count(const LinearCode& code, std::uint64_t budget)
{
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < code.k(); ++i) {
        if (total > budget / static_cast<std::uint64_t>(code.q())) {
            throw DistanceBudgetExceeded("enumerating " + std::to_string(code.q()) + "^" + std::to_string(code.k()) +
                                         " codewords exceeds the budget of " + std::to_string(budget));
        }
        total *= static_cast<std::uint64_t>(code.q());
    }
    return total;
}

/// Calls visit(weight) for every message index in [lo, hi), walking the
/// messages as a base-q odometer so each step adds one generator row.
template <class Visit>
void walk_codewords(const LinearCode& code, std::uint64_t lo, std::uint64_t hi, Visit&& visit)
{
    const std::size_t n = code.n();
    const std::size_t k = code.k();
    const std::int64_t q = code.q();
    const ModQMatrix& g = code.standard_form();
    std::vector<std::int64_t> digits(k);
    std::vector<std::int64_t> word(n);
    std::uint64_t idx = lo;
    for (std::size_t i = 0; i < k; ++i) {
        digits[i] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(q));
        idx /= static_cast<std::uint64_t>(q);
        for (std::size_t j = 0; j < n; ++j) {
            word[j] = (word[j] + digits[i] * g(i, j)) % q;
        }
    }
    std::size_t weight = static_cast<std::size_t>(std::count_if(word.begin(), word.end(), [](auto v) { return v; }));
    for (std::uint64_t m = lo; m < hi; ++m) {
        visit(weight);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (g(i, j) == 0) {
                    continue;
                }
                const bool was = word[j] != 0;
                word[j] = (word[j] + g(i, j)) % q;
                const bool now = word[j] != 0;
                weight = weight + (now ? 1 : 0) - (was ? 1 : 0);
            }
            digits[i] = (digits[i] + 1) % q;
            if (digits[i] != 0) {
                break;
            }
        }
    }
}

} // namespace detail

/// Minimum nonzero weight by exhaustive enumeration of all q^k messages.
/// Throws DistanceBudgetExceeded rather than approximating.
inline std::size_t min_distance(const LinearCode& code, std::uint64_t budget = default_distance_budget,
                                unsigned jobs = 1)
{
    if (code.k() == 0) {
        throw std::domain_error("minimum distance of the zero code is undefined");
    }
    const std::uint64_t total = detail::message_count(code, budget);
    if (jobs == 0) {
        jobs = std::max(1u, std::thread::hardware_concurrency());
    }
    jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, total));
    std::vector<std::size_t> best(jobs, code.n());
    auto shard = [&](unsigned s) {
        const std::uint64_t lo = std::max<std::uint64_t>(1, total * s / jobs);
        const std::uint64_t hi = total * (s + 1) / jobs;
        if (lo >= hi) {
            return;
        }
        detail::walk_codewords(code, lo, hi, [&](std::size_t w) { best[s] = std::min(best[s], w); });
    };
    if (jobs == 1) {
        shard(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned s = 0; s < jobs; ++s) {
            pool.emplace_back(shard, s);
        }
    }
    return *std::min_element(best.begin(), best.end());
}

/// counts[w] = number of codewords of weight w, zero word included.
inline std::vector<std::uint64_t> weight_distribution(const LinearCode& code,
                                                      std::uint64_t budget = default_distance_budget)
{
    const std::uint64_t total = detail::message_count(code, budget);
    std::vector<std::uint64_t> counts(code.n() + 1);
    detail::walk_codewords(code, 0, total, [&](std::size_t w) { ++counts[w]; });
    return counts;
}

inline LinearCode dual_code(const LinearCode& code)
{
    return LinearCode(nullspace_mod_q(code.standard_form()));
}

/// C and its dual meet trivially iff G G^T is nonsingular for a basis G of C.
inline bool is_lcd(const LinearCode& code)
{
    const ModQMatrix& g = code.standard_form();
    return rank_mod_q(g * g.transpose()) == code.k();
}

/// "[n,k,d]" with d shown as "—" for the zero code.
inline std::string code_params(std::size_t n, std::size_t k, std::optional<std::size_t> d)
{
    return "[" + std::to_string(n) + "," + std::to_string(k) + "," + (d ? std::to_string(*d) : "—") + "]";
}

struct CodeReport {
    std::string subset;
    std::size_t n = 0;
    std::size_t k = 0;
    std::optional<std::size_t> d;
    bool lcd = false;
    std::size_t dual_n = 0;
    std::size_t dual_k = 0;
    std::optional<std::size_t> dual_d;
    std::size_t subset_size = 0;

    std::string params() const { return code_params(n, k, d); }
    std::string dual_params() const { return code_params(dual_n, dual_k, dual_d); }
    std::string property() const { return lcd ? "LCD" : "non-LCD"; }
    bool rank_dropped() const { return k < subset_size; }

    /// subset,"[n,k,d]",LCD|non-LCD,"[n,k,d]"
    std::string csv_row() const { return subset + ",\"" + params() + "\"," + property() + ",\"" + dual_params() + "\""; }
};

inline std::optional<std::size_t> distance_or_none(const LinearCode& c, std::uint64_t budget, unsigned jobs)
{
    if (c.k() == 0) {
        return std::nullopt;
    }
    return min_distance(c, budget, jobs);
}

inline CodeReport report_code(const std::string& label, const LinearCode& code,
                              std::uint64_t budget = default_distance_budget, unsigned jobs = 1)
{
    const LinearCode dual = dual_code(code);
    CodeReport r;
    r.subset = label;
    r.n = code.n();
    r.k = code.k();
    r.d = distance_or_none(code, budget, jobs);
    r.lcd = is_lcd(code);
    r.dual_n = dual.n();
    r.dual_k = dual.k();
    r.dual_d = distance_or_none(dual, budget, jobs);
    r.subset_size = code.subset_size();
    return r;
}

inline CodeReport code_report(const std::string& label, const IddMatrix& b, const std::vector<std::size_t>& t,
                              std::int64_t q, std::uint64_t budget = default_distance_budget, unsigned jobs = 1)
{
    return report_code(label, hom_idd_code(b, t, q), budget, jobs);
}

inline const char* code_csv_header() { return "subset,code,property,dual"; }

} // namespace sigtau
