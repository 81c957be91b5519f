// Regret evaluation: how much of the best achievable score a subset Q gives
// up against a reference set, in the worst case over all scoring directions
// (negative weights included). Three evaluators share one report type: a
// sampled estimator, an exact 2D sweep over score-tie breakpoints, and an
// exact LP decomposition over the top-score cells of the reference extremes.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grmr/core.h"

namespace grmr {

// 1 - top(Q, x) / top(ref, x) for one direction. Throws ConditionError when
// the reference support is not strictly positive, naming the direction.
double regret_ratio(const Dataset& ds, std::span<const int> q_rows,
                    std::span<const int> ref_rows, std::span<const double> x);

// Same with the whole dataset as the reference.
double regret_ratio(const Dataset& ds, std::span<const int> q_rows,
                    std::span<const double> x);

struct RegretReport {
    double value = 0.0;            // worst regret ratio found (can exceed 1)
    bool unbounded = false;        // regret grows without bound; value invalid
    std::vector<double> witness;   // direction attaining value (unit length)
    std::string method;            // "sampled", "exact-2d", or "exact-lp"
    long long samples = 0;         // sampled method only
    std::string to_json() const;   // value/witness become null when unbounded
};

// Lower-bound estimate from m sampled unit directions. Deterministic per
// seed, and a longer run's first m samples match a shorter run exactly, so
// estimates are monotone in m for fixed seed.
RegretReport estimate_max_regret(const Dataset& ds, std::span<const int> q_rows,
                                 std::span<const int> ref_rows, long long m = 1000000,
                                 std::uint64_t seed = 42);

// Exact worst-case regret of Q against the reference extreme rows. Uses the
// breakpoint sweep in 2D and the cell-LP decomposition otherwise.
RegretReport exact_max_regret(const Dataset& ds, std::span<const int> q_rows,
                              std::span<const int> x_rows);

namespace detail {
// Both exact paths, exposed so tests can cross-check them on the same data.
RegretReport exact_max_regret_2d(const Dataset& ds, std::span<const int> q_rows,
                                 std::span<const int> x_rows);
RegretReport exact_max_regret_lp(const Dataset& ds, std::span<const int> q_rows,
                                 std::span<const int> x_rows);
}  // namespace detail

}  // namespace grmr
