// Exhaustive ground truth for small instances: enumerate subsets in
// increasing cardinality and return the first one whose exact worst-case
// regret fits the budget.  In 2D the search pool is the full candidate set
// (which provably contains an optimal solution); in higher dimension it is
// restricted to the extreme points and results are labeled accordingly.
#pragma once

#include <string>
#include <vector>

#include "grmr/core.h"

namespace grmr {

struct OracleResult {
    bool cap_reached = false;       // evaluation budget ran out before an answer
    int optimal_size = 0;           // 0 when cap_reached
    std::vector<int> rows;          // one optimal subset, dataset rows ascending
    double exact_regret = -1.0;     // verified regret of that subset
    long long subsets_evaluated = 0;
    std::string search_space;       // "candidates-2d" or "extremes"

    std::string to_json() const;
};

// Enumerates pool subsets of size d+1, d+2, ... in colexicographic order and
// stops at the first subset within budget, so the representative returned is
// deterministic.  `max_subsets` caps the number of regret evaluations; when
// it is hit the result says so instead of guessing.
OracleResult brute_force_grmr(const Dataset& ds, double eps,
                              long long max_subsets = 2000000);

}  // namespace grmr
