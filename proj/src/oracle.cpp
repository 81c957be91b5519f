#include "grmr/oracle.h"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "grmr/egrmr.h"
#include "grmr/extremes.h"
#include "grmr/parallel.h"
#include "grmr/regret.h"

namespace grmr {

namespace {

constexpr double kEdgeTol = 1e-9;

// Advances an ascending index combination to its colexicographic successor.
// Returns false when `combo` was the last one over [0, n).
bool next_colex(std::vector<int>& combo, int n) {
    const int c = static_cast<int>(combo.size());
    for (int j = 0; j < c; ++j) {
        const int limit = (j + 1 < c) ? combo[j + 1] : n;
        if (combo[j] + 1 < limit) {
            ++combo[j];
            for (int i = 0; i < j; ++i) combo[i] = i;
            return true;
        }
    }
    return false;
}

}  // namespace

std::string OracleResult::to_json() const {
    nlohmann::json j;
    j["cap_reached"] = cap_reached;
    j["optimal_size"] = optimal_size;
    j["indices"] = rows;
    if (exact_regret >= 0.0)
        j["exact_max_regret"] = exact_regret;
    else
        j["exact_max_regret"] = nullptr;
    j["subsets_evaluated"] = subsets_evaluated;
    j["search_space"] = search_space;
    return j.dump();
}

OracleResult brute_force_grmr(const Dataset& ds, double eps, long long max_subsets) {
    if (!(eps > 0.0 && eps < 1.0))
        throw ConfigError("brute_force_grmr: regret budget must lie strictly between "
                          "0 and 1");
    if (max_subsets <= 0)
        throw ConfigError("brute_force_grmr: evaluation budget must be positive");

    OracleResult res;
    std::vector<int> pool;
    std::vector<int> xrows;
    if (ds.d == 2) {
        const auto cand = select_candidates(ds, eps);  // refuses exterior origins
        pool = cand.rows;
        xrows = cand.hull;
        std::sort(xrows.begin(), xrows.end());
        res.search_space = "candidates-2d";
    } else {
        xrows = extreme_points_hd(ds);
        pool = xrows;
        res.search_space = "extremes";
        Dataset sub(static_cast<int>(xrows.size()), ds.d);
        for (std::size_t p = 0; p < xrows.size(); ++p)
            for (int c = 0; c < ds.d; ++c)
                sub.at(static_cast<int>(p), c) = ds.at(xrows[p], c);
        require_interior_origin(sub);
    }
    std::sort(pool.begin(), pool.end());
    const int n = static_cast<int>(pool.size());

    // Chunked enumeration: generate a block of combinations, score them in
    // parallel, then take the earliest success so the answer matches a
    // sequential scan.
    constexpr int kChunk = 2048;
    for (int c = std::min(ds.d + 1, n); c <= n; ++c) {
        std::vector<int> combo(c);
        for (int i = 0; i < c; ++i) combo[i] = i;
        bool more = true;
        while (more) {
            const long long room = max_subsets - res.subsets_evaluated;
            if (room <= 0) {
                res.cap_reached = true;
                return res;
            }
            std::vector<std::vector<int>> batch;
            batch.reserve(static_cast<std::size_t>(std::min<long long>(kChunk, room)));
            while (more && static_cast<long long>(batch.size()) <
                               std::min<long long>(kChunk, room)) {
                batch.push_back(combo);
                more = next_colex(combo, n);
            }
            std::vector<double> value(batch.size(), -1.0);
            std::vector<char> good(batch.size(), 0);
            parallel_for(static_cast<std::int64_t>(batch.size()), [&](std::int64_t b) {
                std::vector<int> rows(c);
                for (int i = 0; i < c; ++i) rows[i] = pool[batch[b][i]];
                const auto rep = exact_max_regret(ds, rows, xrows);
                if (!rep.unbounded && rep.value <= eps + kEdgeTol) {
                    good[b] = 1;
                    value[b] = rep.value;
                }
            });
            for (std::size_t b = 0; b < batch.size(); ++b) {
                ++res.subsets_evaluated;
                if (good[b]) {
                    res.optimal_size = c;
                    res.rows.resize(c);
                    for (int i = 0; i < c; ++i) res.rows[i] = pool[batch[b][i]];
                    res.exact_regret = value[b];
                    return res;
                }
            }
        }
    }
    // Unreachable under the interior-origin precondition: the full pool
    // contains every extreme point and has regret zero.
    throw std::runtime_error("brute_force_grmr: no subset satisfied the budget");
}

}  // namespace grmr
