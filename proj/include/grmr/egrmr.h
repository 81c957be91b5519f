// Exact 2D solver. The smallest subset with worst-case regret ratio at most
// eps is found by reduction to a shortest directed cycle: candidates are
// arranged counter-clockwise, an edge joins an ordered pair when the pair's
// arc can be covered within eps, and the minimal subset is the shortest
// cycle around the origin.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grmr/core.h"

namespace grmr {

// Unit x with <a, x> == <b, x>, signed so <a, x> >= 0.
std::vector<double> tie_vector_2d(std::span<const double> a, std::span<const double> b);

// Tie vector for each consecutive extreme pair (hull[i], hull[i+1]), given
// the hull CCW. Throws ConditionError when a shared support fails to stay
// strictly positive (origin not strictly inside the hull).
std::vector<std::vector<double>> boundary_vectors(const Dataset& ds,
                                                  const std::vector<int>& hull);

struct CandidateSet {
    std::vector<int> hull;                       // CCW extreme rows
    std::vector<std::vector<double>> boundary;   // per consecutive hull pair
    std::vector<int> rows;                       // candidate rows, CCW order
};

// Extremes plus every point whose score reaches (1 - eps) of the owning
// extreme's under some boundary vector. With banded_scan, each point checks
// only boundary vectors within a quarter turn of its own angle (the others
// cannot reach the threshold); results are identical.
CandidateSet select_candidates(const Dataset& ds, double eps, bool banded_scan = false);

struct PairRegret {
    double value = 0.0;           // worst regret over the pair's arc
    std::vector<double> tie;      // the pair's unit tie vector
};

// Worst regret committed on the closed CCW arc from row_i to row_j when only
// those two are kept: extremes on the arc (excluding the pair itself) are
// evaluated at the pair's tie vector. Zero when the arc has no such extreme;
// the maximum may be negative.
PairRegret compute_pair_regret(const Dataset& ds, const std::vector<int>& hull,
                               int row_i, int row_j);

struct ArcGraph {
    std::vector<std::vector<int>> adj;  // ascending neighbor positions
};

// Directed edge u -> v when the CCW span from candidate u to v is under half
// a turn and the pair regret is within eps.
ArcGraph build_arc_graph(const Dataset& ds, const CandidateSet& cand, double eps);

// Shortest directed cycle; ties prefer the smallest start position, then the
// lexicographically smallest vertex sequence. Empty when the graph is
// acyclic.
std::vector<int> shortest_cycle(const ArcGraph& g);

struct Egrmr2dOptions {
    bool banded_scan = false;  // candidate selection variant (same results)
    bool verify = true;        // recompute the subset's exact regret
};

struct Egrmr2dResult {
    double epsilon = 0.0;
    std::vector<int> rows;        // chosen rows in cycle order
    double exact_regret = -1.0;   // verified value; -1 when verify is off
    double wall_ms = 0.0;
    double candidate_ms = 0.0;    // phase: candidate selection
    double graph_ms = 0.0;        // phase: pair regrets + arc graph
    double cycle_ms = 0.0;        // phase: shortest cycle
    int candidates = 0;
    std::string to_json() const;
};

// Full pipeline; throws ConditionError when the origin is not strictly
// interior, ConfigError for an eps outside (0, 1).
Egrmr2dResult egrmr(const Dataset& ds, double eps, const Egrmr2dOptions& opts = {});

}  // namespace grmr
