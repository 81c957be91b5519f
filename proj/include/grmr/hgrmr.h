// Heuristic solver for dimension >= 3 (usable in 2D as well): build a
// weighted dominance graph over the extreme points, where the weight of
// i -> j is the worst regret of keeping only point i over the directions
// where j wins, then cover all extremes with a greedy dominating set.
// Also provides threshold reuse (solve once at a loose threshold, then
// binary-search the largest filter level that still meets the target) and
// the dual problem (smallest regret level reaching a given size budget).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grmr/core.h"
#include "grmr/ipdg.h"

namespace grmr {

// Outcome of one dominance-weight linear program. kFailed marks a solve that
// ended without a trustworthy point; the pair gets no edge (which can only
// make the covering more conservative, never invalid).
struct DomWeight {
    enum Kind { kValue, kUnbounded, kEmptyCell, kFailed } kind = kValue;
    double value = 0.0;  // meaningful only when kind == kValue
};

// Worst regret of {position i} over the direction cell of position j, the
// cell being cut out by j's graph neighborhood `nbrs`.  Solved on the slice
// where j's score is 1: maximize 1 - <t_i, x> subject to <t_j - t, x> >= 0
// for each neighbor t and <t_j, x> = 1.  An unbounded slice means no finite
// threshold admits the edge; an infeasible one means the cell vanished
// numerically and the pair is skipped with a warning.
DomWeight dominance_weight(const Dataset& ds, const std::vector<int>& xrows, int i,
                           int j, const std::vector<int>& nbrs);

struct DomGraph {
    int nv = 0;
    double threshold = 0.0;  // level the graph was built for
    // Out-edges per source position, each (target, weight), sorted by target.
    std::vector<std::vector<std::pair<int, double>>> out;
    int max_neighborhood = 0;    // largest adjacency size in the graph used
    int max_dom = 0;             // largest |{i} ∪ out(i)|
    std::size_t lp_solves = 0;   // dominance LPs actually solved
    std::size_t empty_cells = 0; // pairs skipped because the cell vanished
    std::size_t lp_failures = 0; // pairs skipped for numerical reasons

    std::size_t edge_count() const;
    double max_edge_weight() const;
    std::string to_json() const;
    // Edges passing a tighter level; delta <= threshold.
    DomGraph filtered(double delta) const;
};

// Breadth-first construction from every source: explore the adjacency graph
// outward, keep an edge (and keep expanding through it) only while the
// weight stays within eps, prune the branch otherwise.
DomGraph build_dom_graph(const Dataset& ds, const std::vector<int>& xrows,
                         const IpdgGraph& ipdg, double eps);

struct GreedyResult {
    std::vector<int> picks;  // positions in pick order
    std::size_t covered = 0;
};

// Repeatedly take the vertex covering the most uncovered positions (its own
// plus its out-neighbors); ties break to the smallest index.
GreedyResult greedy_dominating_set(const DomGraph& dg);

struct HgrmrOptions {
    bool check_interior = true;  // refuse datasets whose hull excludes the origin
    int interior_samples = 20000;
    std::uint64_t interior_seed = 42;
};

struct HgrmrResult {
    double epsilon = 0.0;
    double delta = 0.0;          // filter level actually used (reuse mode)
    std::vector<int> rows;       // dataset rows, ascending
    std::vector<int> pick_order; // extreme-set positions in greedy order
    double exact_regret = -1.0;  // verified level, -1 when not evaluated
    double wall_ms = 0.0;
    double graph_ms = 0.0;   // phase: dominance-graph build
    double greedy_ms = 0.0;  // phase: covering (plus level search in reuse mode)
    int max_neighborhood = 0;
    int max_dom = 0;
    std::size_t lp_solves = 0;
    std::size_t lp_failures = 0;
    std::size_t edges = 0;

    std::string to_json() const;
};

// One-shot heuristic at level eps.
HgrmrResult hgrmr(const Dataset& ds, const std::vector<int>& xrows,
                  const IpdgGraph& ipdg, double eps, const HgrmrOptions& opt = {});

// Build the graph once at the looser level eta (> eps), then binary-search
// the largest filter level delta in [eps, eta] whose greedy result still has
// verified regret <= eps.  Falls back to delta = eps, which is always valid.
HgrmrResult hgrmr_reuse(const Dataset& ds, const std::vector<int>& xrows,
                        const IpdgGraph& ipdg, double eps, double eta = -1.0,
                        const HgrmrOptions& opt = {});

struct DualResult {
    bool ok = false;       // false when no level within the search cap fits
    double epsilon = 0.0;  // smallest level found whose result fits the budget
    std::vector<int> rows; // dataset rows of that result
    std::string method;
    double wall_ms = 0.0;
};

// Smallest regret level whose result has at most r points.  Uses the exact
// 2D solver's monotone size curve when d == 2, the dominance graph (built
// once at a 0.99 cap, then filtered) otherwise.  r below d + 1 is rejected:
// no smaller set can have bounded regret.
DualResult dual_min_regret(const Dataset& ds, const std::vector<int>& xrows,
                           const IpdgGraph& ipdg, int r,
                           const HgrmrOptions& opt = {});

// Text form: one JSON header line, then one "i j weight" line per edge.
void save_dom_graph(const std::string& path, const DomGraph& g);
DomGraph load_dom_graph(const std::string& path);

}  // namespace grmr
