// Adjacency graph over the extreme points: two extremes are linked when their
// top-score regions on the direction sphere share a boundary.  In 2D those
// regions are consecutive angular sectors, so the graph is exactly the cycle
// over the hull order.  In higher dimension we approximate it by sampling
// directions and linking each sample's winner to the runners-up.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grmr/core.h"

namespace grmr {

struct IpdgGraph {
    int nv = 0;                         // vertex count = |X| positions
    std::vector<std::vector<int>> adj;  // undirected, sorted ascending, no self-loops
    bool exact = false;
    long long m = 0;         // sampled directions (approximate graphs)
    int k = 0;               // per-sample neighborhood size (approximate graphs)
    std::uint64_t seed = 0;  // sampling seed (approximate graphs)

    std::size_t edge_count() const;
    std::string to_json() const;  // header object: vertices/exact/m/k/seed
};

// Cycle over the hull positions 0..h-1 of a CCW-ordered 2D extreme set.
// Throws ConfigError when fewer than 3 vertices are supplied.
IpdgGraph ipdg_exact_2d(const std::vector<int>& hull);

// Sampling-based construction for any dimension: draw m unit directions,
// rank the extreme rows `xrows` of `ds` by score under each (ties to the
// smallest position), and link the winner to the other top-k positions.
// m = 0 yields the empty edge set.  Requires 2 <= k <= |X|.  Deterministic
// for a given seed, and samples are a prefix sequence: growing m only adds
// edges.
IpdgGraph ipdg_approx(const Dataset& ds, const std::vector<int>& xrows, long long m,
                      int k, std::uint64_t seed);

// Text form: one JSON header line, then one "i j" pair per edge.
void save_ipdg(const std::string& path, const IpdgGraph& g);
IpdgGraph load_ipdg(const std::string& path);

}  // namespace grmr
