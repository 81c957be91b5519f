// Extreme-point computation: the subset of rows that can win some linear
// scoring. Exact 2D path via the convex hull; general-dimension path via one
// small feasibility LP per point with a sampled-direction prefilter. Also
// reads/writes precomputed extreme index files with a spot-check on load.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grmr/core.h"

namespace grmr {

// Rows whose points are vertices of the convex hull, counter-clockwise
// starting from the smallest polar angle. Collinear boundary points are
// excluded; duplicate coordinates keep the lowest row index.
std::vector<int> extreme_points_2d(const Dataset& ds);

// General-dimension extreme rows in ascending row order. A row is extreme
// when its point is not a convex combination of the other (distinct) points;
// the test is one feasibility LP per point, skipped for points that already
// won one of the sampled prefilter directions.
std::vector<int> extreme_points_hd(const Dataset& ds, std::uint64_t seed = 42);

// Writes one 0-based row index per line.
void save_extremes(const std::string& path, const std::vector<int>& rows);

// Reads an extreme-index file ('#' comments and blank lines ignored),
// validates indices against the dataset, and spot-checks `spot_checks`
// random directions: each direction's top-scoring point must already be
// represented in the set (up to score ties). Errors name the failure.
std::vector<int> load_extremes(const std::string& path, const Dataset& ds,
                               int spot_checks = 10, std::uint64_t seed = 42);

}  // namespace grmr
