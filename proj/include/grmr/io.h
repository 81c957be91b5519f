// Dataset files and synthetic data: CSV reading with column selection, CSV
// writing with embedded run configuration, and the two reference generators
// (independent standard normal, and uniform on [-1, 1]), both min-max
// normalized per column so scores are comparable across datasets.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grmr/core.h"

namespace grmr {

// Everything needed to reproduce a run; embedded in every output.
struct RunConfig {
    std::string command;
    std::string input;         // dataset file; empty when generated in-process
    std::string distribution;  // "normal" | "uniform" | empty for file input
    int n = 0;
    int d = 0;
    std::uint64_t seed = 42;
    std::vector<double> eps_list;
    int r = 0;  // dual-mode size budget; 0 when not in dual mode
    long long ipdg_m = 1000000;
    int ipdg_k = 16;
    double eta_multiplier = 3.0;
    long long eval_samples = 1000000;
    std::string method;  // auto | egrmr | hgrmr | reuse | dual
    std::string output;
    int threads = 0;  // 0 = environment default

    std::string to_json() const;
};

// Independent N(0,1) coordinates, then per-column min-max normalization
// onto [-1, 1].  Deterministic per seed.
Dataset generate_normal(int n, int d, std::uint64_t seed);

// Independent U(-1,1) coordinates, same normalization.
Dataset generate_uniform(int n, int d, std::uint64_t seed);

// Writes "# <line>" for each comment line, a "x0,x1,..." header row, then
// one row per point with full double precision.
void write_csv(const std::string& path, const Dataset& ds,
               const std::vector<std::string>& comments = {});

// Reads a CSV into a dataset.  '#' lines and blank lines are skipped.
// `columns` selects columns by header name or 0-based index (either works
// when a header is present; only indices without one); empty means all.
// Ragged rows, unknown columns, and non-numeric or non-finite cells are
// rejected with the line and column in the message.
Dataset read_csv(const std::string& path, const std::vector<std::string>& columns = {},
                 bool header = true);

}  // namespace grmr
