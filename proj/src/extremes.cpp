// Extreme-point detection and extreme-index file handling.
#include "grmr/extremes.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "grmr/lp.h"
#include "grmr/rng.h"

namespace grmr {

std::vector<int> extreme_points_2d(const Dataset& ds) {
    if (ds.d != 2) throw ConfigError("extreme_points_2d: dataset is not 2-dimensional");
    return detail::hull_2d(ds);
}

namespace {

// True when point `p` lies in the convex hull of the rows in `pool`
// (coordinates within LP tolerance). A numerically failed solve counts as
// "not inside", which errs towards keeping the row extreme.
bool in_hull_of(const Dataset& ds, std::span<const double> p, const std::vector<int>& pool) {
    if (pool.empty()) return false;
    lp::Problem lp;
    lp.nvars = static_cast<int>(pool.size());
    lp.c.assign(lp.nvars, 0.0);
    lp.nonneg.assign(lp.nvars, 1);
    for (int k = 0; k < ds.d; ++k) {
        std::vector<double> a(lp.nvars);
        for (int q = 0; q < lp.nvars; ++q) a[q] = ds.at(pool[q], k);
        lp.add_row(std::move(a), lp::Rel::EQ, p[k]);
    }
    lp.add_row(std::vector<double>(lp.nvars, 1.0), lp::Rel::EQ, 1.0);
    return lp::solve(lp).status == lp::Status::Optimal;
}

}  // namespace

std::vector<int> extreme_points_hd(const Dataset& ds, std::uint64_t seed) {
    if (ds.d < 2) throw ConfigError("extreme_points_hd: dataset dimension must be >= 2");
    if (ds.n == 0) return {};
    if (ds.d == 2) {
        std::vector<int> rows = extreme_points_2d(ds);
        std::sort(rows.begin(), rows.end());
        return rows;
    }

    // Collapse duplicate coordinates onto the lowest row index.
    std::vector<int> uniq;
    {
        std::vector<int> idx(ds.n);
        for (int i = 0; i < ds.n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            for (int k = 0; k < ds.d; ++k) {
                if (ds.at(a, k) != ds.at(b, k)) return ds.at(a, k) < ds.at(b, k);
            }
            return a < b;
        });
        for (std::size_t t = 0; t < idx.size(); ++t) {
            if (t > 0) {
                bool same = true;
                for (int k = 0; k < ds.d; ++k)
                    if (ds.at(idx[t], k) != ds.at(idx[t - 1], k)) {
                        same = false;
                        break;
                    }
                if (same) continue;
            }
            uniq.push_back(idx[t]);
        }
    }

    // Prefilter: any point that wins a sampled direction is certainly
    // extreme and skips its LP. More samples than points keeps the LP count
    // low at negligible cost.
    std::vector<char> known_extreme(ds.n, 0);
    {
        const int m = std::max(256, 2 * static_cast<int>(uniq.size()));
        std::vector<double> x(ds.d);
        for (int s = 0; s < m; ++s) {
            rng::unit_direction(seed, static_cast<std::uint64_t>(s), ds.d, x.data());
            ScoredTop best;
            for (int r : uniq) {
                const double v = dot(ds.row(r), x);
                if (best.index < 0 || v > best.value ||
                    (v == best.value && r < best.index)) {
                    best.value = v;
                    best.index = r;
                }
            }
            if (best.index >= 0) known_extreme[best.index] = 1;
        }
    }

    std::vector<int> out;
    std::vector<int> pool;
    pool.reserve(uniq.size());
    for (int r : uniq) {
        if (known_extreme[r]) {
            out.push_back(r);
            continue;
        }
        pool.clear();
        for (int q : uniq)
            if (q != r) pool.push_back(q);
        if (!in_hull_of(ds, ds.row(r), pool)) out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void save_extremes(const std::string& path, const std::vector<int>& rows) {
    std::ofstream f(path);
    if (!f) throw ConfigError("save_extremes: cannot open '" + path + "' for writing");
    for (int r : rows) f << r << '\n';
    if (!f) throw ConfigError("save_extremes: write to '" + path + "' failed");
}

std::vector<int> load_extremes(const std::string& path, const Dataset& ds, int spot_checks,
                               std::uint64_t seed) {
    std::ifstream f(path);
    if (!f) throw ConfigError("load_extremes: cannot open '" + path + "'");
    std::vector<int> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ss(line);
        long long v = 0;
        if (!(ss >> v) || v < 0 || v >= ds.n) {
            std::ostringstream msg;
            msg << "load_extremes: '" << path << "' line " << lineno
                << ": expected a row index in [0, " << ds.n << "), got '" << line << "'";
            throw ConfigError(msg.str());
        }
        rows.push_back(static_cast<int>(v));
    }
    if (rows.empty())
        throw ConfigError("load_extremes: '" + path + "' contains no indices");

    // Spot-check: sampled directions must not expose a missing winner. Ties
    // in score are tolerated so collinear or duplicate rows do not alarm.
    std::vector<double> x(ds.d);
    for (int s = 0; s < spot_checks; ++s) {
        rng::unit_direction(seed, static_cast<std::uint64_t>(s), ds.d, x.data());
        const ScoredTop all = top_score(ds, x);
        const ScoredTop listed = top_score(ds, rows, x);
        if (all.value > listed.value + 1e-9) {
            std::ostringstream msg;
            msg << "load_extremes: '" << path << "' fails spot-check: direction (";
            for (int k = 0; k < ds.d; ++k) msg << (k ? ", " : "") << x[k];
            msg << ") scores " << all.value << " at row " << all.index
                << " but only " << listed.value << " within the listed set";
            throw ConfigError(msg.str());
        }
    }
    return rows;
}

}  // namespace grmr
