// Exact 2D solver implementation.
#include "grmr/egrmr.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "grmr/regret.h"

namespace grmr {

namespace {
constexpr double kEdgeTol = 1e-9;   // slack on threshold comparisons
constexpr double kSpanTol = 1e-12;  // slack on arc membership
}  // namespace

std::vector<double> tie_vector_2d(std::span<const double> a, std::span<const double> b) {
    const double cx = a[0] - b[0], cy = a[1] - b[1];
    const double len = std::sqrt(cx * cx + cy * cy);
    if (len <= 0.0)
        throw ConfigError("tie_vector_2d: points coincide; the tie direction is undefined");
    std::vector<double> x = {-cy / len, cx / len};
    if (a[0] * x[0] + a[1] * x[1] < 0.0) {
        x[0] = -x[0];
        x[1] = -x[1];
    }
    return x;
}

std::vector<std::vector<double>> boundary_vectors(const Dataset& ds,
                                                  const std::vector<int>& hull) {
    const int h = static_cast<int>(hull.size());
    std::vector<std::vector<double>> bv;
    bv.reserve(h);
    for (int i = 0; i < h; ++i) {
        const auto a = ds.row(hull[i]);
        const auto b = ds.row(hull[(i + 1) % h]);
        // Outward normal of the hull edge a -> b; both endpoints score the
        // same along it, so it is the tie direction of the pair.  Its signed
        // support is the distance of the edge line from the origin, which
        // must be positive on every edge for the origin to be strictly
        // interior.  (Computing the tie via tie_vector_2d would flip the
        // sign on a violated edge and mask the problem.)
        const double ex = b[0] - a[0];
        const double ey = b[1] - a[1];
        const double len = std::hypot(ex, ey);
        if (len <= 0.0)
            throw ConfigError("boundary_vectors: coincident consecutive extremes");
        std::vector<double> x = {ey / len, -ex / len};
        const double support = a[0] * x[0] + a[1] * x[1];
        if (support <= 1e-12) {
            std::ostringstream msg;
            msg << "boundary_vectors: support along tie direction (" << x[0] << ", "
                << x[1] << ") of extreme rows " << hull[i] << " and " << hull[(i + 1) % h]
                << " is " << support
                << "; the origin is not strictly inside the hull (recenter or normalize "
                   "the data)";
            throw ConditionError(msg.str());
        }
        bv.push_back(std::move(x));
    }
    return bv;
}

CandidateSet select_candidates(const Dataset& ds, double eps, bool banded_scan) {
    if (ds.d != 2) throw ConfigError("select_candidates: dataset is not 2-dimensional");
    CandidateSet out;
    out.hull = detail::hull_2d(ds);
    if (out.hull.size() < 3)
        throw ConditionError(
            "select_candidates: fewer than 3 extreme points; the origin cannot be "
            "strictly inside the hull");
    out.boundary = boundary_vectors(ds, out.hull);
    const int h = static_cast<int>(out.hull.size());

    std::vector<char> in_hull(ds.n, 0);
    for (int r : out.hull) in_hull[r] = 1;

    // Support of the owning extreme under each boundary vector (shared by
    // both extremes of the pair).
    std::vector<double> own(h);
    for (int i = 0; i < h; ++i) own[i] = dot(ds.row(out.hull[i]), out.boundary[i]);

    // For the banded scan: boundary vectors sorted by angle, so each point
    // can restrict to those within a quarter turn (elsewhere its score is
    // nonpositive and cannot reach a positive threshold).
    std::vector<std::pair<double, int>> bv_by_angle;
    if (banded_scan) {
        bv_by_angle.reserve(h);
        for (int i = 0; i < h; ++i)
            bv_by_angle.push_back({angle_of(out.boundary[i][0], out.boundary[i][1]), i});
        std::sort(bv_by_angle.begin(), bv_by_angle.end());
    }

    const double threshold = 1.0 - eps - kEdgeTol;
    // Check one sorted sub-range of boundary vectors against a point.
    const auto scan_band = [&](std::span<const double> pt, double from, double to) {
        const auto cmp = [](const std::pair<double, int>& e, double v) {
            return e.first < v;
        };
        auto it = std::lower_bound(bv_by_angle.begin(), bv_by_angle.end(),
                                   from - kSpanTol, cmp);
        for (; it != bv_by_angle.end() && it->first <= to + kSpanTol; ++it)
            if (dot(pt, out.boundary[it->second]) / own[it->second] >= threshold)
                return true;
        return false;
    };
    out.rows = out.hull;
    for (int p = 0; p < ds.n; ++p) {
        if (in_hull[p]) continue;
        const auto pt = ds.row(p);
        bool take = false;
        if (!banded_scan) {
            for (int i = 0; i < h && !take; ++i)
                take = dot(pt, out.boundary[i]) / own[i] >= threshold;
        } else {
            // Only boundary vectors within a quarter turn of the point's own
            // angle can give it a positive score; the band may wrap.
            const double a = angle_of(pt);
            double lo = a - kPi / 2, hi = a + kPi / 2;
            if (lo < 0.0) {
                take = scan_band(pt, lo + kTwoPi, kTwoPi) || scan_band(pt, 0.0, hi);
            } else if (hi > kTwoPi) {
                take = scan_band(pt, lo, kTwoPi) || scan_band(pt, 0.0, hi - kTwoPi);
            } else {
                take = scan_band(pt, lo, hi);
            }
        }
        if (take) out.rows.push_back(p);
    }

    // Counter-clockwise arrangement; identical angles order by decreasing
    // norm then row, so a dominated duplicate direction sits after its
    // dominating point.
    std::sort(out.rows.begin(), out.rows.end(), [&](int x, int y) {
        const double ax = angle_of(ds.row(x)), ay = angle_of(ds.row(y));
        if (ax != ay) return ax < ay;
        const double nx = norm(ds.row(x)), ny = norm(ds.row(y));
        if (nx != ny) return nx > ny;
        return x < y;
    });
    return out;
}

PairRegret compute_pair_regret(const Dataset& ds, const std::vector<int>& hull,
                               int row_i, int row_j) {
    PairRegret out;
    const auto si = ds.row(row_i);
    out.tie = tie_vector_2d(si, ds.row(row_j));
    const double lo = angle_of(si);
    const double span = ccw_span(lo, angle_of(ds.row(row_j)));
    const double si_score = dot(si, out.tie);
    bool have = false;
    double best = 0.0;
    for (int tr : hull) {
        if (tr == row_i || tr == row_j) continue;
        if (ccw_span(lo, angle_of(ds.row(tr))) > span + kSpanTol) continue;
        const double v = 1.0 - si_score / dot(ds.row(tr), out.tie);
        if (!have || v > best) best = v;
        have = true;
    }
    out.value = have ? best : 0.0;
    return out;
}

ArcGraph build_arc_graph(const Dataset& ds, const CandidateSet& cand, double eps) {
    const int n = static_cast<int>(cand.rows.size());
    ArcGraph g;
    g.adj.assign(n, {});
    std::vector<double> ang(n);
    for (int u = 0; u < n; ++u) ang[u] = angle_of(ds.row(cand.rows[u]));
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            const double span = ccw_span(ang[u], ang[v]);
            if (span >= kPi - kSpanTol) continue;
            const PairRegret pr =
                compute_pair_regret(ds, cand.hull, cand.rows[u], cand.rows[v]);
            if (pr.value <= eps + kEdgeTol) g.adj[u].push_back(v);
        }
    }
    return g;
}

std::vector<int> shortest_cycle(const ArcGraph& g) {
    const int n = static_cast<int>(g.adj.size());
    std::vector<char> has_edge(static_cast<std::size_t>(n) * n, 0);
    for (int u = 0; u < n; ++u)
        for (int v : g.adj[u]) has_edge[static_cast<std::size_t>(u) * n + v] = 1;

    std::vector<int> best;
    std::vector<int> dist(n), parent(n);
    for (int s = 0; s < n; ++s) {
        // Any cycle found from a later start has a lexicographically larger
        // sequence at equal length, so only strictly shorter ones matter;
        // depth-limit the search accordingly.
        const int limit = best.empty() ? n : static_cast<int>(best.size()) - 1;
        if (limit < 2) break;
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        std::vector<int> frontier = {s};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int u : frontier) {
                if (dist[u] >= limit) continue;
                for (int v : g.adj[u]) {
                    if (dist[v] >= 0) continue;
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    next.push_back(v);
                }
            }
            frontier = std::move(next);
        }
        for (int u = 0; u < n; ++u) {
            if (u == s || dist[u] < 0 || !has_edge[static_cast<std::size_t>(u) * n + s])
                continue;
            std::vector<int> path(dist[u] + 1);
            for (int v = u, k = dist[u]; k >= 0; v = parent[v], --k) path[k] = v;
            if (best.empty() || path.size() < best.size() ||
                (path.size() == best.size() && path < best))
                best = std::move(path);
        }
    }
    return best;
}

std::string Egrmr2dResult::to_json() const {
    nlohmann::json j;
    j["epsilon"] = epsilon;
    j["size"] = rows.size();
    j["indices"] = rows;
    if (exact_regret >= 0.0)
        j["exact_max_regret"] = exact_regret;
    else
        j["exact_max_regret"] = nullptr;
    j["wall_time_ms"] = wall_ms;
    j["phase_ms"] = {
        {"candidates", candidate_ms}, {"graph", graph_ms}, {"cycle", cycle_ms}};
    j["candidates"] = candidates;
    return j.dump();
}

Egrmr2dResult egrmr(const Dataset& ds, double eps, const Egrmr2dOptions& opts) {
    if (!(eps > 0.0 && eps < 1.0))
        throw ConfigError("egrmr: eps must lie strictly between 0 and 1");
    if (ds.d != 2) throw ConfigError("egrmr: dataset is not 2-dimensional");
    const auto t0 = std::chrono::steady_clock::now();

    Egrmr2dResult res;
    res.epsilon = eps;

    const auto ms_between = [](auto a, auto b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };
    const CandidateSet cand = select_candidates(ds, eps, opts.banded_scan);
    const auto t1 = std::chrono::steady_clock::now();
    res.candidate_ms = ms_between(t0, t1);
    res.candidates = static_cast<int>(cand.rows.size());
    const ArcGraph g = build_arc_graph(ds, cand, eps);
    const auto t2 = std::chrono::steady_clock::now();
    res.graph_ms = ms_between(t1, t2);
    const std::vector<int> cyc = shortest_cycle(g);
    res.cycle_ms = ms_between(t2, std::chrono::steady_clock::now());
    if (cyc.empty())
        throw std::runtime_error(
            "egrmr: no cycle in the arc graph; this cannot happen when the origin is "
            "strictly interior");
    res.rows.reserve(cyc.size());
    for (int pos : cyc) res.rows.push_back(cand.rows[pos]);

    if (opts.verify) {
        const RegretReport rep = detail::exact_max_regret_2d(ds, res.rows, cand.hull);
        res.exact_regret = rep.unbounded ? -1.0 : rep.value;
    }
    res.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return res;
}

}  // namespace grmr
