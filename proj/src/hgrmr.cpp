#include "grmr/hgrmr.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <deque>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "grmr/egrmr.h"
#include "grmr/lp.h"
#include "grmr/parallel.h"
#include "grmr/regret.h"

namespace grmr {

namespace {

constexpr double kEdgeTol = 1e-9;  // slack on threshold comparisons
constexpr double kDualCap = 0.99;  // search ceiling for reuse/dual levels

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

// Interior-origin test restricted to the extreme rows (the hull of the
// extremes is the hull of the dataset, so nothing is lost and the check
// stays cheap for large inputs).
void require_interior_on(const Dataset& ds, const std::vector<int>& xrows,
                         const HgrmrOptions& opt) {
    Dataset sub(static_cast<int>(xrows.size()), ds.d);
    for (std::size_t p = 0; p < xrows.size(); ++p)
        for (int c = 0; c < ds.d; ++c) sub.at(static_cast<int>(p), c) = ds.at(xrows[p], c);
    const auto rep = check_interior_origin(sub, opt.interior_samples, opt.interior_seed);
    if (!rep.ok) {
        std::ostringstream msg;
        msg << "hgrmr: the origin is not strictly inside the hull (top score "
            << rep.worst_support << " along";
        for (double v : rep.worst_dir) msg << " " << v;
        msg << "; " << rep.method << " check); recenter or normalize the data";
        throw ConditionError(msg.str());
    }
}

}  // namespace

DomWeight dominance_weight(const Dataset& ds, const std::vector<int>& xrows, int i,
                           int j, const std::vector<int>& nbrs) {
    if (i == j) throw ConfigError("dominance_weight: positions must differ");
    const int d = ds.d;
    const auto ti = ds.row(xrows[i]);
    const auto tj = ds.row(xrows[j]);

    // The slice program — maximize -<t_i, x> over {(t_j - t) x >= 0 for the
    // neighbors t, <t_j, x> = 1} — has one zero right-hand side per neighbor,
    // which makes the simplex grind through degenerate pivots. Its dual has
    // only d nondegenerate equation rows, so solve that instead:
    //   minimize v  s.t.  sum_t u_t (t - t_j) + v t_j = -t_i,  u >= 0, v free.
    std::vector<int> active;
    for (int nb : nbrs)
        if (nb != j) active.push_back(nb);

    lp::Problem p;
    p.nvars = static_cast<int>(active.size()) + 1;
    p.c.assign(p.nvars, 0.0);
    p.c[p.nvars - 1] = 1.0;  // v
    p.nonneg.assign(p.nvars, 1);
    p.nonneg[p.nvars - 1] = 0;  // v is free
    for (int k = 0; k < d; ++k) {
        std::vector<double> a(p.nvars, 0.0);
        for (std::size_t t = 0; t < active.size(); ++t)
            a[t] = ds.at(xrows[active[t]], k) - tj[k];
        a[p.nvars - 1] = tj[k];
        p.add_row(std::move(a), lp::Rel::EQ, -ti[k]);
    }

    const auto sol = lp::solve(p);
    DomWeight w;
    switch (sol.status) {
        case lp::Status::Optimal:
            w.kind = DomWeight::kValue;
            w.value = 1.0 + sol.objective;
            return w;
        case lp::Status::Unbounded:
            // Unbounded dual: the slice is empty.
            w.kind = DomWeight::kEmptyCell;
            return w;
        case lp::Status::Infeasible:
            break;  // slice empty or slice unbounded; probe below decides
        default:
            w.kind = DomWeight::kFailed;
            return w;
    }

    // Feasibility probe of the slice itself.
    lp::Problem probe;
    probe.nvars = d;
    probe.c.assign(d, 0.0);
    probe.nonneg.assign(d, 0);
    for (int nb : active) {
        std::vector<double> a(d);
        for (int c = 0; c < d; ++c) a[c] = tj[c] - ds.at(xrows[nb], c);
        probe.add_row(std::move(a), lp::Rel::GE, 0.0);
    }
    probe.add_row(std::vector<double>(tj.begin(), tj.end()), lp::Rel::EQ, 1.0);
    switch (lp::solve(probe).status) {
        case lp::Status::Optimal:
            w.kind = DomWeight::kUnbounded;  // nonempty slice, unbounded regret
            return w;
        case lp::Status::Infeasible:
            w.kind = DomWeight::kEmptyCell;
            return w;
        default:
            w.kind = DomWeight::kFailed;
            return w;
    }
}

std::size_t DomGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& o : out) n += o.size();
    return n;
}

double DomGraph::max_edge_weight() const {
    double w = 0.0;
    for (const auto& o : out)
        for (const auto& [to, wt] : o) w = std::max(w, wt);
    return w;
}

std::string DomGraph::to_json() const {
    nlohmann::json j;
    j["vertices"] = nv;
    j["edges"] = edge_count();
    j["threshold"] = threshold;
    j["delta_max"] = max_edge_weight();
    j["stats"] = {{"Delta", max_neighborhood},
                  {"Gamma", max_dom},
                  {"lp_failures", lp_failures}};
    return j.dump();
}

DomGraph DomGraph::filtered(double delta) const {
    DomGraph g;
    g.nv = nv;
    g.threshold = delta;
    g.max_neighborhood = max_neighborhood;
    g.lp_solves = lp_solves;
    g.empty_cells = empty_cells;
    g.lp_failures = lp_failures;
    g.out.resize(nv);
    std::size_t biggest = 0;
    for (int i = 0; i < nv; ++i) {
        for (const auto& [to, wt] : out[i])
            if (wt <= delta + kEdgeTol) g.out[i].push_back({to, wt});
        biggest = std::max(biggest, g.out[i].size());
    }
    g.max_dom = static_cast<int>(biggest) + 1;
    return g;
}

DomGraph build_dom_graph(const Dataset& ds, const std::vector<int>& xrows,
                         const IpdgGraph& ipdg, double eps) {
    const int nv = static_cast<int>(xrows.size());
    if (ipdg.nv != nv)
        throw ConfigError("build_dom_graph: adjacency graph has " +
                          std::to_string(ipdg.nv) + " vertices for " +
                          std::to_string(nv) + " extremes");
    if (!(eps > 0.0))
        throw ConfigError("build_dom_graph: threshold must be positive");

    DomGraph g;
    g.nv = nv;
    g.threshold = eps;
    g.out.resize(nv);
    for (const auto& a : ipdg.adj)
        g.max_neighborhood = std::max(g.max_neighborhood, static_cast<int>(a.size()));

    std::atomic<std::size_t> solves{0};
    std::atomic<std::size_t> empties{0};
    std::atomic<std::size_t> failures{0};

    // Sources are independent: each explores outward from its own start and
    // writes only its own out-list.
    parallel_for(nv, [&](std::int64_t src) {
        const int i = static_cast<int>(src);
        std::vector<char> visited(nv, 0);
        visited[i] = 1;
        std::deque<int> queue(ipdg.adj[i].begin(), ipdg.adj[i].end());
        while (!queue.empty()) {
            const int j = queue.front();
            queue.pop_front();
            if (visited[j]) continue;
            visited[j] = 1;
            const auto w = dominance_weight(ds, xrows, i, j, ipdg.adj[j]);
            solves.fetch_add(1, std::memory_order_relaxed);
            if (w.kind == DomWeight::kEmptyCell) {
                empties.fetch_add(1, std::memory_order_relaxed);
                continue;
            }
            if (w.kind == DomWeight::kFailed) {
                failures.fetch_add(1, std::memory_order_relaxed);
                continue;
            }
            if (w.kind == DomWeight::kValue && w.value <= eps + kEdgeTol) {
                g.out[i].push_back({j, w.value});
                for (int nb : ipdg.adj[j]) queue.push_back(nb);
            }
        }
        std::sort(g.out[i].begin(), g.out[i].end());
    });

    g.lp_solves = solves.load();
    g.empty_cells = empties.load();
    g.lp_failures = failures.load();
    if (g.empty_cells > 0)
        std::cerr << "hgrmr: warning: " << g.empty_cells
                  << " dominance cell(s) vanished numerically; the affected pairs "
                     "were skipped\n";
    if (g.lp_failures > 0)
        std::cerr << "hgrmr: warning: " << g.lp_failures
                  << " dominance solve(s) failed numerically; the affected pairs "
                     "kept no edge\n";
    std::size_t biggest = 0;
    for (const auto& o : g.out) biggest = std::max(biggest, o.size());
    g.max_dom = static_cast<int>(biggest) + 1;
    return g;
}

GreedyResult greedy_dominating_set(const DomGraph& dg) {
    const int nv = dg.nv;
    std::vector<std::vector<int>> dom(nv);
    for (int i = 0; i < nv; ++i) {
        dom[i].reserve(dg.out[i].size() + 1);
        dom[i].push_back(i);
        for (const auto& [to, wt] : dg.out[i]) dom[i].push_back(to);
    }
    std::vector<char> uncovered(nv, 1);
    std::vector<char> picked(nv, 0);
    int remaining = nv;

    GreedyResult res;
    while (remaining > 0) {
        int best = -1;
        int best_gain = 0;
        for (int i = 0; i < nv; ++i) {
            if (picked[i]) continue;
            int gain = 0;
            for (int v : dom[i]) gain += uncovered[v];
            if (gain > best_gain) {
                best = i;
                best_gain = gain;
            }
        }
        // Every uncovered vertex still dominates itself, so a positive gain
        // always exists while anything remains.
        if (best < 0) throw std::runtime_error("greedy_dominating_set: no progress");
        res.picks.push_back(best);
        picked[best] = 1;
        for (int v : dom[best])
            if (uncovered[v]) {
                uncovered[v] = 0;
                --remaining;
            }
    }
    res.covered = static_cast<std::size_t>(nv);
    return res;
}

std::string HgrmrResult::to_json() const {
    nlohmann::json j;
    j["epsilon"] = epsilon;
    j["delta"] = delta;
    j["size"] = rows.size();
    j["indices"] = rows;
    j["pick_order"] = pick_order;
    if (exact_regret >= 0.0)
        j["exact_max_regret"] = exact_regret;
    else
        j["exact_max_regret"] = nullptr;
    j["wall_time_ms"] = wall_ms;
    j["phase_ms"] = {{"graph", graph_ms}, {"greedy", greedy_ms}};
    j["stats"] = {{"max_neighborhood", max_neighborhood},
                  {"max_dom", max_dom},
                  {"lp_solves", lp_solves},
                  {"lp_failures", lp_failures},
                  {"edges", edges}};
    return j.dump();
}

namespace {

HgrmrResult finish_result(const std::vector<int>& xrows, const DomGraph& g,
                          const GreedyResult& picks, double eps, double delta,
                          clock_type::time_point t0) {
    HgrmrResult r;
    r.epsilon = eps;
    r.delta = delta;
    r.pick_order = picks.picks;
    r.rows.reserve(picks.picks.size());
    for (int p : picks.picks) r.rows.push_back(xrows[p]);
    std::sort(r.rows.begin(), r.rows.end());
    r.max_neighborhood = g.max_neighborhood;
    r.max_dom = g.max_dom;
    r.lp_solves = g.lp_solves;
    r.lp_failures = g.lp_failures;
    r.edges = g.edge_count();
    r.wall_ms = ms_since(t0);
    return r;
}

}  // namespace

HgrmrResult hgrmr(const Dataset& ds, const std::vector<int>& xrows,
                  const IpdgGraph& ipdg, double eps, const HgrmrOptions& opt) {
    if (!(eps > 0.0 && eps < 1.0))
        throw ConfigError("hgrmr: regret budget must lie strictly between 0 and 1");
    const auto t0 = clock_type::now();
    if (opt.check_interior) require_interior_on(ds, xrows, opt);
    const auto tg = clock_type::now();
    const DomGraph g = build_dom_graph(ds, xrows, ipdg, eps);
    const auto th = clock_type::now();
    const GreedyResult picks = greedy_dominating_set(g);
    HgrmrResult r = finish_result(xrows, g, picks, eps, eps, t0);
    r.graph_ms = std::chrono::duration<double, std::milli>(th - tg).count();
    r.greedy_ms = std::chrono::duration<double, std::milli>(clock_type::now() - th)
                      .count();
    return r;
}

HgrmrResult hgrmr_reuse(const Dataset& ds, const std::vector<int>& xrows,
                        const IpdgGraph& ipdg, double eps, double eta,
                        const HgrmrOptions& opt) {
    if (!(eps > 0.0 && eps < 1.0))
        throw ConfigError("hgrmr_reuse: regret budget must lie strictly between 0 and 1");
    if (eta < 0.0) eta = std::min(3.0 * eps, kDualCap);
    if (eta < eps)
        throw ConfigError("hgrmr_reuse: graph level must not be below the budget");
    const auto t0 = clock_type::now();
    if (opt.check_interior) require_interior_on(ds, xrows, opt);

    const auto tg = clock_type::now();
    const DomGraph full = build_dom_graph(ds, xrows, ipdg, eta);
    const auto th = clock_type::now();

    // Baseline at the budget itself: always a valid fallback.
    GreedyResult best = greedy_dominating_set(full.filtered(eps));
    double best_delta = eps;
    double best_exact = -1.0;

    double lo = eps, hi = eta;
    for (int iter = 0; iter < 20 && hi - lo >= eps / 100.0; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const GreedyResult cand = greedy_dominating_set(full.filtered(mid));
        if (cand.picks == best.picks) {
            // Same selection as the current best: already known valid.
            lo = mid;
            best_delta = mid;
            continue;
        }
        std::vector<int> rows;
        rows.reserve(cand.picks.size());
        for (int p : cand.picks) rows.push_back(xrows[p]);
        std::sort(rows.begin(), rows.end());
        const auto rep = exact_max_regret(ds, rows, xrows);
        if (!rep.unbounded && rep.value <= eps + kEdgeTol) {
            lo = mid;
            best = cand;
            best_delta = mid;
            best_exact = rep.value;
        } else {
            hi = mid;
        }
    }

    HgrmrResult r = finish_result(xrows, full, best, eps, best_delta, t0);
    if (best_exact < 0.0) {
        const auto rep = exact_max_regret(ds, r.rows, xrows);
        best_exact = rep.unbounded ? -1.0 : rep.value;
    }
    r.exact_regret = best_exact;
    r.graph_ms = std::chrono::duration<double, std::milli>(th - tg).count();
    r.greedy_ms = std::chrono::duration<double, std::milli>(clock_type::now() - th)
                      .count();
    r.wall_ms = ms_since(t0);
    return r;
}

DualResult dual_min_regret(const Dataset& ds, const std::vector<int>& xrows,
                           const IpdgGraph& ipdg, int r, const HgrmrOptions& opt) {
    if (r < ds.d + 1)
        throw ConfigError("dual_min_regret: size budget " + std::to_string(r) +
                          " is below d + 1 = " + std::to_string(ds.d + 1) +
                          "; no smaller set has bounded regret");
    const auto t0 = clock_type::now();
    if (opt.check_interior) require_interior_on(ds, xrows, opt);

    DualResult out;
    if (ds.d == 2) {
        // The exact solver's size is monotone in the budget; search it.
        out.method = "egrmr-dual";
        const double lo_cap = 1e-6;
        auto size_at = [&](double e) { return egrmr(ds, e); };
        Egrmr2dResult hi_res = size_at(kDualCap);
        if (static_cast<int>(hi_res.rows.size()) > r) {
            out.ok = false;
            out.wall_ms = ms_since(t0);
            return out;
        }
        double lo = lo_cap, hi = kDualCap;
        Egrmr2dResult best = std::move(hi_res);
        for (int iter = 0; iter < 20; ++iter) {
            const double mid = 0.5 * (lo + hi);
            Egrmr2dResult cand = size_at(mid);
            if (static_cast<int>(cand.rows.size()) <= r) {
                hi = mid;
                best = std::move(cand);
            } else {
                lo = mid;
            }
        }
        out.ok = true;
        out.epsilon = hi;
        out.rows = best.rows;
        std::sort(out.rows.begin(), out.rows.end());
        out.wall_ms = ms_since(t0);
        return out;
    }

    out.method = "domgraph-dual";
    const DomGraph full = build_dom_graph(ds, xrows, ipdg, kDualCap);
    auto rows_of = [&](const GreedyResult& gsel) {
        std::vector<int> rows;
        rows.reserve(gsel.picks.size());
        for (int p : gsel.picks) rows.push_back(xrows[p]);
        std::sort(rows.begin(), rows.end());
        return rows;
    };
    GreedyResult cap_sel = greedy_dominating_set(full);
    if (static_cast<int>(cap_sel.picks.size()) > r) {
        out.ok = false;
        out.wall_ms = ms_since(t0);
        return out;
    }
    double lo = 0.0, hi = kDualCap;
    GreedyResult best = std::move(cap_sel);
    for (int iter = 0; iter < 20; ++iter) {
        const double mid = 0.5 * (lo + hi);
        GreedyResult cand = greedy_dominating_set(full.filtered(mid));
        if (static_cast<int>(cand.picks.size()) <= r) {
            hi = mid;
            best = std::move(cand);
        } else {
            lo = mid;
        }
    }
    out.ok = true;
    out.epsilon = hi;
    out.rows = rows_of(best);
    out.wall_ms = ms_since(t0);
    return out;
}

void save_dom_graph(const std::string& path, const DomGraph& g) {
    std::ofstream outf(path);
    if (!outf) throw ConfigError("save_dom_graph: cannot open '" + path + "' for writing");
    outf << g.to_json() << "\n";
    outf.precision(17);
    for (int i = 0; i < g.nv; ++i)
        for (const auto& [to, wt] : g.out[i]) outf << i << " " << to << " " << wt << "\n";
    if (!outf) throw ConfigError("save_dom_graph: write to '" + path + "' failed");
}

DomGraph load_dom_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("load_dom_graph: cannot open '" + path + "'");
    DomGraph g;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (!have_header) {
            nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.contains("vertices"))
                throw ConfigError("load_dom_graph: '" + path + "' line " +
                                  std::to_string(lineno) + ": malformed JSON header");
            g.nv = j["vertices"].get<int>();
            if (g.nv < 0)
                throw ConfigError("load_dom_graph: '" + path +
                                  "': negative vertex count");
            g.threshold = j.value("threshold", 0.0);
            if (j.contains("stats"))
                g.max_neighborhood = j["stats"].value("Delta", 0);
            g.out.resize(g.nv);
            have_header = true;
            continue;
        }
        std::istringstream row(line);
        int a = 0, b = 0;
        double w = 0.0;
        if (!(row >> a >> b >> w) || a < 0 || b < 0 || a >= g.nv || b >= g.nv ||
            a == b || !std::isfinite(w))
            throw ConfigError("load_dom_graph: '" + path + "' line " +
                              std::to_string(lineno) +
                              ": expected 'i j weight' with distinct vertices in [0, " +
                              std::to_string(g.nv) + ")");
        g.out[a].push_back({b, w});
    }
    if (!have_header)
        throw ConfigError("load_dom_graph: '" + path + "' has no header line");
    std::size_t biggest = 0;
    for (auto& o : g.out) {
        std::sort(o.begin(), o.end());
        biggest = std::max(biggest, o.size());
    }
    g.max_dom = static_cast<int>(biggest) + 1;
    return g;
}

}  // namespace grmr
