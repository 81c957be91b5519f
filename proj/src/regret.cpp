// Regret evaluators. The exact evaluators decompose the direction space by
// which reference extreme holds the top score: in 2D the worst direction is
// one of the score-tie breakpoints, so a sweep over them is exact; in higher
// dimension each cell yields a small LP, solved in dual form (rows scale with
// the dimension, not the set sizes) with a cheap relaxed bound to prune cells
// that cannot hold the maximum.
#include "grmr/regret.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "grmr/lp.h"
#include "grmr/parallel.h"
#include "grmr/rng.h"

namespace grmr {

namespace {

void validate_rows(const Dataset& ds, std::span<const int> rows, const char* what) {
    if (rows.empty()) throw ConfigError(std::string(what) + ": empty row set");
    for (int r : rows)
        if (r < 0 || r >= ds.n) {
            std::ostringstream msg;
            msg << what << ": row index " << r << " outside [0, " << ds.n << ")";
            throw ConfigError(msg.str());
        }
}

[[noreturn]] void throw_nonpositive_support(std::span<const double> x, double value) {
    std::ostringstream msg;
    msg << "regret_ratio: reference support along direction (";
    for (std::size_t k = 0; k < x.size(); ++k) msg << (k ? ", " : "") << x[k];
    msg << ") is " << value << ", not strictly positive";
    throw ConditionError(msg.str());
}

double top_over(const Dataset& ds, std::span<const int> rows, std::span<const double> x) {
    double best = -std::numeric_limits<double>::infinity();
    for (int r : rows) best = std::max(best, dot(ds.row(r), x));
    return best;
}

// Copies the chosen rows into a small dataset and returns the hull as global
// row indices (CCW from the smallest polar angle).
std::vector<int> hull_of_rows(const Dataset& ds, std::span<const int> rows) {
    Dataset sub(static_cast<int>(rows.size()), ds.d);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int k = 0; k < ds.d; ++k) sub.at(static_cast<int>(i), k) = ds.at(rows[i], k);
    std::vector<int> local = detail::hull_2d(sub);
    for (int& v : local) v = rows[v];
    return local;
}

}  // namespace

double regret_ratio(const Dataset& ds, std::span<const int> q_rows,
                    std::span<const int> ref_rows, std::span<const double> x) {
    const double ref = top_over(ds, ref_rows, x);
    if (!(ref > 0.0)) throw_nonpositive_support(x, ref);
    return 1.0 - top_over(ds, q_rows, x) / ref;
}

double regret_ratio(const Dataset& ds, std::span<const int> q_rows,
                    std::span<const double> x) {
    const double ref = top_score(ds, x).value;
    if (!(ref > 0.0)) throw_nonpositive_support(x, ref);
    return 1.0 - top_over(ds, q_rows, x) / ref;
}

std::string RegretReport::to_json() const {
    nlohmann::json j;
    if (unbounded) {
        j["value"] = nullptr;
        j["witness"] = nullptr;
    } else {
        j["value"] = value;
        j["witness"] = witness;
    }
    j["unbounded"] = unbounded;
    j["method"] = method;
    if (method == "sampled") j["samples"] = samples;
    return j.dump();
}

RegretReport estimate_max_regret(const Dataset& ds, std::span<const int> q_rows,
                                 std::span<const int> ref_rows, long long m,
                                 std::uint64_t seed) {
    validate_rows(ds, q_rows, "estimate_max_regret(Q)");
    validate_rows(ds, ref_rows, "estimate_max_regret(ref)");
    if (m < 1) throw ConfigError("estimate_max_regret: sample count must be >= 1");

    // Fixed-size chunks keep the merge identical for any worker count: each
    // chunk reports its best (value, first sample index), merged in order.
    constexpr long long kChunk = 8192;
    const long long nchunks = (m + kChunk - 1) / kChunk;
    struct ChunkBest {
        double value = -std::numeric_limits<double>::infinity();
        long long index = -1;
        long long bad_index = -1;  // first sample with nonpositive support
    };
    std::vector<ChunkBest> best(static_cast<std::size_t>(nchunks));

    parallel_for(nchunks, [&](std::int64_t c) {
        std::vector<double> x(ds.d);
        ChunkBest local;
        const long long lo = c * kChunk, hi = std::min(m, lo + kChunk);
        for (long long s = lo; s < hi; ++s) {
            rng::unit_direction(seed, static_cast<std::uint64_t>(s), ds.d, x.data());
            const double ref = top_over(ds, ref_rows, x);
            if (!(ref > 0.0)) {
                if (local.bad_index < 0) local.bad_index = s;
                continue;
            }
            const double v = 1.0 - top_over(ds, q_rows, x) / ref;
            if (v > local.value) {
                local.value = v;
                local.index = s;
            }
        }
        best[static_cast<std::size_t>(c)] = local;
    });

    ChunkBest overall;
    for (const ChunkBest& cb : best) {
        if (cb.bad_index >= 0 && (overall.bad_index < 0 || cb.bad_index < overall.bad_index))
            overall.bad_index = cb.bad_index;
        if (cb.index >= 0 && cb.value > overall.value) {
            overall.value = cb.value;
            overall.index = cb.index;
        }
    }
    if (overall.bad_index >= 0) {
        std::vector<double> x(ds.d);
        rng::unit_direction(seed, static_cast<std::uint64_t>(overall.bad_index), ds.d,
                            x.data());
        const double ref = top_over(ds, ref_rows, x);
        throw_nonpositive_support(x, ref);
    }

    RegretReport rep;
    rep.method = "sampled";
    rep.samples = m;
    rep.value = overall.value;
    rep.witness.resize(ds.d);
    rng::unit_direction(seed, static_cast<std::uint64_t>(overall.index), ds.d,
                        rep.witness.data());
    return rep;
}

namespace detail {

RegretReport exact_max_regret_2d(const Dataset& ds, std::span<const int> q_rows,
                                 std::span<const int> x_rows) {
    validate_rows(ds, q_rows, "exact_max_regret(Q)");
    validate_rows(ds, x_rows, "exact_max_regret(X)");
    if (ds.d != 2) throw ConfigError("exact_max_regret_2d: dataset is not 2-dimensional");

    RegretReport rep;
    rep.method = "exact-2d";

    const std::vector<int> hull = hull_of_rows(ds, x_rows);
    const int h = static_cast<int>(hull.size());
    if (h < 3) {  // support cannot stay positive around the circle
        rep.unbounded = true;
        return rep;
    }

    // Breakpoints of the reference top score: both signs of the tie
    // direction of each consecutive hull pair. The minimum of the reference
    // support over the whole circle is attained at one of these (every cell
    // of the top-score decomposition has its support minimum at an endpoint,
    // and a cell wide enough to hide an interior dip must already have a
    // nonpositive endpoint), so a nonpositive value at any of them is
    // exactly the unbounded case.
    std::vector<std::vector<double>> cand;
    for (int i = 0; i < h; ++i) {
        const auto a = ds.row(hull[i]);
        const auto b = ds.row(hull[(i + 1) % h]);
        double nx = -(a[1] - b[1]), ny = a[0] - b[0];
        const double len = std::sqrt(nx * nx + ny * ny);
        if (len <= 0.0) continue;
        nx /= len;
        ny /= len;
        cand.push_back({nx, ny});
        cand.push_back({-nx, -ny});
    }
    for (const auto& x : cand) {
        if (top_over(ds, x_rows, x) <= 1e-12) {
            rep.unbounded = true;
            return rep;
        }
    }

    // Breakpoints of the subset's top score, both signs (the subset hull need
    // not surround the origin, so either sign can be the switch direction).
    const std::vector<int> qhull = hull_of_rows(ds, q_rows);
    const int qh = static_cast<int>(qhull.size());
    const int qpairs = qh >= 3 ? qh : (qh == 2 ? 1 : 0);
    for (int i = 0; i < qpairs; ++i) {
        const auto a = ds.row(qhull[i]);
        const auto b = ds.row(qhull[(i + 1) % qh]);
        double nx = -(a[1] - b[1]), ny = a[0] - b[0];
        const double len = std::sqrt(nx * nx + ny * ny);
        if (len <= 0.0) continue;
        nx /= len;
        ny /= len;
        cand.push_back({nx, ny});
        cand.push_back({-nx, -ny});
    }

    bool first = true;
    for (const auto& x : cand) {
        const double v = regret_ratio(ds, q_rows, x_rows, x);
        if (first || v > rep.value) {
            rep.value = v;
            rep.witness = x;
            first = false;
        }
    }
    return rep;
}

RegretReport exact_max_regret_lp(const Dataset& ds, std::span<const int> q_rows,
                                 std::span<const int> x_rows) {
    validate_rows(ds, q_rows, "exact_max_regret(Q)");
    validate_rows(ds, x_rows, "exact_max_regret(X)");
    const int d = ds.d;
    const int nq = static_cast<int>(q_rows.size());
    const int nx = static_cast<int>(x_rows.size());

    RegretReport rep;
    rep.method = "exact-lp";

    // For reference row j, the cell is the set of directions where j holds
    // the top reference score, normalized to <t_j, x> = 1. The smallest top
    // subset score over the cell comes from this LP, solved in dual form:
    //   max mu  s.t.  sum_q lambda_q q - sum_t nu_t (t_j - t) - mu t_j = 0,
    //                 sum_q lambda_q = 1,   lambda, nu >= 0, mu free.
    // Its row duals hold the primal witness direction (negated).
    const auto solve_cell = [&](int j, std::span<const int> others, double& value,
                                std::vector<double>& witness) -> lp::Status {
        const int nv = nq + static_cast<int>(others.size()) + 1;
        lp::Problem p;
        p.sense = lp::Sense::Maximize;
        p.nvars = nv;
        p.c.assign(nv, 0.0);
        p.c[nv - 1] = 1.0;  // mu
        p.nonneg.assign(nv, 1);
        p.nonneg[nv - 1] = 0;
        const auto tj = ds.row(x_rows[j]);
        for (int k = 0; k < d; ++k) {
            std::vector<double> a(nv, 0.0);
            for (int q = 0; q < nq; ++q) a[q] = ds.at(q_rows[q], k);
            for (std::size_t t = 0; t < others.size(); ++t)
                a[nq + t] = -(tj[k] - ds.at(x_rows[others[t]], k));
            a[nv - 1] = -tj[k];
            p.add_row(std::move(a), lp::Rel::EQ, 0.0);
        }
        {
            std::vector<double> a(nv, 0.0);
            for (int q = 0; q < nq; ++q) a[q] = 1.0;
            p.add_row(std::move(a), lp::Rel::EQ, 1.0);
        }
        const lp::Solution s = lp::solve(p);
        if (s.status != lp::Status::Optimal) return s.status;
        value = 1.0 - s.objective;
        witness.assign(d, 0.0);
        for (int k = 0; k < d; ++k) witness[k] = -s.row_duals[k];
        return lp::Status::Optimal;
    };

    // Nonemptiness of a cell, for disambiguating a dual-infeasible solve:
    // Optimal means nonempty, Infeasible means empty.
    const auto cell_nonempty = [&](int j) -> lp::Status {
        lp::Problem p;
        p.nvars = d;
        p.c.assign(d, 0.0);
        p.nonneg.assign(d, 0);
        const auto tj = ds.row(x_rows[j]);
        p.add_row(std::vector<double>(tj.begin(), tj.end()), lp::Rel::EQ, 1.0);
        for (int t = 0; t < nx; ++t) {
            if (t == j) continue;
            std::vector<double> a(d);
            for (int k = 0; k < d; ++k) a[k] = tj[k] - ds.at(x_rows[t], k);
            p.add_row(std::move(a), lp::Rel::GE, 0.0);
        }
        return lp::solve(p).status;
    };

    // Stage 1: a relaxed bound per cell from the nearest few reference rows
    // only (dropping cell constraints can only enlarge the cell, so the
    // resulting regret is an upper bound on the true cell regret).
    constexpr int kNear = 16;
    std::vector<int> order(nx);
    for (int j = 0; j < nx; ++j) order[j] = j;
    std::vector<double> bound(nx, std::numeric_limits<double>::infinity());
    const bool use_bounds = nx > kNear + 1;
    if (use_bounds) {
        std::vector<int> near;
        std::vector<std::pair<double, int>> sim;
        for (int j = 0; j < nx; ++j) {
            const auto tj = ds.row(x_rows[j]);
            sim.clear();
            for (int t = 0; t < nx; ++t)
                if (t != j) sim.push_back({-dot(tj, ds.row(x_rows[t])), t});
            std::nth_element(sim.begin(), sim.begin() + kNear, sim.end());
            near.assign(kNear, 0);
            for (int t = 0; t < kNear; ++t) near[t] = sim[t].second;
            std::sort(near.begin(), near.end());
            double v = 0.0;
            std::vector<double> w;
            const lp::Status st = solve_cell(j, near, v, w);
            // Infeasible or numerically failed relaxed dual leaves the bound
            // at +inf (the full solve decides); unbounded relaxed dual means
            // the relaxed cell is empty, so the true cell is empty too.
            if (st == lp::Status::Optimal) bound[j] = v;
            else if (st == lp::Status::Unbounded) bound[j] = -std::numeric_limits<double>::infinity();
        }
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (bound[a] != bound[b]) return bound[a] > bound[b];
            return a < b;
        });
    }

    // Stage 2: full solves in decreasing bound order; a cell whose bound
    // cannot beat the best value found is skipped. The margin keeps LP noise
    // in the bounds from pruning the true maximum.
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> best_witness;
    std::vector<int> others;
    others.reserve(nx - 1);
    for (int j : order) {
        if (best_witness.size() && bound[j] < best - 1e-7) break;
        others.clear();
        for (int t = 0; t < nx; ++t)
            if (t != j) others.push_back(t);
        double v = 0.0;
        std::vector<double> w;
        const lp::Status st = solve_cell(j, others, v, w);
        if (st == lp::Status::NumericalFailure)
            throw std::runtime_error(
                "exact_max_regret: a cell linear program failed numerically; the "
                "exact value cannot be certified");
        if (st == lp::Status::Unbounded) continue;  // empty cell
        if (st == lp::Status::Infeasible) {
            const lp::Status ne = cell_nonempty(j);
            if (ne == lp::Status::Infeasible) continue;  // empty cell
            if (ne != lp::Status::Optimal)
                throw std::runtime_error(
                    "exact_max_regret: a cell nonemptiness probe failed numerically");
            rep.unbounded = true;  // nonempty cell with unbounded regret
            return rep;
        }
        if (v > best) {
            best = v;
            best_witness = std::move(w);
        }
    }
    if (best_witness.empty())
        throw ConfigError(
            "exact_max_regret: no reference cell is nonempty; the reference rows do not "
            "define a usable top-score decomposition");

    const double len = norm(best_witness);
    if (len > 0.0)
        for (double& v : best_witness) v /= len;
    rep.value = best;
    rep.witness = std::move(best_witness);
    return rep;
}

}  // namespace detail

RegretReport exact_max_regret(const Dataset& ds, std::span<const int> q_rows,
                              std::span<const int> x_rows) {
    if (ds.d == 2) return detail::exact_max_regret_2d(ds, q_rows, x_rows);
    return detail::exact_max_regret_lp(ds, q_rows, x_rows);
}

}  // namespace grmr
