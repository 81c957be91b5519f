// End-to-end walk over one fixed 12-point catalog: extremes, candidate
// selection, pair regret, arc graph, the exact solver, the brute-force
// optimum, dominance weights, greedy covering, and the heuristic solver all
// hit hand-frozen values computed independently of this library.
#include <algorithm>
#include <vector>

#include "check.h"
#include "grmr/core.h"
#include "grmr/egrmr.h"
#include "grmr/extremes.h"
#include "grmr/hgrmr.h"
#include "grmr/ipdg.h"
#include "grmr/oracle.h"
#include "grmr/regret.h"

using namespace grmr;

namespace {

// Ten catalog rows worth keeping plus two interior fillers. Rows 0..9 are
// spread around the origin; rows 10 and 11 sit deep inside the hull.
Dataset fixture() {
    Dataset ds;
    ds.n = 12;
    ds.d = 2;
    ds.v = {
        0.73,  0.45,   //
        0.54,  0.82,   //
        -0.24, 0.79,   //
        -0.67, 0.65,   //
        -0.79, 0.64,   //
        -0.82, -0.32,  //
        -0.84, -0.54,  //
        -0.23, -0.99,  //
        0.49,  -0.58,  //
        0.98,  -0.17,  //
        0.11,  0.22,   //
        -0.31, -0.14,  //
    };
    return ds;
}

std::vector<int> sorted_copy(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

int main() {
    TestContext t;
    const Dataset ds = fixture();

    // -- extreme rows, counter-clockwise ------------------------------------
    const std::vector<int> hull = extreme_points_2d(ds);
    CHECK_EQ(t, hull, (std::vector<int>{0, 1, 2, 4, 6, 7, 8, 9}));

    // -- candidate selection -------------------------------------------------
    // At eps = 0.1 the interior rows 3 and 5 clear the score threshold (their
    // best boundary-vector ratios are 0.9734 and 0.9869); rows 10 and 11
    // never do (0.27 and 0.37).
    const CandidateSet cand = select_candidates(ds, 0.1);
    CHECK_EQ(t, cand.hull, hull);
    CHECK_EQ(t, cand.rows, (std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}));
    const CandidateSet tight = select_candidates(ds, 0.012);
    CHECK_EQ(t, tight.rows, hull);

    // -- pair regret and its tie vector -------------------------------------
    // Keeping only rows 0 and 2 leaves the in-between extreme (row 1) exposed
    // at the pair's tie direction.
    const PairRegret pr = compute_pair_regret(ds, hull, 0, 2);
    CHECK_NEAR(t, pr.value, 0.30061287027579164, 1e-12);
    CHECK_NEAR(t, pr.tie[0], 0.33078374998929533, 1e-12);
    CHECK_NEAR(t, pr.tie[1], 0.943706580851813, 1e-12);
    // The same direction scaled to match the fixture's drawing scale.
    CHECK_NEAR(t, pr.tie[0] * 1.027911, 0.34, 0.01);
    CHECK_NEAR(t, pr.tie[1] * 1.027911, 0.97, 0.01);

    // Consecutive extremes commit no regret; skipping pairs commit these.
    CHECK_EQ(t, compute_pair_regret(ds, hull, 0, 1).value, 0.0);
    CHECK_NEAR(t, compute_pair_regret(ds, hull, 1, 4).value, 0.091873, 1e-6);
    CHECK_NEAR(t, compute_pair_regret(ds, hull, 7, 9).value, 0.085448, 1e-6);
    CHECK_NEAR(t, compute_pair_regret(ds, hull, 9, 1).value, 0.027479, 1e-6);

    // -- arc graph at eps = 0.1 ---------------------------------------------
    // Candidate positions coincide with row numbers here (the rows are
    // already in angular order), so the frozen pairs map directly.
    const ArcGraph g = build_arc_graph(ds, cand, 0.1);
    const auto has_edge = [&](int u, int v) {
        const auto& a = g.adj[u];
        return std::find(a.begin(), a.end(), v) != a.end();
    };
    CHECK(t, has_edge(1, 4));   // 0.0919 within budget
    CHECK(t, has_edge(7, 9));   // 0.0854 within budget
    CHECK(t, has_edge(9, 1));   // 0.0275 within budget
    CHECK(t, !has_edge(1, 5));  // skipping three extremes costs too much

    // -- exact solver vs. brute force ---------------------------------------
    const Egrmr2dResult exact = egrmr(ds, 0.1);
    CHECK_EQ(t, sorted_copy(exact.rows), (std::vector<int>{1, 4, 6, 7, 9}));
    CHECK_NEAR(t, exact.exact_regret, 0.09187311454429103, 1e-9);
    CHECK_EQ(t, exact.candidates, 10);

    const OracleResult best = brute_force_grmr(ds, 0.1);
    CHECK(t, !best.cap_reached);
    CHECK_EQ(t, best.optimal_size, 5);
    CHECK_EQ(t, best.rows, (std::vector<int>{1, 4, 6, 7, 9}));

    // -- dominance weights over the extreme cycle ---------------------------
    const IpdgGraph cyc = ipdg_exact_2d(hull);
    const auto weight = [&](int i, int j) {
        const DomWeight w = dominance_weight(ds, hull, i, j, cyc.adj[j]);
        CHECK_EQ(t, static_cast<int>(w.kind), static_cast<int>(DomWeight::kValue));
        return w.value;
    };
    CHECK_NEAR(t, weight(1, 0), 0.044771, 1e-5);
    CHECK_NEAR(t, weight(3, 2), 0.161213, 1e-5);
    CHECK_NEAR(t, weight(5, 6), 0.194393, 1e-5);
    CHECK_NEAR(t, weight(7, 0), 0.071147, 1e-5);
    CHECK_NEAR(t, weight(7, 6), 0.152466, 1e-5);
    CHECK_NEAR(t, weight(1, 2), 0.213603, 1e-5);  // just over the 0.2 budget

    // -- dominance graph + greedy covering at eps = 0.2 ---------------------
    const DomGraph dg = build_dom_graph(ds, hull, cyc, 0.2);
    CHECK_EQ(t, dg.edge_count(), static_cast<std::size_t>(5));
    CHECK_EQ(t, dg.out[1].size(), static_cast<std::size_t>(1));  // 1 -> 0 only
    CHECK_EQ(t, dg.out[1][0].first, 0);
    CHECK_EQ(t, dg.out[7].size(), static_cast<std::size_t>(2));  // 7 -> {0, 6}
    CHECK_EQ(t, dg.out[7][0].first, 0);
    CHECK_EQ(t, dg.out[7][1].first, 6);

    const GreedyResult greedy = greedy_dominating_set(dg);
    CHECK_EQ(t, greedy.picks, (std::vector<int>{7, 3, 1, 4, 5}));

    // -- heuristic solver reproduces the same five rows ---------------------
    const HgrmrResult heur = hgrmr(ds, hull, cyc, 0.2);
    CHECK_EQ(t, heur.rows, (std::vector<int>{1, 4, 6, 7, 9}));
    CHECK_EQ(t, heur.pick_order.front(), 7);
    CHECK(t, heur.exact_regret <= 0.2 + 1e-9);

    return t.done("workflow");
}
