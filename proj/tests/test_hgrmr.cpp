// Tests for the dominance-graph heuristic: edge-weight LP against
// hand-solved shapes and a closed-form 2D oracle, graph construction with
// early pruning, greedy covering, threshold reuse, the dual search, and the
// file format.
#include "grmr/hgrmr.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "check.h"
#include "grmr/egrmr.h"
#include "grmr/extremes.h"
#include "grmr/regret.h"
#include "grmr/rng.h"

using grmr::Dataset;

namespace {

Dataset regular_polygon(int k) {
    Dataset ds(k, 2);
    for (int i = 0; i < k; ++i) {
        const double a = i * grmr::kTwoPi / k;
        ds.at(i, 0) = std::cos(a);
        ds.at(i, 1) = std::sin(a);
    }
    return ds;
}

std::vector<int> iota_positions(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

// Independent 2D weight: on a CCW hull, the worst point of j's cell is one
// of its two boundary directions, so the weight is one minus the smaller
// score ratio there.
double closed_form_weight_2d(const Dataset& ds, const std::vector<int>& hull, int i,
                             int j) {
    const auto bv = grmr::boundary_vectors(ds, hull);
    const int h = static_cast<int>(hull.size());
    const auto ti = ds.row(hull[i]);
    const auto tj = ds.row(hull[j]);
    double r = 1e300;
    for (const auto& b : {bv[(j + h - 1) % h], bv[j]})
        r = std::min(r, (ti[0] * b[0] + ti[1] * b[1]) / (tj[0] * b[0] + tj[1] * b[1]));
    return 1.0 - r;
}

}  // namespace

int main() {
    TestContext t;

    // Diamond: keeping only (1,0) while (0,1) wins costs 2 at the far cell
    // boundary.  Hexagon: each neighbor cell costs exactly 1.
    {
        Dataset diamond(4, 2);
        diamond.at(0, 0) = 1;
        diamond.at(1, 1) = 1;
        diamond.at(2, 0) = -1;
        diamond.at(3, 1) = -1;
        const auto w = grmr::dominance_weight(diamond, iota_positions(4), 0, 1, {0, 2});
        CHECK(t, w.kind == grmr::DomWeight::kValue);
        CHECK_NEAR(t, w.value, 2.0, 1e-7);

        const Dataset hex = regular_polygon(6);
        const auto wh = grmr::dominance_weight(hex, iota_positions(6), 0, 1, {0, 2});
        CHECK(t, wh.kind == grmr::DomWeight::kValue);
        CHECK_NEAR(t, wh.value, 1.0, 1e-7);

        // A neighborhood too small to close the cell leaves the slice
        // unbounded in a direction the source scores negatively on.
        const auto wu = grmr::dominance_weight(hex, iota_positions(6), 2, 0, {1});
        CHECK(t, wu.kind == grmr::DomWeight::kUnbounded);

        // An interior point constrained against every extreme has an empty
        // cell: it never wins anywhere.
        Dataset withInterior(5, 2);
        for (int i = 0; i < 4; ++i)
            for (int c = 0; c < 2; ++c) withInterior.at(i, c) = diamond.at(i, c);
        withInterior.at(4, 0) = 0.1;
        const auto we = grmr::dominance_weight(withInterior, iota_positions(5), 0, 4,
                                               {0, 1, 2, 3});
        CHECK(t, we.kind == grmr::DomWeight::kEmptyCell);
    }

    // LP weights agree with the closed-form 2D oracle on a random hull, and
    // are nonnegative.
    {
        Dataset ds(40, 2);
        for (int i = 0; i < 40; ++i) grmr::rng::gauss_vector(77, i, 2, &ds.at(i, 0));
        const auto hull = grmr::extreme_points_2d(ds);
        const int h = static_cast<int>(hull.size());
        const auto ipdg = grmr::ipdg_exact_2d(hull);
        std::vector<int> pos = hull;
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j) {
                if (i == j) continue;
                const auto w = grmr::dominance_weight(ds, pos, i, j, ipdg.adj[j]);
                CHECK(t, w.kind == grmr::DomWeight::kValue);
                CHECK_NEAR(t, w.value, closed_form_weight_2d(ds, hull, i, j), 1e-6);
                CHECK(t, w.value >= -1e-9);
            }
    }

    // Graph construction: diamond and hexagon have no admissible edges at
    // one half, and pruning stops after the first ring of neighbors.
    {
        const Dataset hex = regular_polygon(6);
        const auto hull = grmr::extreme_points_2d(hex);
        const auto ipdg = grmr::ipdg_exact_2d(hull);
        const auto g = grmr::build_dom_graph(hex, hull, ipdg, 0.5);
        CHECK_EQ(t, g.edge_count(), std::size_t(0));
        CHECK_EQ(t, g.lp_solves, std::size_t(12));  // two neighbors per source
        CHECK_EQ(t, g.max_neighborhood, 2);
        CHECK_EQ(t, g.max_dom, 1);

        // At a level admitting neighbor edges, expansion continues and the
        // two-step weight appears when it fits.
        const auto g2 = grmr::build_dom_graph(hex, hull, ipdg, 1.0);
        CHECK_EQ(t, g2.edge_count(), std::size_t(12));  // both neighbors, each source
        CHECK(t, g2.lp_solves > 12);                    // expanded past the first ring
        for (int i = 0; i < 6; ++i)
            for (const auto& [to, wt] : g2.out[i]) {
                CHECK(t, wt <= 1.0 + 1e-9);
                CHECK(t, to == (i + 1) % 6 || to == (i + 5) % 6);
            }
    }

    // Greedy covering: edgeless graph takes everything in index order; a
    // single dominator is found alone.
    {
        grmr::DomGraph edgeless;
        edgeless.nv = 4;
        edgeless.out.resize(4);
        const auto all = grmr::greedy_dominating_set(edgeless);
        CHECK(t, all.picks == std::vector<int>({0, 1, 2, 3}));

        grmr::DomGraph star;
        star.nv = 4;
        star.out.resize(4);
        star.out[2] = {{0, 0.1}, {1, 0.1}, {3, 0.1}};
        const auto one = grmr::greedy_dominating_set(star);
        CHECK(t, one.picks == std::vector<int>({2}));
    }

    // Full heuristic on shapes: valid but intentionally conservative.
    {
        const Dataset hex = regular_polygon(6);
        const auto hull = grmr::extreme_points_2d(hex);
        const auto ipdg = grmr::ipdg_exact_2d(hull);
        const auto r = grmr::hgrmr(hex, hull, ipdg, 0.5);
        CHECK_EQ(t, r.rows.size(), std::size_t(6));  // optimum is 3; heuristic keeps all
        const auto rep = grmr::exact_max_regret(hex, r.rows, hull);
        CHECK(t, !rep.unbounded && rep.value <= 0.5 + 1e-9);

        Dataset diamond(4, 2);
        diamond.at(0, 0) = 1;
        diamond.at(1, 1) = 1;
        diamond.at(2, 0) = -1;
        diamond.at(3, 1) = -1;
        const auto dh = grmr::extreme_points_2d(diamond);
        const auto rd = grmr::hgrmr(diamond, dh, grmr::ipdg_exact_2d(dh), 0.9);
        CHECK_EQ(t, rd.rows.size(), std::size_t(4));
    }

    // Validity property in higher dimension, for exact-style, sparse, and
    // empty adjacency graphs alike; the heuristic never beats the exact 2D
    // optimum on the same instance.
    {
        Dataset ds(200, 3);
        for (int i = 0; i < 200; ++i) grmr::rng::gauss_vector(5, i, 3, &ds.at(i, 0));
        const auto X = grmr::extreme_points_hd(ds);
        const int nx = static_cast<int>(X.size());
        for (double eps : {0.1, 0.25}) {
            for (int variant = 0; variant < 3; ++variant) {
                const int k = variant == 0 ? std::min(8, nx) : std::min(3, nx);
                const long long m = variant == 2 ? 0 : 2000;
                const auto ipdg = grmr::ipdg_approx(ds, X, m, k, 13);
                const auto r = grmr::hgrmr(ds, X, ipdg, eps);
                const auto rep = grmr::exact_max_regret(ds, r.rows, X);
                CHECK(t, !rep.unbounded && rep.value <= eps + 1e-9);
                CHECK(t, static_cast<int>(r.rows.size()) <= nx);
                const auto again = grmr::hgrmr(ds, X, ipdg, eps);
                CHECK(t, again.rows == r.rows);
            }
        }

        Dataset flat(120, 2);
        for (int i = 0; i < 120; ++i) grmr::rng::gauss_vector(6, i, 2, &flat.at(i, 0));
        const auto hull = grmr::extreme_points_2d(flat);
        const auto rh = grmr::hgrmr(flat, hull, grmr::ipdg_exact_2d(hull), 0.15);
        const auto re = grmr::egrmr(flat, 0.15);
        CHECK(t, re.rows.size() <= rh.rows.size());
        const auto rep = grmr::exact_max_regret(flat, rh.rows, hull);
        CHECK(t, !rep.unbounded && rep.value <= 0.15 + 1e-9);
    }

    // Threshold reuse: degenerate interval reproduces the plain result; a
    // loose cap never loses validity and here never loses size either.
    {
        const Dataset hex = regular_polygon(6);
        const auto hull = grmr::extreme_points_2d(hex);
        const auto ipdg = grmr::ipdg_exact_2d(hull);
        const auto base = grmr::hgrmr(hex, hull, ipdg, 0.5);
        const auto same = grmr::hgrmr_reuse(hex, hull, ipdg, 0.5, 0.5);
        CHECK(t, same.rows == base.rows);
        const auto loose = grmr::hgrmr_reuse(hex, hull, ipdg, 0.5, 0.9);
        CHECK_EQ(t, loose.rows.size(), std::size_t(6));

        Dataset ds(300, 4);
        for (int i = 0; i < 300; ++i) grmr::rng::gauss_vector(8, i, 4, &ds.at(i, 0));
        const auto X = grmr::extreme_points_hd(ds);
        const auto g = grmr::ipdg_approx(ds, X, 3000, 8, 17);
        const auto basic = grmr::hgrmr(ds, X, g, 0.1);
        const auto reuse = grmr::hgrmr_reuse(ds, X, g, 0.1, 0.3);
        CHECK(t, reuse.delta >= 0.1);
        CHECK(t, reuse.exact_regret >= 0.0 && reuse.exact_regret <= 0.1 + 1e-9);
        CHECK(t, reuse.rows.size() <= basic.rows.size());
    }

    // Dual search: known hexagon answers in 2D, the conservative graph
    // answer in 3D, and budget validation.
    {
        const Dataset hex = regular_polygon(6);
        const auto hull = grmr::extreme_points_2d(hex);
        const auto ipdg = grmr::ipdg_exact_2d(hull);
        const auto d6 = grmr::dual_min_regret(hex, hull, ipdg, 6);
        CHECK(t, d6.ok && d6.rows.size() == 6 && d6.epsilon < 0.01);
        const auto d3 = grmr::dual_min_regret(hex, hull, ipdg, 3);
        CHECK(t, d3.ok);
        CHECK_NEAR(t, d3.epsilon, 0.5, 1e-4);
        CHECK(t, d3.rows == std::vector<int>({0, 2, 4}));
        CHECK_THROWS(t, grmr::ConfigError, grmr::dual_min_regret(hex, hull, ipdg, 2));

        Dataset oct(6, 3);
        for (int axis = 0; axis < 3; ++axis)
            for (int sign = 0; sign < 2; ++sign)
                oct.at(2 * axis + sign, axis) = sign ? -1.0 : 1.0;
        const auto opos = iota_positions(6);
        const auto og = grmr::ipdg_approx(oct, opos, 3000, 2, 3);
        const auto od = grmr::dual_min_regret(oct, opos, og, 6);
        CHECK(t, od.ok && od.rows.size() == 6 && od.method == "domgraph-dual");
        const auto od5 = grmr::dual_min_regret(oct, opos, og, 5);
        CHECK(t, !od5.ok);
    }

    // Serialization round-trip and malformed input.
    {
        Dataset ds(120, 3);
        for (int i = 0; i < 120; ++i) grmr::rng::gauss_vector(44, i, 3, &ds.at(i, 0));
        const auto X = grmr::extreme_points_hd(ds);
        const auto ipdg = grmr::ipdg_approx(ds, X, 1500, 6, 2);
        const auto g = grmr::build_dom_graph(ds, X, ipdg, 0.4);
        const char* path = "/tmp/grmr_test_domgraph.txt";
        grmr::save_dom_graph(path, g);
        const auto back = grmr::load_dom_graph(path);
        CHECK(t, back.out == g.out);
        CHECK_EQ(t, back.nv, g.nv);
        CHECK_NEAR(t, back.threshold, 0.4, 0.0);
        CHECK_EQ(t, back.max_neighborhood, g.max_neighborhood);
        CHECK_EQ(t, back.max_dom, g.max_dom);

        std::FILE* f = std::fopen(path, "w");
        std::fputs("{\"vertices\":3}\n0 1 not-a-number\n", f);
        std::fclose(f);
        CHECK_THROWS(t, grmr::ConfigError, grmr::load_dom_graph(path));
    }

    // Condition check: a hull that misses the origin is refused.
    {
        Dataset right(4, 2);
        right.at(0, 0) = 1;
        right.at(0, 1) = 0.2;
        right.at(1, 0) = 2;
        right.at(1, 1) = 1;
        right.at(2, 0) = 2;
        right.at(2, 1) = -1;
        right.at(3, 0) = 1;
        right.at(3, 1) = -0.2;
        const auto hull = grmr::extreme_points_2d(right);
        const auto ipdg = grmr::ipdg_exact_2d(hull);
        CHECK_THROWS(t, grmr::ConditionError, grmr::hgrmr(right, hull, ipdg, 0.2));
    }

    return t.done("hgrmr");
}
