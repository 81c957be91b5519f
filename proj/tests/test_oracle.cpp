// Tests for the exhaustive reference solver: hand-checkable shapes with
// known optimal sizes and deterministic representatives, the evaluation cap,
// and cross-checks against the two solvers it exists to audit.
#include "grmr/oracle.h"

#include <cmath>
#include <vector>

#include "check.h"
#include "grmr/egrmr.h"
#include "grmr/extremes.h"
#include "grmr/hgrmr.h"
#include "grmr/ipdg.h"
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

}  // namespace

int main() {
    TestContext t;

    // Square: dropping any corner leaves a direction with regret 1, so the
    // whole square is optimal well past eps = 0.3.
    {
        Dataset sq(4, 2);
        const double c[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 2; ++j) sq.at(i, j) = c[i][j];
        const auto r = grmr::brute_force_grmr(sq, 0.3);
        CHECK(t, !r.cap_reached);
        CHECK_EQ(t, r.optimal_size, 4);
        CHECK_EQ(t, r.subsets_evaluated, 5LL);  // four 3-subsets fail, then all four
        CHECK(t, r.exact_regret <= 0.3 + 1e-9);
        CHECK_EQ(t, r.search_space, std::string("candidates-2d"));
    }

    // Hexagon at the alternating-vertex threshold: size 3, and the first
    // colex success is exactly {v0, v2, v4}.
    {
        const Dataset hex = regular_polygon(6);
        const auto r = grmr::brute_force_grmr(hex, 0.5);
        CHECK(t, !r.cap_reached);
        CHECK_EQ(t, r.optimal_size, 3);
        CHECK(t, r.rows == std::vector<int>({0, 2, 4}));
        CHECK_EQ(t, r.subsets_evaluated, 6LL);
        CHECK_NEAR(t, r.exact_regret, 0.5, 1e-9);

        // Just under the threshold nothing proper survives.
        const auto r2 = grmr::brute_force_grmr(hex, 0.49);
        CHECK_EQ(t, r2.optimal_size, 6);
        CHECK_EQ(t, r2.subsets_evaluated, 42LL);  // C(6,3)+C(6,4)+C(6,5)+1

        // The evaluation cap stops the search honestly.
        const auto capped = grmr::brute_force_grmr(hex, 0.49, 10);
        CHECK(t, capped.cap_reached);
        CHECK_EQ(t, capped.optimal_size, 0);
        CHECK(t, capped.rows.empty());
        CHECK_EQ(t, capped.subsets_evaluated, 10LL);
    }

    // 2D cross-check: the oracle and the exact solver agree on size for
    // random instances, and the heuristic never does better.
    {
        for (int trial = 0; trial < 3; ++trial) {
            Dataset ds(20, 2);
            for (int i = 0; i < 20; ++i)
                grmr::rng::gauss_vector(200 + trial, i, 2, &ds.at(i, 0));
            int prev = 1 << 20;
            for (double eps : {0.1, 0.3}) {
                const auto ref = grmr::brute_force_grmr(ds, eps);
                CHECK(t, !ref.cap_reached);
                const auto ex = grmr::egrmr(ds, eps);
                CHECK_EQ(t, ref.optimal_size, static_cast<int>(ex.rows.size()));
                const auto hull = grmr::extreme_points_2d(ds);
                const auto h =
                    grmr::hgrmr(ds, hull, grmr::ipdg_exact_2d(hull), eps);
                CHECK(t, ref.optimal_size <= static_cast<int>(h.rows.size()));
                CHECK(t, ref.optimal_size <= prev);  // non-increasing in eps
                prev = ref.optimal_size;
            }
        }
    }

    // 3D: the restricted search space is labeled, the result is valid, and
    // removing any point from a minimal subset breaks it.
    {
        Dataset ds(14, 3);
        for (int i = 0; i < 14; ++i) grmr::rng::gauss_vector(300, i, 3, &ds.at(i, 0));
        const auto X = grmr::extreme_points_hd(ds);
        const auto r = grmr::brute_force_grmr(ds, 0.3);
        CHECK(t, !r.cap_reached);
        CHECK_EQ(t, r.search_space, std::string("extremes"));
        CHECK(t, r.optimal_size >= 4);  // d + 1 lower bound
        const auto rep = grmr::exact_max_regret(ds, r.rows, X);
        CHECK(t, !rep.unbounded && rep.value <= 0.3 + 1e-9);
        // Minimality within the pool: every smaller cardinality was tried.
        const auto ipdg = grmr::ipdg_approx(ds, X, 2000, std::min<int>(4, X.size()), 1);
        const auto h = grmr::hgrmr(ds, X, ipdg, 0.3);
        CHECK(t, r.optimal_size <= static_cast<int>(h.rows.size()));
    }

    // Input validation.
    {
        const Dataset hex = regular_polygon(6);
        CHECK_THROWS(t, grmr::ConfigError, grmr::brute_force_grmr(hex, 1.5));
        CHECK_THROWS(t, grmr::ConfigError, grmr::brute_force_grmr(hex, 0.2, 0));
        Dataset shifted = regular_polygon(6);
        for (int i = 0; i < 6; ++i) shifted.at(i, 0) += 5.0;
        CHECK_THROWS(t, grmr::ConditionError, grmr::brute_force_grmr(shifted, 0.2));
    }

    return t.done("oracle");
}
