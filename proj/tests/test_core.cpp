// Unit tests for the core module: scoring, angle arithmetic, normalization,
// the 2D hull helper, and the interior-origin check in 2D and above.
#include "grmr/core.h"

#include <vector>

#include "check.h"

using grmr::Dataset;

namespace {

Dataset make(std::initializer_list<std::initializer_list<double>> rows) {
    const int n = static_cast<int>(rows.size());
    const int d = static_cast<int>(rows.begin()->size());
    Dataset ds(n, d);
    int i = 0;
    for (const auto& r : rows) {
        int j = 0;
        for (double v : r) ds.at(i, j++) = v;
        ++i;
    }
    return ds;
}

}  // namespace

int main() {
    TestContext t;

    // Scoring and argmax with smallest-index tie break.
    {
        const Dataset ds = make({{1, 0}, {0, 1}, {1, 0}, {-1, -1}});
        const std::vector<double> x = {1.0, 0.0};
        const auto top = grmr::top_score(ds, x);
        CHECK_NEAR(t, top.value, 1.0, 1e-15);
        CHECK_EQ(t, top.index, 0);  // rows 0 and 2 tie; smallest index wins

        const std::vector<int> rows = {3, 2, 1};
        const auto sub = grmr::top_score(ds, rows, x);
        CHECK_EQ(t, sub.index, 2);
        CHECK_NEAR(t, grmr::score(ds.row(3), x), -1.0, 1e-15);
    }

    // Angles land in [0, 2*pi) and arcs wrap correctly.
    {
        CHECK_NEAR(t, grmr::angle_of(1.0, 0.0), 0.0, 1e-15);
        CHECK_NEAR(t, grmr::angle_of(0.0, 1.0), grmr::kPi / 2, 1e-12);
        CHECK_NEAR(t, grmr::angle_of(-1.0, 0.0), grmr::kPi, 1e-12);
        CHECK_NEAR(t, grmr::angle_of(0.0, -1.0), 1.5 * grmr::kPi, 1e-12);
        CHECK_NEAR(t, grmr::angle_of(1.0, -1e-9), grmr::kTwoPi - 1e-9, 1e-12);
        CHECK_NEAR(t, grmr::ccw_span(1.5 * grmr::kPi, 0.5), 0.5 * grmr::kPi + 0.5, 1e-12);
        CHECK(t, grmr::on_ccw_arc(6.0, 1.0, 0.3));
        CHECK(t, !grmr::on_ccw_arc(6.0, 1.0, 3.0));
        CHECK(t, grmr::on_ccw_arc(1.0, 1.0, 1.0));
    }

    // Normalization maps columns onto [-1, 1] and zeros constant columns.
    {
        const Dataset ds = make({{0, 5, 7}, {10, 5, 3}, {5, 5, 5}});
        const Dataset nz = grmr::normalize_dataset(ds);
        CHECK_NEAR(t, nz.at(0, 0), -1.0, 1e-15);
        CHECK_NEAR(t, nz.at(1, 0), 1.0, 1e-15);
        CHECK_NEAR(t, nz.at(2, 0), 0.0, 1e-15);
        CHECK_NEAR(t, nz.at(0, 1), 0.0, 1e-15);  // constant column
        CHECK_NEAR(t, nz.at(1, 1), 0.0, 1e-15);
        CHECK_NEAR(t, nz.at(0, 2), 1.0, 1e-15);
        CHECK_NEAR(t, nz.at(1, 2), -1.0, 1e-15);

        Dataset bad = make({{1, 2}, {3, 4}});
        bad.at(1, 1) = std::nan("");
        try {
            grmr::normalize_dataset(bad);
            CHECK(t, false && "expected ConfigError");
        } catch (const grmr::ConfigError& e) {
            const std::string msg = e.what();
            CHECK(t, msg.find("row 1") != std::string::npos);
            CHECK(t, msg.find("column 1") != std::string::npos);
        }
    }

    // 2D hull: CCW, collinear points dropped, duplicates collapse to the
    // lowest row index, start vertex has the smallest polar angle.
    {
        const Dataset ds = make({{1, 0},    // 0: hull, angle 0
                                 {0, 1},    // 1: hull
                                 {-1, 0},   // 2: hull
                                 {0, -1},   // 3: hull
                                 {0.5, 0.5},  // 4: collinear on edge 0-1
                                 {0, 0},      // 5: interior
                                 {1, 0}});    // 6: duplicate of 0
        const auto hull = grmr::detail::hull_2d(ds);
        const std::vector<int> want = {0, 1, 2, 3};
        CHECK(t, hull == want);
    }

    // Interior-origin check: exact in 2D, sampled refutation in 4D.
    {
        const Dataset good = make({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
        const auto rep = grmr::check_interior_origin(good);
        CHECK(t, rep.ok);
        CHECK_EQ(t, rep.method, std::string("exact-2d"));
        CHECK_NEAR(t, rep.worst_support, 1.0, 1e-12);

        const Dataset bad = make({{1, 0.1}, {1, -0.1}, {2, 0}});  // origin outside
        const auto rep2 = grmr::check_interior_origin(bad);
        CHECK(t, !rep2.ok);
        CHECK_THROWS(t, grmr::ConditionError, grmr::require_interior_origin(bad));

        Dataset cube(16, 4);  // 4D: vertices of a slab that excludes the origin
        for (int i = 0; i < 16; ++i) {
            cube.at(i, 0) = (i & 1) ? 1.0 : 0.25;  // first axis strictly positive
            cube.at(i, 1) = (i & 2) ? 1.0 : -1.0;
            cube.at(i, 2) = (i & 4) ? 1.0 : -1.0;
            cube.at(i, 3) = (i & 8) ? 1.0 : -1.0;
        }
        const auto rep3 = grmr::check_interior_origin(cube, 20000, 7);
        CHECK(t, !rep3.ok);
        CHECK_EQ(t, rep3.method, std::string("sampled"));
        CHECK(t, rep3.worst_dir.size() == 4);

        for (int i = 0; i < 16; ++i) cube.at(i, 0) = (i & 1) ? 1.0 : -1.0;
        const auto rep4 = grmr::check_interior_origin(cube, 20000, 7);
        CHECK(t, rep4.ok);
        CHECK(t, rep4.worst_support > 0.9);  // cube support is >= 1 everywhere
    }

    return t.done("core");
}
