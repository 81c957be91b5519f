// Implementation of the core dataset and geometry utilities.
#include "grmr/core.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "grmr/parallel.h"
#include "grmr/rng.h"

namespace grmr {

ScoredTop top_score(const Dataset& ds, std::span<const double> x) {
    ScoredTop best;
    for (int i = 0; i < ds.n; ++i) {
        const double s = dot(ds.row(i), x);
        if (best.index < 0 || s > best.value) {
            best.value = s;
            best.index = i;
        }
    }
    return best;
}

ScoredTop top_score(const Dataset& ds, std::span<const int> rows, std::span<const double> x) {
    ScoredTop best;
    for (int r : rows) {
        const double s = dot(ds.row(r), x);
        if (best.index < 0 || s > best.value || (s == best.value && r < best.index)) {
            best.value = s;
            best.index = r;
        }
    }
    return best;
}

double angle_of(double x, double y) {
    double a = std::atan2(y, x);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
    return a;
}

double ccw_span(double a, double b) {
    double s = std::fmod(b - a, kTwoPi);
    if (s < 0.0) s += kTwoPi;
    return s;
}

bool on_ccw_arc(double a, double b, double t, double tol) {
    return ccw_span(a, t) <= ccw_span(a, b) + tol;
}

Dataset normalize_dataset(const Dataset& ds) {
    for (int i = 0; i < ds.n; ++i)
        for (int j = 0; j < ds.d; ++j)
            if (!std::isfinite(ds.at(i, j))) {
                std::ostringstream msg;
                msg << "normalize_dataset: non-finite value at row " << i << ", column "
                    << j;
                throw ConfigError(msg.str());
            }
    Dataset out(ds.n, ds.d);
    for (int j = 0; j < ds.d; ++j) {
        double lo = ds.at(0, j), hi = ds.at(0, j);
        for (int i = 1; i < ds.n; ++i) {
            lo = std::min(lo, ds.at(i, j));
            hi = std::max(hi, ds.at(i, j));
        }
        if (hi - lo <= 0.0) {
            for (int i = 0; i < ds.n; ++i) out.at(i, j) = 0.0;
        } else {
            // Divide per element so the column extremes land on exactly -1
            // and +1 and nothing can stray outside the interval.
            const double span = hi - lo;
            for (int i = 0; i < ds.n; ++i)
                out.at(i, j) = 2.0 * ((ds.at(i, j) - lo) / span) - 1.0;
        }
    }
    return out;
}

namespace detail {

std::vector<int> hull_2d(const Dataset& ds) {
    // Collapse duplicate coordinates onto the lowest row index, then run the
    // monotone-chain construction with strict turns so collinear boundary
    // points are dropped.
    std::vector<int> idx;
    idx.reserve(ds.n);
    for (int i = 0; i < ds.n; ++i) idx.push_back(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (ds.at(a, 0) != ds.at(b, 0)) return ds.at(a, 0) < ds.at(b, 0);
        if (ds.at(a, 1) != ds.at(b, 1)) return ds.at(a, 1) < ds.at(b, 1);
        return a < b;
    });
    idx.erase(std::unique(idx.begin(), idx.end(),
                          [&](int a, int b) {
                              return ds.at(a, 0) == ds.at(b, 0) && ds.at(a, 1) == ds.at(b, 1);
                          }),
              idx.end());

    const auto cross = [&](int o, int a, int b) {
        return (ds.at(a, 0) - ds.at(o, 0)) * (ds.at(b, 1) - ds.at(o, 1)) -
               (ds.at(a, 1) - ds.at(o, 1)) * (ds.at(b, 0) - ds.at(o, 0));
    };

    const int m = static_cast<int>(idx.size());
    if (m <= 2) return idx;

    std::vector<int> hull(2 * m);
    int k = 0;
    for (int t = 0; t < m; ++t) {  // lower chain
        const int p = idx[t];
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    const int lower = k + 1;
    for (int t = m - 2; t >= 0; --t) {  // upper chain
        const int p = idx[t];
        while (k >= lower && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);  // last point repeats the first

    // Rotate so the cycle starts at the vertex with the smallest polar angle.
    int start = 0;
    double best = angle_of(ds.row(hull[0]));
    for (int t = 1; t < static_cast<int>(hull.size()); ++t) {
        const double a = angle_of(ds.row(hull[t]));
        if (a < best || (a == best && hull[t] < hull[start])) {
            best = a;
            start = t;
        }
    }
    std::rotate(hull.begin(), hull.begin() + start, hull.end());
    return hull;
}

}  // namespace detail

namespace {

// Exact 2D test: the origin is strictly interior iff every hull edge keeps it
// on its left (positive cross product). Reports the worst outward normal.
InteriorReport interior_origin_2d(const Dataset& ds) {
    InteriorReport rep;
    rep.method = "exact-2d";
    const std::vector<int> hull = detail::hull_2d(ds);
    if (hull.size() < 3) {
        rep.ok = false;
        rep.worst_dir = {1.0, 0.0};
        // A degenerate hull has some direction with support <= 0; find the
        // worst over the hull's outward edge normals or, if even edges are
        // missing, over axis directions.
        rep.worst_support = 0.0;
        if (!hull.empty()) {
            const auto p = ds.row(hull[0]);
            const double n2 = norm(p);
            if (n2 > 0.0) rep.worst_dir = {-p[0] / n2, -p[1] / n2};
            double worst = 1e300;
            const double dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            for (auto& dxy : dirs) {
                const std::vector<double> x = {dxy[0], dxy[1]};
                const double s = top_score(ds, x).value;
                if (s < worst) {
                    worst = s;
                    rep.worst_dir = x;
                }
            }
            const std::vector<double> cand = rep.worst_dir;
            rep.worst_support = top_score(ds, cand).value;
        }
        return rep;
    }
    rep.ok = true;
    rep.worst_support = 1e300;
    const int h = static_cast<int>(hull.size());
    for (int i = 0; i < h; ++i) {
        const auto a = ds.row(hull[i]);
        const auto b = ds.row(hull[(i + 1) % h]);
        const double ex = b[0] - a[0], ey = b[1] - a[1];
        double nx = ey, ny = -ex;  // outward normal for a CCW polygon
        const double len = std::sqrt(nx * nx + ny * ny);
        if (len <= 0.0) continue;
        nx /= len;
        ny /= len;
        const double support = a[0] * nx + a[1] * ny;  // distance of edge line
        if (support < rep.worst_support) {
            rep.worst_support = support;
            rep.worst_dir = {nx, ny};
        }
        if (support <= 1e-9) rep.ok = false;
    }
    return rep;
}

}  // namespace

InteriorReport check_interior_origin(const Dataset& ds, int m, std::uint64_t seed) {
    if (ds.n == 0 || ds.d < 2)
        throw ConfigError("check_interior_origin: dataset must have n >= 1 and d >= 2");
    if (ds.d == 2) return interior_origin_2d(ds);

    InteriorReport rep;
    rep.method = "sampled";
    rep.ok = true;
    rep.worst_support = 1e300;
    std::vector<double> x(ds.d), worst(ds.d);
    for (int s = 0; s < m; ++s) {
        rng::unit_direction(seed, static_cast<std::uint64_t>(s), ds.d, x.data());
        const double sup = top_score(ds, x).value;
        if (sup < rep.worst_support) {
            rep.worst_support = sup;
            worst = x;
        }
    }
    rep.worst_dir = worst;
    if (rep.worst_support <= 1e-9) rep.ok = false;
    return rep;
}

void require_interior_origin(const Dataset& ds) {
    const InteriorReport rep = check_interior_origin(ds);
    if (rep.ok) return;
    std::ostringstream msg;
    msg << "dataset violates the interior-origin requirement: support along direction (";
    for (std::size_t k = 0; k < rep.worst_dir.size(); ++k) {
        if (k) msg << ", ";
        msg << rep.worst_dir[k];
    }
    msg << ") is " << rep.worst_support
        << " <= 0; every direction must have a point with positive score "
           "(normalize the data or recenter so the origin is interior)";
    throw ConditionError(msg.str());
}

}  // namespace grmr
