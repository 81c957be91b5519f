// Core types and plane/sphere geometry shared by every other module: the
// flat row-major Dataset, linear scoring and argmax, 2D angle arithmetic,
// per-column normalization into [-1, 1], and the interior-origin check that
// every solver requires before regret ratios are meaningful.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace grmr {

// Invalid user input: bad files, out-of-range parameters, malformed configs.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dataset fails the interior-origin requirement; carries the offending
// direction in the message so the caller can see where support collapses.
struct ConditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// n points in R^d, row-major. Row indices are stable 0-based identifiers:
// solver outputs refer back to rows of the dataset they were given.
struct Dataset {
    int n = 0;
    int d = 0;
    std::vector<double> v;  // n * d values

    Dataset() = default;
    Dataset(int n_, int d_) : n(n_), d(d_), v(static_cast<std::size_t>(n_) * d_, 0.0) {}

    double at(int i, int j) const { return v[static_cast<std::size_t>(i) * d + j]; }
    double& at(int i, int j) { return v[static_cast<std::size_t>(i) * d + j]; }
    std::span<const double> row(int i) const {
        return {v.data() + static_cast<std::size_t>(i) * d, static_cast<std::size_t>(d)};
    }
    std::span<double> row(int i) {
        return {v.data() + static_cast<std::size_t>(i) * d, static_cast<std::size_t>(d)};
    }
};

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

inline double norm(std::span<const double> a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return s == 0.0 ? 0.0 : std::sqrt(s);
}

// Linear utility of one point under direction x (weights may be negative).
inline double score(std::span<const double> p, std::span<const double> x) {
    return dot(p, x);
}

struct ScoredTop {
    double value = 0.0;
    int index = -1;  // smallest row index among maximizers
};

// Best score over all rows; ties resolve to the smallest row index.
ScoredTop top_score(const Dataset& ds, std::span<const double> x);

// Same, restricted to the given rows (in the order provided).
ScoredTop top_score(const Dataset& ds, std::span<const int> rows, std::span<const double> x);

// ---- 2D angle arithmetic ---------------------------------------------------

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

// Polar angle of a nonzero 2D point, mapped into [0, 2*pi).
double angle_of(double x, double y);
inline double angle_of(std::span<const double> p) { return angle_of(p[0], p[1]); }

// Counter-clockwise arc length from angle a to angle b, in [0, 2*pi).
double ccw_span(double a, double b);

// True when angle t lies on the closed CCW arc from a to b.
bool on_ccw_arc(double a, double b, double t, double tol = 1e-12);

// ---- Normalization ---------------------------------------------------------

// Maps every column affinely onto [-1, 1] (min -> -1, max -> 1); constant
// columns become all zeros. Rejects non-finite values, naming row and column.
Dataset normalize_dataset(const Dataset& ds);

// ---- Interior-origin check -------------------------------------------------

struct InteriorReport {
    bool ok = false;
    double worst_support = 0.0;       // min over tested x of max_p <p, x>
    std::vector<double> worst_dir;    // direction attaining worst_support
    std::string method;               // "exact-2d" or "sampled"
};

// Verifies the origin lies strictly inside the convex hull of the dataset,
// i.e. every direction has a point with positive score. Exact in 2D; in
// higher dimension tests m sampled unit directions (a one-sided check: it
// can certify failure, and passes when no sampled direction refutes).
InteriorReport check_interior_origin(const Dataset& ds, int m = 100000,
                                     std::uint64_t seed = 42);

// Throws ConditionError with the offending direction when the check fails.
void require_interior_origin(const Dataset& ds);

namespace detail {
// Convex hull of 2D rows, counter-clockwise, collinear boundary points
// excluded. Duplicate coordinates keep only the lowest row index. The cycle
// starts at the vertex with the smallest polar angle.
std::vector<int> hull_2d(const Dataset& ds);
}  // namespace detail

}  // namespace grmr
