// Counter-based deterministic random number helpers. Every sample is keyed by
// (seed, index), so sample i is the same no matter how many samples are drawn,
// in what order, or on how many threads. This gives sampled estimates a strict
// prefix property: the first m draws of a longer run equal a shorter run.
#pragma once

#include <cstdint>
#include <cmath>
#include <vector>

namespace grmr::rng {

// Finalizer from the splitmix64 generator; bijective 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stateless stream: value for (seed, index, lane).
inline std::uint64_t at(std::uint64_t seed, std::uint64_t index, std::uint64_t lane) {
    std::uint64_t h = mix64(seed ^ 0x5851f42d4c957f2dULL);
    h = mix64(h ^ index);
    return mix64(h ^ (lane * 0xda942042e4dd58b5ULL + 1));
}

// Uniform double in (0, 1); never returns exactly 0 (safe to pass to log()).
inline double u01(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// One pair of independent standard normals via the Box-Muller transform.
inline void gauss_pair(std::uint64_t b0, std::uint64_t b1, double& g0, double& g1) {
    const double r = std::sqrt(-2.0 * std::log(u01(b0)));
    const double a = 6.283185307179586476925286766559 * u01(b1);
    g0 = r * std::cos(a);
    g1 = r * std::sin(a);
}

// d independent standard normals for sample `index` of stream `seed`.
inline void gauss_vector(std::uint64_t seed, std::uint64_t index, int d, double* out) {
    for (int k = 0; 2 * k < d; ++k) {
        double g0, g1;
        gauss_pair(at(seed, index, 2 * k), at(seed, index, 2 * k + 1), g0, g1);
        out[2 * k] = g0;
        if (2 * k + 1 < d) out[2 * k + 1] = g1;
    }
}

// Uniform direction on the unit sphere in R^d (normalized Gaussian vector).
// Degenerate all-zero draws (probability ~0) fall back to the first axis.
inline void unit_direction(std::uint64_t seed, std::uint64_t index, int d, double* out) {
    gauss_vector(seed, index, d, out);
    double n2 = 0.0;
    for (int k = 0; k < d; ++k) n2 += out[k] * out[k];
    if (n2 <= 0.0 || !std::isfinite(n2)) {
        for (int k = 0; k < d; ++k) out[k] = 0.0;
        out[0] = 1.0;
        return;
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (int k = 0; k < d; ++k) out[k] *= inv;
}

// Uniform double in [lo, hi) for sample `index`, lane `lane`.
inline double uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t lane,
                      double lo, double hi) {
    return lo + (hi - lo) * u01(at(seed, index, lane));
}

}  // namespace grmr::rng
