#pragma once

// Brownian path sampling with deterministic seeding, the Gaussian quadratic
// characteristic function E exp(i theta gamma^2) with its Monte Carlo
// cross-check, and the lacunary cosine paths used by the path-functional
// experiments.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "rng.hpp"

namespace harmlab {

struct Path {
    double t0 = 0.0;
    double dt = 0.0;
    int dim = 1;
    std::vector<double> points;  // count * dim, row-major per node
    SeedSpec seed;               // provenance; zeroed for deterministic paths

    std::size_t count() const { return dim == 0 ? 0 : points.size() / std::size_t(dim); }
    double time(std::size_t i) const { return t0 + dt * double(i); }
    double coord(std::size_t i, int a) const { return points[i * std::size_t(dim) + std::size_t(a)]; }

    double sq_dist(std::size_t i, std::size_t j) const {
        double s = 0.0;
        for (int a = 0; a < dim; ++a) {
            const double d = coord(i, a) - coord(j, a);
            s += d * d;
        }
        return s;
    }
};

// Scalar Brownian motion on a uniform grid, b(t0) = 0, increments
// N(0, dt) drawn at deterministic counters.
inline Path sample_brownian(double t0, double dt, std::size_t count, const SeedSpec& seed) {
    if (count < 2 || !(dt > 0.0)) throw std::invalid_argument("sample_brownian: need count >= 2, dt > 0");
    Path p;
    p.t0 = t0;
    p.dt = dt;
    p.dim = 1;
    p.seed = seed;
    p.points.resize(count);
    p.points[0] = 0.0;
    const double sdt = std::sqrt(dt);
    for (std::size_t i = 1; i < count; ++i)
        p.points[i] = p.points[i - 1] + sdt * random_normal(seed, i - 1);
    return p;
}

// E exp(i theta gamma^2) = (1 - 2 i theta)^{-1/2}, principal branch.
inline std::complex<double> gaussian_quadratic_char(double theta) {
    const std::complex<double> z(1.0, -2.0 * theta);
    return std::exp(-0.5 * std::log(z));
}

// a = E sin(theta gamma^2).
inline double gaussian_quadratic_sin(double theta) { return gaussian_quadratic_char(theta).imag(); }

struct MonteCarloEstimate {
    std::complex<double> mean;
    double stderr_combined;  // sqrt(var(Re) + var(Im)) / sqrt(n)
    std::size_t samples;
};

inline MonteCarloEstimate gaussian_quadratic_char_mc(double theta, std::size_t samples, const SeedSpec& seed) {
    if (samples == 0) throw std::invalid_argument("gaussian_quadratic_char_mc: needs samples > 0");
    double sr = 0, si = 0, sr2 = 0, si2 = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double g = random_normal(seed, i);
        const double re = std::cos(theta * g * g), im = std::sin(theta * g * g);
        sr += re;
        si += im;
        sr2 += re * re;
        si2 += im * im;
    }
    const double n = double(samples);
    const double mr = sr / n, mi = si / n;
    const double vr = std::max(0.0, sr2 / n - mr * mr);
    const double vi = std::max(0.0, si2 / n - mi * mi);
    return MonteCarloEstimate{{mr, mi}, std::sqrt((vr + vi) / n), samples};
}

// Discrete Lip_{1/2} seminorm: max over node pairs of |p_i - p_j| / sqrt|t_i - t_j|.
inline double lip_half_seminorm(const Path& p) {
    const std::size_t n = p.count();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double num = std::sqrt(p.sq_dist(i, j));
            const double den = std::sqrt(p.time(j) - p.time(i));
            worst = std::max(worst, num / den);
        }
    return worst;
}

// Lacunary cosine path sum_{k=1..levels} 2^{-k/2} cos(2^k t) on [a, b],
// rescaled so the discrete Lip_{1/2} seminorm equals one.
inline Path lacunary_path(int levels, std::size_t samples, double a, double b) {
    if (levels < 1) throw std::invalid_argument("lacunary_path: levels >= 1");
    if (samples < (std::size_t{1} << (levels + 4)))
        throw std::invalid_argument("lacunary_path: not enough samples for the finest scale");
    Path p;
    p.dim = 1;
    p.t0 = a;
    p.dt = (b - a) / double(samples - 1);
    p.points.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = p.time(i);
        double v = 0.0;
        for (int k = 1; k <= levels; ++k)
            v += std::pow(2.0, -0.5 * k) * std::cos(std::ldexp(1.0, k) * t);
        p.points[i] = v;
    }
    const double s = lip_half_seminorm(p);
    for (double& v : p.points) v /= s;
    return p;
}

}  // namespace harmlab
