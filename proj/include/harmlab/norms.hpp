#pragma once

// Quadrature-weighted Lp norms on grids and mixed Lq(dt, Lp(dx)) norms over a
// sequence of snapshots. Exponent infinity is the max over grid nodes.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "grid.hpp"

namespace harmlab {

inline constexpr double infinite_exponent = std::numeric_limits<double>::infinity();

inline double lebesgue_norm(const SampledField& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lebesgue_norm: exponent must be >= 1");
    if (p == infinite_exponent) {
        double m = 0.0;
        for (const cplx& v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (const cplx& v : f.values) s += std::pow(std::abs(v), p);
    return std::pow(s * f.cell_weight(), 1.0 / p);
}

struct MixedNormSpec {
    double p = 2.0;       // spatial exponent
    double q = 2.0;       // temporal exponent
    double t0 = 0.0;      // uniform time grid
    double dt = 0.0;
    std::size_t count = 0;
};

inline double mixed_norm(const std::vector<SampledField>& snapshots, const MixedNormSpec& spec) {
    if (snapshots.size() != spec.count || spec.count == 0)
        throw std::invalid_argument("mixed_norm: snapshot count does not match the time grid");
    if (!(spec.p >= 1.0) || !(spec.q >= 1.0)) throw std::invalid_argument("mixed_norm: invalid exponent");
    for (const auto& f : snapshots)
        if (!(f.grid == snapshots.front().grid))
            throw std::invalid_argument("mixed_norm: snapshots must share one grid");
    if (spec.q == infinite_exponent) {
        double m = 0.0;
        for (const auto& f : snapshots) m = std::max(m, lebesgue_norm(f, spec.p));
        return m;
    }
    // trapezoid in time
    double s = 0.0;
    for (std::size_t i = 0; i < spec.count; ++i) {
        const double w = (i == 0 || i + 1 == spec.count) ? 0.5 * spec.dt : spec.dt;
        s += w * std::pow(lebesgue_norm(snapshots[i], spec.p), spec.q);
    }
    return std::pow(s, 1.0 / spec.q);
}

}  // namespace harmlab
