#pragma once

// Heat-kernel maximal function on a grid. Smoothing happens spectrally: with
// the mass-one kernel (4 pi t)^{-d/2} e^{-|y|^2/(4t)} the multiplier is
// e^{-t |zeta|^2}. A literal variant with kernel exponent |y|^2/t (multiplier
// 4^{-d/2} e^{-t|zeta|^2/4}) is kept behind a flag; it changes constants, not
// decay orders.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "parallel.hpp"
#include "transform.hpp"

namespace harmlab {

enum class HeatKernelVariant { mass_one, literal };

inline double heat_multiplier(double t, double z2, HeatKernelVariant variant = HeatKernelVariant::mass_one, int d = 2) {
    if (variant == HeatKernelVariant::mass_one) return std::exp(-t * z2);
    return std::pow(2.0, -double(d)) * std::exp(-t * z2 / 4.0);
}

// Geometric ladder of smoothing times, default 60 points spanning [1e-3, 1e3].
inline std::vector<double> default_heat_ladder(std::size_t points = 60, double lo = 1e-3, double hi = 1e3) {
    if (points < 2) throw std::invalid_argument("heat ladder needs >= 2 points");
    std::vector<double> t(points);
    const double r = std::pow(hi / lo, 1.0 / double(points - 1));
    double v = lo;
    for (std::size_t i = 0; i < points; ++i, v *= r) t[i] = v;
    return t;
}

// Field of M g(x) = max over the ladder of |heat-smoothed g(x)|.
inline std::vector<double> heat_maximal_field(const SampledField& g, const std::vector<double>& ladder,
                                              HeatKernelVariant variant = HeatKernelVariant::mass_one,
                                              unsigned workers = 1) {
    if (g.domain != Domain::physical) throw std::invalid_argument("heat_maximal_field: physical field expected");
    if (ladder.empty()) throw std::invalid_argument("heat_maximal_field: empty ladder");
    const SampledField spec = transform(g, Direction::forward);
    const std::size_t total = g.values.size();
    std::vector<std::vector<double>> per_t(ladder.size());
    parallel_for(ladder.size(), workers, [&](std::size_t j) {
        const double t = ladder[j];
        SampledField smooth = apply_multiplier(spec, [&](const std::array<double, 3>& z) {
            const double z2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2];
            return cplx(heat_multiplier(t, z2, variant, g.grid.d), 0.0);
        });
        smooth = transform(smooth, Direction::inverse);
        per_t[j].resize(total);
        for (std::size_t i = 0; i < total; ++i) per_t[j][i] = std::abs(smooth.values[i]);
    });
    std::vector<double> out(total, 0.0);
    for (std::size_t j = 0; j < ladder.size(); ++j)
        for (std::size_t i = 0; i < total; ++i) out[i] = std::max(out[i], per_t[j][i]);
    return out;
}

inline double heat_maximal(const SampledField& g, std::size_t flat_index, const std::vector<double>& ladder,
                           HeatKernelVariant variant = HeatKernelVariant::mass_one) {
    return heat_maximal_field(g, ladder, variant)[flat_index];
}

// L1 quadrature of the maximal field.
inline double h1_norm(const SampledField& g, const std::vector<double>& ladder,
                      HeatKernelVariant variant = HeatKernelVariant::mass_one, unsigned workers = 1) {
    const auto mg = heat_maximal_field(g, ladder, variant, workers);
    double s = 0.0;
    for (double v : mg) s += v;
    return s * g.cell_weight();
}

}  // namespace harmlab
