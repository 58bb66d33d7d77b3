#pragma once

// Path square functional (1/|I|) int_I int_I |p_t - p_s|^2 / (t-s)^2 ds dt
// with the degenerate discrete diagonal excluded, and the dyadic
// mean-oscillation seminorm used for comparative statements.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "brownian.hpp"
#include "hardy.hpp"

namespace harmlab {

inline double path_square_functional(const Path& p) {
    const std::size_t n = p.count();
    if (n < 64) throw std::invalid_argument("path_square_functional: needs >= 64 samples");
    const double len = p.time(n - 1) - p.t0;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = (i == 0 || i + 1 == n) ? 0.5 * p.dt : p.dt;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double wj = (j == 0 || j + 1 == n) ? 0.5 * p.dt : p.dt;
            const double u = p.time(j) - p.time(i);
            acc += 2.0 * wi * wj * p.sq_dist(i, j) / (u * u);
        }
    }
    return acc / len;
}

// Max over dyadic blocks (all levels with >= 2 samples per block) of the mean
// absolute deviation from the block mean.
inline double dyadic_bmo_seminorm(const TimeProfile& samples) {
    const std::size_t n = samples.count();
    if (n < 2) throw std::invalid_argument("dyadic_bmo_seminorm: needs >= 2 samples");
    double worst = 0.0;
    for (std::size_t blocks = 1;; blocks *= 2) {
        const std::size_t width = n / blocks;
        if (width < 2) break;
        for (std::size_t b = 0; b < blocks; ++b) {
            const std::size_t lo = b * width;
            const std::size_t hi = (b + 1 == blocks) ? n : lo + width;
            std::complex<double> mean{0.0, 0.0};
            for (std::size_t i = lo; i < hi; ++i) mean += samples.values[i];
            mean /= double(hi - lo);
            double dev = 0.0;
            for (std::size_t i = lo; i < hi; ++i) dev += std::abs(samples.values[i] - mean);
            worst = std::max(worst, dev / double(hi - lo));
        }
    }
    return worst;
}

}  // namespace harmlab
