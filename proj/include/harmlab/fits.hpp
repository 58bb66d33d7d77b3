#pragma once

// Least-squares fit of ladder values against the log of the control
// parameter; the quantitative form of every divergence statement here.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace harmlab {

struct DivergenceFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;  // clamped to [0, 1]; 0 for zero-variance data
    bool against_inverse = false;  // fitted vs ln(1/parameter) instead of ln(parameter)
};

struct LadderPoint {
    double parameter = 0.0;
    double value = 0.0;
};

inline DivergenceFit fit_log_divergence(const std::vector<LadderPoint>& pts, bool against_inverse) {
    if (pts.size() < 4) throw std::invalid_argument("fit_log_divergence: need at least 4 ladder points");
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (!(pts[i].parameter > pts[i - 1].parameter) && !(pts[i].parameter < pts[i - 1].parameter))
            throw std::invalid_argument("fit_log_divergence: parameters must be strictly monotone");
    const double first = pts.front().parameter, last = pts.back().parameter;
    if (first == last) throw std::invalid_argument("fit_log_divergence: degenerate ladder");
    const std::size_t n = pts.size();
    double sx = 0, sy = 0;
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(pts[i].parameter > 0.0)) throw std::invalid_argument("fit_log_divergence: parameters must be positive");
        xs[i] = against_inverse ? std::log(1.0 / pts[i].parameter) : std::log(pts[i].parameter);
        sx += xs[i];
        sy += pts[i].value;
    }
    const double mx = sx / double(n), my = sy / double(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx, dy = pts[i].value - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    DivergenceFit fit;
    fit.against_inverse = against_inverse;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy <= 0.0) {
        fit.slope = 0.0;
        fit.intercept = my;
        fit.r_squared = 0.0;  // documented convention for constant data
    } else {
        double ssres = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = pts[i].value - (fit.intercept + fit.slope * xs[i]);
            ssres += e * e;
        }
        fit.r_squared = std::min(1.0, std::max(0.0, 1.0 - ssres / syy));
    }
    return fit;
}

}  // namespace harmlab
