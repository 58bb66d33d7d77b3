#pragma once

// Closed-form Gaussian transform pairs under the pinned convention. These are
// the oracles for every propagator and overlap formula in the library:
//
//   fhat(zeta) = exp(-alpha |zeta|^2), Re alpha >= 0, alpha != 0
//   f(x)       = (4 pi alpha)^{-d/2} exp(-|x|^2 / (4 alpha))
//
// On the imaginary axis alpha = -it this is the Fresnel limit of alpha + eps,
// eps -> 0+, which the principal branch of the power realizes directly.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace harmlab {

inline constexpr double pi = 3.14159265358979323846264338327950288;

// Principal-branch z^{-d/2}.
inline std::complex<double> inv_half_power(std::complex<double> z, int d) {
    return std::exp(-0.5 * double(d) * std::log(z));
}

struct GaussianClosedForm {
    std::complex<double> alpha;
    int d;

    // Value at a physical point with squared radius rho = |x|^2.
    std::complex<double> at_rho(double rho) const {
        const std::complex<double> pref = inv_half_power(4.0 * pi * alpha, d);
        return pref * std::exp(-rho / (4.0 * alpha));
    }

    template <typename Pt>
    std::complex<double> operator()(const Pt& x) const {
        double rho = 0.0;
        for (int a = 0; a < d; ++a) rho += x[a] * x[a];
        return at_rho(rho);
    }
};

inline GaussianClosedForm gaussian_closed_form(std::complex<double> alpha, int d) {
    if (alpha.real() < 0.0) throw std::invalid_argument("gaussian_closed_form: Re(alpha) must be >= 0");
    if (alpha == std::complex<double>(0.0, 0.0))
        throw std::invalid_argument("gaussian_closed_form: alpha must be nonzero");
    return GaussianClosedForm{alpha, d};
}

}  // namespace harmlab
