#pragma once

// Propagators as Fourier multipliers, and the closed-form two-point overlaps
// built from them.
//
//   schrodinger:      exp(i t |zeta|^2)
//   wave:             sin(t |zeta|) / |zeta|,   limit value t at zeta = 0
//   cosine resolvent: cos(t |zeta|) / (|zeta|^2 + eps^2), eps documented per use

#include <cmath>
#include <complex>
#include <stdexcept>

#include "gaussian.hpp"
#include "grid.hpp"
#include "quadrature.hpp"
#include "transform.hpp"

namespace harmlab {

namespace detail {

template <typename M>
SampledField evolve_physical(const SampledField& f, M&& m) {
    SampledField spec = transform(f, Direction::forward);
    spec = apply_multiplier(spec, m);
    return transform(spec, Direction::inverse);
}

}  // namespace detail

inline SampledField schrodinger_evolve(const SampledField& f, double t) {
    if (f.grid.d < 2) throw std::invalid_argument("schrodinger_evolve: needs a d >= 2 grid");
    return detail::evolve_physical(f, [t](const std::array<double, 3>& z) {
        const double z2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2];
        return std::polar(1.0, t * z2);
    });
}

inline double wave_multiplier(double t, double zabs) {
    return zabs == 0.0 ? t : std::sin(t * zabs) / zabs;
}

inline SampledField wave_evolve(const SampledField& f, double t) {
    if (f.grid.d != 3) throw std::invalid_argument("wave_evolve: needs a d = 3 grid");
    return detail::evolve_physical(f, [t](const std::array<double, 3>& z) {
        return cplx(wave_multiplier(t, std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2])), 0.0);
    });
}

inline double cosine_resolvent_multiplier(double t, double zabs, double eps) {
    return std::cos(t * zabs) / (zabs * zabs + eps * eps);
}

inline SampledField cosine_resolvent(const SampledField& f, double t, double eps) {
    if (f.grid.d != 3) throw std::invalid_argument("cosine_resolvent: needs a d = 3 grid");
    if (t == 0.0) throw std::invalid_argument("cosine_resolvent: t must be nonzero");
    if (!(eps > 0.0)) throw std::invalid_argument("cosine_resolvent: eps must be positive");
    return detail::evolve_physical(f, [t, eps](const std::array<double, 3>& z) {
        return cplx(cosine_resolvent_multiplier(t, std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]), eps), 0.0);
    });
}

// Spatial kernel of the cosine resolvent: 1/(4 pi |x|) outside the ball of
// radius |t|, zero inside.
inline double wave_spatial_kernel(double t, double xabs) {
    if (t == 0.0 && xabs == 0.0)
        throw std::invalid_argument("wave_spatial_kernel: undefined at x = 0, t = 0");
    return (xabs >= std::fabs(t)) ? 1.0 / (4.0 * pi * xabs) : 0.0;
}

// Radial Fourier transform of the kernel with Gaussian damping e^{-eps r^2}:
//   (1/|zeta|) int_{|t|}^inf e^{-eps r^2} sin(r |zeta|) dr,
// which tends to cos(t|zeta|)/|zeta|^2 as eps -> 0+.
inline double wave_kernel_damped_transform(double t, double zabs, double eps) {
    if (!(eps > 0.0) || !(zabs > 0.0))
        throw std::invalid_argument("wave_kernel_damped_transform: needs eps > 0, |zeta| > 0");
    const double lo = std::fabs(t);
    // e^{-eps r^2} < 1e-22 beyond this radius
    const double hi = lo + std::sqrt(51.0 / eps);
    QuadOptions opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-14;
    const double integral =
        integrate([&](double r) { return std::exp(-eps * r * r) * std::sin(r * zabs); }, lo, hi, opt);
    return integral / zabs;
}

// Max over the spectral grid of the defect of the product-to-sum identity
//   sin(t|z|) sin(s|z|) / |z|^2  ==  (cos((s-t)|z|) - cos((s+t)|z|)) / (2 |z|^2)
// with the wave limit value used at the zero node on both sides.
inline double composition_identity_check(double s, double t, const Grid& g) {
    if (g.d != 3) throw std::invalid_argument("composition_identity_check: needs a d = 3 grid");
    double worst = 0.0;
    const std::size_t total = g.size();
    for (std::size_t i = 0; i < total; ++i) {
        const auto z = g.freq(i);
        const double za = std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]);
        double lhs, rhs;
        if (za == 0.0) {
            lhs = s * t;  // product of the two limit values
            rhs = s * t;
        } else {
            lhs = std::sin(t * za) * std::sin(s * za) / (za * za);
            rhs = (std::cos((s - t) * za) - std::cos((s + t) * za)) / (2.0 * za * za);
        }
        worst = std::max(worst, std::fabs(lhs - rhs));
    }
    return worst;
}

// Overlap of a free-evolved point mass with another point mass in d = 2,
// both regularized by deltahat(zeta) = e^{-eps |zeta|^2}:
//   (2 pi)^{-2} int e^{(it - 2 eps)|zeta|^2} e^{i zeta.(q - p)} dzeta
//   = (4 pi (2 eps - i t))^{-1} exp(-|p-q|^2 / (4 (2 eps - i t))).
inline std::complex<double> point_overlap_schrodinger(double t, const std::array<double, 2>& p,
                                                      const std::array<double, 2>& q, double eps = 0.0) {
    if (t == 0.0) throw std::invalid_argument("point_overlap_schrodinger: t must be nonzero");
    if (eps < 0.0) throw std::invalid_argument("point_overlap_schrodinger: eps must be >= 0");
    const double dx0 = p[0] - q[0], dx1 = p[1] - q[1];
    const double rho = dx0 * dx0 + dx1 * dx1;
    const std::complex<double> alpha(2.0 * eps, -t);
    return (1.0 / (4.0 * pi)) * std::exp(-rho / (4.0 * alpha)) / alpha;
}

// Quartic polynomial appearing in the two-time overlap of the Laplacian-of-
// Gaussian data ghat(zeta) = |zeta|^2 e^{-|zeta|^2}.
inline double overlap_polynomial(double tau) { return 16.0 * tau * tau - 64.0 * tau + 32.0; }

inline std::complex<double> overlap_polynomial(std::complex<double> tau) {
    return 16.0 * tau * tau - 64.0 * tau + 32.0;
}

// Two-time overlap for ghat(zeta) = |zeta|^2 e^{-|zeta|^2} in d = 2:
//   K = (2 pi)^{-2} int |zeta|^4 e^{(-2 + iu)|zeta|^2} e^{i zeta.(q-p)} dzeta
//     = P(rho / (4 beta)) e^{-rho/(4 beta)} / (64 pi beta^3),
// with u = t - s, beta = 2 - iu, rho = |p - q|^2.
inline std::complex<double> gaussian_overlap_from_rho(double u, double rho) {
    const std::complex<double> beta(2.0, -u);
    const std::complex<double> tau = rho / (4.0 * beta);
    return overlap_polynomial(tau) * std::exp(-tau) / (64.0 * pi * beta * beta * beta);
}

inline std::complex<double> gaussian_overlap_schrodinger(double t, double s, const std::array<double, 2>& p,
                                                         const std::array<double, 2>& q) {
    const double dx0 = p[0] - q[0], dx1 = p[1] - q[1];
    return gaussian_overlap_from_rho(t - s, dx0 * dx0 + dx1 * dx1);
}

}  // namespace harmlab
