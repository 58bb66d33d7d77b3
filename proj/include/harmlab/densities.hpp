#pragma once

// Spectral densities behind the divergence arguments: the planar Lorentzian
// density with its truncated singular integral, the conical density for the
// wave multiplier with its cylindrical integral, and the split-box test
// function with its closed-form transform.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "gaussian.hpp"
#include "grid.hpp"
#include "quadrature.hpp"

namespace harmlab {

// ---------------------------------------------------------------------------
// Planar density k(omega, zeta) = 4 zeta2^2 / (4 (omega + |zeta|^2 - zeta1)^2 + zeta2^4).

inline double schrodinger_spectral_density(double omega, double z1, double z2) {
    const double a = omega + z1 * z1 + z2 * z2 - z1;
    const double z22 = z2 * z2;
    return 4.0 * z22 / (4.0 * a * a + z22 * z22);
}

// Weight |ghat(zeta)|^2 with ghat = |zeta|^2 e^{-|zeta|^2}.
inline double log_gaussian_weight_sq(double z1, double z2) {
    const double r2 = z1 * z1 + z2 * z2;
    const double g = r2 * std::exp(-r2);
    return g * g;
}

// Integral of k(omega, .) |ghat|^2 over the plane minus a disc of radius
// `exclusion` around (1/2, 0), in polar coordinates about that point. The
// density is singular there exactly when omega = 1/4.
inline double lhat_truncated(double omega, double exclusion, double rel_tol = 1e-8) {
    if (!(exclusion > 0.0)) throw std::invalid_argument("lhat_truncated: exclusion radius must be positive");
    const double outer = 12.0;  // weight ~ e^{-2 r^2}: nothing beyond
    QuadOptions inner_opt;
    inner_opt.rel_tol = rel_tol * 0.1;
    inner_opt.abs_tol = 1e-14;
    QuadOptions outer_opt;
    outer_opt.rel_tol = rel_tol;
    outer_opt.abs_tol = 1e-12;
    auto ring = [&](double r) {
        auto along = [&](double phi) {
            const double z1 = 0.5 + r * std::cos(phi);
            const double z2 = r * std::sin(phi);
            return schrodinger_spectral_density(omega, z1, z2) * log_gaussian_weight_sq(z1, z2);
        };
        return r * integrate(along, 0.0, 2.0 * pi, inner_opt);
    };
    return integrate(ring, exclusion, outer, outer_opt);
}

// ---------------------------------------------------------------------------
// Conical densities in three dimensions.

inline std::array<double, 2> wave_spectral_density(double omega, double z1, double z2, double z3) {
    const double tr2 = z2 * z2 + z3 * z3;
    const double za = std::sqrt(z1 * z1 + tr2);
    const double am = omega - z1 + za;
    const double ap = omega - z1 - za;
    const double k1 = 4.0 * tr2 / (4.0 * am * am + tr2 * tr2);
    const double k2 = 4.0 * tr2 / (4.0 * ap * ap + tr2 * tr2);
    return {k1, k2};
}

// k1 at omega = 0 in cylindrical coordinates (z along the first axis, r the
// transverse radius).
inline double cone_density(double z, double r) {
    const double gap = std::sqrt(z * z + r * r) - z;
    const double r2 = r * r;
    return 4.0 * r2 / (4.0 * gap * gap + r2 * r2);
}

struct ConeIntegral {
    double value = 0.0;       // cylindrical integral of k1 over the cone, r >= eps
    double comparison = 0.0;  // analytic lower-bound value int (8 pi z^2/(4+z^2)) ln(z/eps) dz
};

inline ConeIntegral cone_integral(double eps, double rel_tol = 1e-7) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("cone_integral: eps must lie in (0, 1)");
    QuadOptions inner_opt;
    inner_opt.rel_tol = rel_tol * 0.1;
    inner_opt.abs_tol = 1e-14;
    QuadOptions outer_opt;
    outer_opt.rel_tol = rel_tol;
    outer_opt.abs_tol = 1e-12;
    ConeIntegral out;
    out.value = integrate(
        [&](double z) {
            return integrate([&](double r) { return cone_density(z, r) * 2.0 * pi * r; }, eps, z, inner_opt);
        },
        eps, 1.0, outer_opt);
    out.comparison = integrate(
        [&](double z) { return 8.0 * pi * z * z / (4.0 + z * z) * std::log(z / eps); }, eps, 1.0, outer_opt);
    return out;
}

// Slope oracle for the comparison series: int_0^1 8 pi z^2/(4+z^2) dz.
inline double cone_comparison_slope_oracle() {
    QuadOptions opt;
    opt.rel_tol = 1e-12;
    return integrate([](double z) { return 8.0 * pi * z * z / (4.0 + z * z); }, 0.0, 1.0, opt);
}

// ---------------------------------------------------------------------------
// Split-box test function: +1 on (0,1] x [-1,1]^2 in the first coordinate,
// -1 mirrored, 0 elsewhere. Jump planes are sampled with averaged values so
// the discrete transform converges at second order.

inline double box_sign_factor(double x)  // odd factor along the first axis
{
    const double a = std::fabs(x);
    if (a > 1.0) return 0.0;
    double v = (a == 1.0) ? 0.5 : (a == 0.0 ? 0.0 : 1.0);
    return x < 0.0 ? -v : v;
}

inline double box_slab_factor(double x)  // even factor along the other axes
{
    const double a = std::fabs(x);
    if (a > 1.0) return 0.0;
    return a == 1.0 ? 0.5 : 1.0;
}

inline SampledField box_test_function(const Grid& g) {
    if (g.d != 3) throw std::invalid_argument("box_test_function: needs a d = 3 grid");
    if (g.X < 2.0) throw std::invalid_argument("box_test_function: grid must span at least [-2, 2)^3");
    return make_field(g, Domain::physical, [](const std::array<double, 3>& x) {
        return cplx(box_sign_factor(x[0]) * box_slab_factor(x[1]) * box_slab_factor(x[2]), 0.0);
    });
}

// Closed-form transform -8 i (1 - cos z1) sin z2 sin z3 / (z1 z2 z3), with the
// removable singularities filled by their limits.
inline std::complex<double> box_transform(double z1, double z2, double z3) {
    const double f1 = (z1 == 0.0) ? 0.0 : (1.0 - std::cos(z1)) / z1;
    const double f2 = (z2 == 0.0) ? 1.0 : std::sin(z2) / z2;
    const double f3 = (z3 == 0.0) ? 1.0 : std::sin(z3) / z3;
    return std::complex<double>(0.0, -8.0) * f1 * f2 * f3;
}

}  // namespace harmlab
