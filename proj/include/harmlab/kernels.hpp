#pragma once

// Two-time kernels, their quadratic forms with a diagonal-band exclusion, and
// the explicit expected-kernel formulas used by the divergence experiments.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "brownian.hpp"
#include "hardy.hpp"
#include "propagators.hpp"
#include "quadrature.hpp"

namespace harmlab {

// Discretized kernel K(t_i, s_j) with trapezoid weights and an excluded
// diagonal band.
struct KernelMatrix {
    double t0 = 0.0;
    double dt = 0.0;
    std::size_t count = 0;
    std::size_t band_steps = 0;  // lags |i - j| < band_steps are excluded
    std::vector<std::complex<double>> entries;  // count * count, row-major

    std::complex<double>& at(std::size_t i, std::size_t j) { return entries[i * count + j]; }
    const std::complex<double>& at(std::size_t i, std::size_t j) const { return entries[i * count + j]; }

    double weight(std::size_t i) const { return (i == 0 || i + 1 == count) ? 0.5 * dt : dt; }

    std::complex<double> quadratic_form(const TimeProfile& alpha) const {
        if (alpha.count() != count) throw std::invalid_argument("quadratic_form: profile size mismatch");
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < count; ++j) {
                const std::size_t lag = i > j ? i - j : j - i;
                if (lag < band_steps) continue;
                acc += weight(i) * weight(j) * at(i, j) * alpha.values[i] * std::conj(alpha.values[j]);
            }
        return acc;
    }
};

template <typename K>
KernelMatrix build_kernel_matrix(double t0, double dt, std::size_t count, std::size_t band_steps, K&& kernel) {
    KernelMatrix m;
    m.t0 = t0;
    m.dt = dt;
    m.count = count;
    m.band_steps = band_steps;
    m.entries.resize(count * count);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
            m.at(i, j) = kernel(t0 + dt * double(i), t0 + dt * double(j));
    return m;
}

// ---------------------------------------------------------------------------
// Point-mass form: double-time quadrature of
//   -(alpha_t conj(alpha_s) / (4 pi i (t-s))) exp(|p_t - p_s|^2 / (i (t-s)))
// over the profile's square, pairs with |t - s| < eps excluded.

struct FormValue {
    std::complex<double> value{0.0, 0.0};
    double abs_mass = 0.0;  // quadrature of |kernel|, same excluded band
};

namespace detail {

inline std::size_t band_steps_for(double eps, double dt) {
    // smallest lag m with m*dt >= eps (tolerant of rounding)
    return std::size_t(std::ceil(eps / dt - 1e-9));
}

// Shared pair loop; kern(i, j) must be Hermitian (kern(j,i) = conj kern(i,j)).
template <typename K>
FormValue hermitian_pair_sum(const TimeProfile& alpha, std::size_t min_lag, K&& kern) {
    FormValue out;
    const std::size_t n = alpha.count();
    double mass = 0.0;
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = alpha.weight(i);
        for (std::size_t j = i + std::max<std::size_t>(min_lag, 1); j < n; ++j) {
            const std::complex<double> k = kern(i, j);
            const double w = wi * alpha.weight(j);
            acc += w * 2.0 * k.real();  // k(i,j) + k(j,i) = 2 Re k for Hermitian kernels
            mass += w * 2.0 * std::abs(k);
        }
    }
    out.value = acc;
    out.abs_mass = mass;
    return out;
}

}  // namespace detail

inline FormValue point_mass_form(const TimeProfile& alpha, const Path& path, double eps) {
    check_profile(alpha);
    if (path.count() != alpha.count() || path.dt != alpha.dt || path.t0 != alpha.t0)
        throw std::invalid_argument("point_mass_form: path must be sampled on the profile grid");
    if (eps < 2.0 * alpha.dt - 1e-12) throw std::invalid_argument("point_mass_form: eps below grid resolution");
    const std::size_t min_lag = detail::band_steps_for(eps, alpha.dt);
    return detail::hermitian_pair_sum(alpha, min_lag, [&](std::size_t i, std::size_t j) {
        const double u = alpha.time(i) - alpha.time(j);
        const double rho = path.sq_dist(i, j);
        // -1/(4 pi i u) = i/(4 pi u);  exp(rho/(i u)) = exp(-i rho / u)
        const std::complex<double> pref(0.0, 1.0 / (4.0 * pi * u));
        return pref * std::polar(1.0, -rho / u) * alpha.values[i] * std::conj(alpha.values[j]);
    });
}

// Kernel absolute mass for a unit profile equals the band-excluded integral
// S(eps) of 1/|t-s| over the square, divided by 4 pi. Analytic value for a
// square of side L:
inline double s_integral_analytic(double eps, double L) {
    return 2.0 * (L * std::log(L / eps) - (L - eps));
}

inline double s_integral_quadrature(double eps, double L) {
    QuadOptions opt;
    opt.rel_tol = 1e-12;
    return 2.0 * integrate([L](double u) { return (L - u) / u; }, eps, L, opt);
}

// ---------------------------------------------------------------------------
// Scaled-path form: (1/(4 pi i (t-s))) exp(r |p_t-p_s|^2 / (i(t-s))) over the
// path's own interval, diagonal band excluded.

inline FormValue scaled_path_form(const Path& path, double r, double eps) {
    TimeProfile ones;
    ones.t0 = path.t0;
    ones.dt = path.dt;
    ones.values.assign(path.count(), std::complex<double>{1.0, 0.0});
    if (eps < 2.0 * path.dt - 1e-12) throw std::invalid_argument("scaled_path_form: eps below grid resolution");
    const std::size_t min_lag = detail::band_steps_for(eps, path.dt);
    return detail::hermitian_pair_sum(ones, min_lag, [&](std::size_t i, std::size_t j) {
        const double u = path.time(i) - path.time(j);
        const double rho = path.sq_dist(i, j);
        const std::complex<double> pref(0.0, -1.0 / (4.0 * pi * u));  // 1/(4 pi i u)
        return pref * std::polar(1.0, -r * rho / u);
    });
}

// ---------------------------------------------------------------------------
// Smooth cutoff F(rho) = rho on [-1, 1], rolled off to zero by |rho| = 2 with
// an e^{-1/v}-based C-infinity step.

inline double smooth_cutoff(double rho) {
    const double a = std::fabs(rho);
    if (a >= 2.0) return 0.0;
    if (a <= 1.0) return rho;
    auto g = [](double v) { return v > 0.0 ? std::exp(-1.0 / v) : 0.0; };
    const double s = a - 1.0;
    const double b = g(1.0 - s) / (g(1.0 - s) + g(s));
    return rho * b;
}

// int |Fhat| over [-W, W]; F odd gives Fhat(w) = -2i int_0^2 F sin(w rho) drho.
inline double cutoff_l1_mass(double W = 80.0, std::size_t omega_points = 1600) {
    QuadOptions opt;
    opt.rel_tol = 1e-9;
    opt.abs_tol = 1e-13;
    const double dw = W / double(omega_points);
    double total = 0.0;
    for (std::size_t k = 0; k <= omega_points; ++k) {
        const double w = dw * double(k);
        const double im = -2.0 * integrate([w](double rho) { return smooth_cutoff(rho) * std::sin(w * rho); },
                                           0.0, 2.0, opt);
        const double tw = (k == 0 || k == omega_points) ? 0.5 * dw : dw;
        total += tw * std::fabs(im);
    }
    return 2.0 * total;  // both signs of omega
}

// ---------------------------------------------------------------------------
// Two-time kernel for the Laplacian-of-Gaussian data along a planar path, and
// its expectation over the Brownian coordinate.

inline std::complex<double> gaussian_data_kernel(double t, double s, const Path& path2d,
                                                 std::size_t i, std::size_t j) {
    if (path2d.dim != 2) throw std::invalid_argument("gaussian_data_kernel: planar path expected");
    const std::array<double, 2> p{path2d.coord(i, 0), path2d.coord(i, 1)};
    const std::array<double, 2> q{path2d.coord(j, 0), path2d.coord(j, 1)};
    return gaussian_overlap_schrodinger(t, s, p, q);
}

// Planar path (t, sqrt(theta) b_t) over a Brownian sample.
inline Path drifting_brownian_path(double t0, double dt, std::size_t count, double theta, const SeedSpec& seed) {
    const Path b = sample_brownian(t0, dt, count, seed);
    Path p;
    p.t0 = t0;
    p.dt = dt;
    p.dim = 2;
    p.seed = seed;
    p.points.resize(2 * count);
    const double st = std::sqrt(theta);
    for (std::size_t i = 0; i < count; ++i) {
        p.points[2 * i] = b.time(i);
        p.points[2 * i + 1] = st * b.points[i];
    }
    return p;
}

// Leading asymptotic of E K(u), parametrized so both recorded constant sets
// fit one formula:
//   E K(u) ~ -c0 u^2 e^{-i carrier u} (a1 - i a2 sgn u) / (4 pi (2 - iu)^3),
// a1 + i a2 = (1 - 2 i theta_eff)^{-1/2}.
struct ExpectedKernelConstants {
    double c0;
    double carrier;
    double theta_eff_scale;  // theta_eff = scale * theta

    static ExpectedKernelConstants display() { return {16.0 * std::exp(-2.0), 1.0, 1.0}; }
    static ExpectedKernelConstants derived() { return {std::exp(-0.5) / 16.0, 0.25, 0.25}; }
};

inline std::complex<double> expected_kernel_leading(double u, double theta, const ExpectedKernelConstants& c) {
    const std::complex<double> a = gaussian_quadratic_char(c.theta_eff_scale * theta);
    const double sgn_u = (u > 0.0) - (u < 0.0);
    const std::complex<double> character(a.real(), -a.imag() * sgn_u);
    const std::complex<double> beta(2.0, -u);
    return -c.c0 * u * u * std::polar(1.0, -c.carrier * u) * character / (4.0 * pi * beta * beta * beta);
}

// Exact expectation of the pinned two-time kernel over the Brownian
// coordinate. With tau = A + B gamma^2 affine in gamma^2,
//   E[P(tau) e^{-tau}] = e^{-A} (16 A^2 E0 + 32 A B E1 + 16 B^2 E2
//                                - 64 A E0 - 64 B E1 + 32 E0),
// E0 = (1+2B)^{-1/2}, E1 = (1+2B)^{-3/2}, E2 = 3 (1+2B)^{-5/2}.
inline std::complex<double> expected_kernel_exact(double u, double theta) {
    const std::complex<double> beta(2.0, -u);
    const std::complex<double> scale = (std::complex<double>(2.0, u)) / (4.0 * (4.0 + u * u));
    const std::complex<double> A = scale * (u * u);
    const std::complex<double> B = scale * (theta * std::fabs(u));
    const std::complex<double> opb = 1.0 + 2.0 * B;
    const std::complex<double> e0 = std::exp(-0.5 * std::log(opb));
    const std::complex<double> e1 = e0 / opb;
    const std::complex<double> e2 = 3.0 * e1 / opb;
    const std::complex<double> poly =
        16.0 * A * A * e0 + 32.0 * A * B * e1 + 16.0 * B * B * e2 - 64.0 * A * e0 - 64.0 * B * e1 + 32.0 * e0;
    return std::exp(-A) * poly / (64.0 * pi * beta * beta * beta);
}

// ---------------------------------------------------------------------------
// Resonant-profile quadratic form of a translation-invariant expected kernel
// on [-N, N]: alpha_t = e^{i c t}, normalized to unit L2 quadrature norm.
// Lag sums keep this O(count) in memory.

template <typename K>
std::complex<double> toeplitz_resonant_form(double N, double dt, double carrier, std::size_t band_steps, K&& ek) {
    const std::size_t count = std::size_t(std::llround(2.0 * N / dt)) + 1;
    const double span = dt * double(count - 1);
    const double norm2 = span;  // sum of trapezoid weights
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t m = std::max<std::size_t>(band_steps, 1); m < count; ++m) {
        const double u = dt * double(m);
        // sum over i of w_i w_{i+m}
        const double wsum = (m + 1 == count) ? 0.25 * dt * dt : dt * dt * (double(count - m) - 1.0);
        const std::complex<double> k = ek(u);
        acc += 2.0 * wsum * (k * std::polar(1.0, carrier * u)).real();
    }
    return acc / norm2;
}

}  // namespace harmlab
