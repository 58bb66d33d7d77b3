#pragma once

// Retarded-kernel pairing for translated bump profiles: the fourfold integral
//   int int int int K_{s+t}(x-y) f_t(x) f_s(y) dy dx dt ds,
// f_t(x) = alpha_t phi(x - c_t) with a mass-one Gaussian bump phi. The
// spatial pairing collapses to the closed form
//   (K_tau * psi)(r) = [erfc((tau-r)/(2 sigma)) - erfc((tau+r)/(2 sigma))] / (8 pi r),
// psi = phi * phi~ (variance 2 sigma^2 per axis), with the r -> 0 limit
// e^{-tau^2/(4 sigma^2)} / (4 pi^{3/2} sigma). The sigma -> 0 limit recovers
// 1/(4 pi r) outside the light ball and 0 inside.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gaussian.hpp"
#include "hardy.hpp"
#include "quadrature.hpp"

namespace harmlab {

inline double bump_pairing(double tau, double r, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("bump_pairing: sigma must be positive");
    if (r < 1e-9 * sigma)
        return std::exp(-tau * tau / (4.0 * sigma * sigma)) / (4.0 * std::pow(pi, 1.5) * sigma);
    return (std::erfc((tau - r) / (2.0 * sigma)) - std::erfc((tau + r) / (2.0 * sigma))) / (8.0 * pi * r);
}

// Same pairing by bipolar-coordinate quadrature; the independent route for
// oracle checks.
inline double bump_pairing_quadrature(double tau, double r, double sigma) {
    const double c = 1.0 / std::pow(4.0 * pi * sigma * sigma, 1.5);
    auto psi_moment = [&](double lo, double hi) {
        QuadOptions opt;
        opt.rel_tol = 1e-10;
        opt.abs_tol = 1e-16;
        return integrate([&](double u) { return u * c * std::exp(-u * u / (4.0 * sigma * sigma)); }, lo, hi, opt);
    };
    QuadOptions opt;
    opt.rel_tol = 1e-8;
    opt.abs_tol = 1e-14;
    const double hi = tau + r + 12.0 * sigma;
    const double val = integrate(
        [&](double s) { return psi_moment(std::fabs(r - s), r + s); }, tau, hi, opt);
    return val / (2.0 * r);
}

struct PairingFamilyMember {
    TimeProfile alpha;                  // nonnegative profile on [0, T]
    std::vector<double> centers;        // 3 * count bump centers
    double sigma = 0.5;
};

struct PairingResult {
    double fourfold = 0.0;       // closed-form spatial pairing, quadrature in time
    double hardy_bound = 0.0;    // (1/(4 pi)) int (H a + H* a) a dt
    double norm_sq = 0.0;        // ||alpha||_2^2
    double ratio = 0.0;          // fourfold / norm_sq
};

inline PairingResult kernel_pairing(const PairingFamilyMember& fam) {
    const TimeProfile& a = fam.alpha;
    check_profile(a);
    if (a.t0 < 0.0) throw std::invalid_argument("kernel_pairing: profile must live in t >= 0");
    if (fam.centers.size() != 3 * a.count())
        throw std::invalid_argument("kernel_pairing: one 3d center per profile node expected");
    PairingResult out;
    const std::size_t n = a.count();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = a.weight(i);
        const double ai = a.values[i].real();
        for (std::size_t j = 0; j < n; ++j) {
            const double tau = a.time(i) + a.time(j);
            double r2 = 0.0;
            for (int c = 0; c < 3; ++c) {
                const double d = fam.centers[3 * i + c] - fam.centers[3 * j + c];
                r2 += d * d;
            }
            acc += wi * a.weight(j) * ai * a.values[j].real() * bump_pairing(tau, std::sqrt(r2), fam.sigma);
        }
    }
    out.fourfold = acc;
    const TimeProfile h = hardy_transform(a);
    const TimeProfile hs = hardy_adjoint(a);
    double bound = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        bound += a.weight(i) * (h.values[i].real() + hs.values[i].real()) * a.values[i].real();
    out.hardy_bound = bound / (4.0 * pi);
    out.norm_sq = l2_norm(a) * l2_norm(a);
    out.ratio = out.fourfold / out.norm_sq;
    return out;
}

}  // namespace harmlab
