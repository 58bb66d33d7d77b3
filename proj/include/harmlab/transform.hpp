#pragma once

// Fourier transform with one fixed convention, applied to SampledField:
//
//   forward:  fhat(zeta) = integral f(x) e^{-i x.zeta} dx
//   inverse:  f(x) = (2 pi)^{-d} integral fhat(zeta) e^{+i x.zeta} dzeta
//
// Discretely the integrals are the uniform-grid Riemann sums, which makes the
// round trip exact up to rounding and gives the Parseval identity
// dx^d sum |f|^2 = (dzeta/2pi)^d sum |fhat|^2 exactly on the grid.

#include <cmath>
#include <functional>
#include <stdexcept>

#include "grid.hpp"

namespace harmlab {

enum class Direction { forward, inverse };

namespace detail {

// Multiply values by (-1)^(k1+...+kd). With the physical origin at index
// n/2 and spectral nodes in FFT wrap order, e^{-i x_j zeta_k} factors into
// the plain DFT phase times exactly this sign pattern in k.
inline void checkerboard(std::vector<cplx>& v, const Grid& g) {
    const std::size_t n = g.n;
    const std::size_t total = v.size();
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t flat = i, parity = 0;
        for (int a = 0; a < g.d; ++a) {
            parity ^= flat % n & 1;
            flat /= n;
        }
        if (parity) v[i] = -v[i];
    }
}

}  // namespace detail

inline SampledField transform(const SampledField& f, Direction dir) {
    if (dir == Direction::forward && f.domain != Domain::physical)
        throw std::invalid_argument("transform: forward expects a physical-domain field");
    if (dir == Direction::inverse && f.domain != Domain::spectral)
        throw std::invalid_argument("transform: inverse expects a spectral-domain field");

    SampledField out = f;
    const Grid& g = f.grid;
    std::vector<std::size_t> dims(std::size_t(g.d), g.n);

    if (dir == Direction::forward) {
        fft_all_axes(out.values.data(), dims, false);
        detail::checkerboard(out.values, g);
        double scale = 1.0;
        for (int a = 0; a < g.d; ++a) scale *= g.dx();
        for (cplx& v : out.values) v *= scale;
        out.domain = Domain::spectral;
    } else {
        detail::checkerboard(out.values, g);
        fft_all_axes(out.values.data(), dims, true);
        double scale = 1.0;
        for (int a = 0; a < g.d; ++a) scale *= g.dzeta() / (2.0 * 3.14159265358979323846264338327950288);
        for (cplx& v : out.values) v *= scale;
        out.domain = Domain::physical;
    }
    return out;
}

// Pointwise product with a multiplier m(zeta) in the spectral domain.
// Throws if the multiplier is not finite at some grid node; singular limits
// are the caller's responsibility.
template <typename M>
SampledField apply_multiplier(const SampledField& f, M&& m) {
    if (f.domain != Domain::spectral)
        throw std::invalid_argument("apply_multiplier: field must be spectral");
    SampledField out = f;
    const std::size_t total = out.values.size();
    for (std::size_t i = 0; i < total; ++i) {
        const cplx mv = cplx(m(f.grid.freq(i)));
        if (!std::isfinite(mv.real()) || !std::isfinite(mv.imag()))
            throw std::domain_error("apply_multiplier: non-finite multiplier value at a grid node");
        out.values[i] *= mv;
    }
    return out;
}

}  // namespace harmlab
