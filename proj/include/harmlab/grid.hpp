#pragma once

// Uniform periodic grids on [-X, X)^d and complex fields sampled on them.
//
// Spectral layout follows the usual FFT index convention: along each axis the
// frequency of index k is dzeta * k for k < n/2 and dzeta * (k - n) otherwise,
// so the spectral grid covers [-pi/dx, pi/dx)^d with dzeta = pi/X.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fft.hpp"

namespace harmlab {

struct Grid {
    int d = 0;            // dimension, 1..3
    std::size_t n = 0;    // points per axis, power of two >= 8
    double X = 0.0;       // half-extent of the physical box

    double dx() const { return 2.0 * X / double(n); }
    double dzeta() const { return 3.14159265358979323846264338327950288 / X; }
    double zeta_max() const { return dzeta() * double(n) / 2.0; }  // == pi/dx

    std::size_t size() const {
        std::size_t s = 1;
        for (int a = 0; a < d; ++a) s *= n;
        return s;
    }

    // Physical coordinate of a flat row-major index.
    std::array<double, 3> point(std::size_t flat) const {
        std::array<double, 3> x{0, 0, 0};
        for (int a = d - 1; a >= 0; --a) {
            x[a] = -X + double(flat % n) * dx();
            flat /= n;
        }
        return x;
    }

    // Spectral coordinate of a flat row-major index.
    std::array<double, 3> freq(std::size_t flat) const {
        std::array<double, 3> z{0, 0, 0};
        for (int a = d - 1; a >= 0; --a) {
            const std::size_t k = flat % n;
            const double kk = (k < n / 2) ? double(k) : double(k) - double(n);
            z[a] = dzeta() * kk;
            flat /= n;
        }
        return z;
    }

    bool operator==(const Grid& o) const { return d == o.d && n == o.n && X == o.X; }
};

inline Grid create_grid(int d, std::size_t n, double X) {
    if (d < 1 || d > 3) throw std::invalid_argument("create_grid: dimension must be 1, 2 or 3");
    if (n < 8 || !detail::is_pow2(n)) throw std::invalid_argument("create_grid: n must be a power of two >= 8");
    if (!(X > 0.0)) throw std::invalid_argument("create_grid: half-extent must be positive");
    return Grid{d, n, X};
}

enum class Domain { physical, spectral };

struct SampledField {
    Grid grid;
    Domain domain = Domain::physical;
    std::vector<cplx> values;

    SampledField() = default;
    SampledField(const Grid& g, Domain dom) : grid(g), domain(dom), values(g.size(), cplx{0.0, 0.0}) {}

    // Quadrature weight of one cell in the field's current domain.
    double cell_weight() const {
        const double w = (domain == Domain::physical)
                             ? grid.dx()
                             : grid.dzeta() / (2.0 * 3.14159265358979323846264338327950288);
        double p = 1.0;
        for (int a = 0; a < grid.d; ++a) p *= w;
        return p;
    }

    double l2_norm() const {
        double s = 0.0;
        for (const cplx& v : values) s += std::norm(v);
        return std::sqrt(s * cell_weight());
    }
};

// Build a field from a callable of the physical or spectral coordinate.
template <typename F>
SampledField make_field(const Grid& g, Domain dom, F&& f) {
    SampledField out(g, dom);
    const std::size_t total = g.size();
    for (std::size_t i = 0; i < total; ++i)
        out.values[i] = (dom == Domain::physical) ? cplx(f(g.point(i))) : cplx(f(g.freq(i)));
    return out;
}

}  // namespace harmlab
