#pragma once

// Iterative radix-2 complex FFT for power-of-two lengths, plus helpers to
// apply it along the axes of a row-major d-dimensional array.

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace harmlab {

using cplx = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Twiddle table and bit-reversal permutation for one transform length.
struct FftPlan {
    std::size_t n;
    std::vector<std::size_t> rev;
    std::vector<cplx> w;  // w[k] = exp(-2*pi*i*k/n), k < n/2

    explicit FftPlan(std::size_t len) : n(len), rev(len), w(len / 2) {
        std::size_t lg = 0;
        while ((std::size_t{1} << lg) < n) ++lg;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (std::size_t b = 0; b < lg; ++b)
                if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (lg - 1 - b);
            rev[i] = r;
        }
        const double step = -2.0 * 3.14159265358979323846264338327950288 / double(n);
        for (std::size_t k = 0; k < n / 2; ++k)
            w[k] = std::polar(1.0, step * double(k));
    }

    // In-place DFT of contiguous data; inverse applies conjugate twiddles and
    // leaves the result unnormalized (caller scales by 1/n).
    void run(cplx* a, bool inverse) const {
        for (std::size_t i = 0; i < n; ++i)
            if (rev[i] > i) std::swap(a[i], a[rev[i]]);
        for (std::size_t len = 2; len <= n; len <<= 1) {
            const std::size_t half = len >> 1;
            const std::size_t stride = n / len;
            for (std::size_t base = 0; base < n; base += len) {
                for (std::size_t k = 0; k < half; ++k) {
                    cplx tw = w[k * stride];
                    if (inverse) tw = std::conj(tw);
                    const cplx u = a[base + k];
                    const cplx v = a[base + k + half] * tw;
                    a[base + k] = u + v;
                    a[base + k + half] = u - v;
                }
            }
        }
    }
};

inline const FftPlan& plan_for(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::unique_ptr<FftPlan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<FftPlan>(n);
    return *slot;
}

}  // namespace detail

// Unnormalized DFT along every axis of a row-major array with `dims[a]`
// points on axis a. inverse=true uses e^{+i...} twiddles, still unnormalized.
inline void fft_all_axes(cplx* data, const std::vector<std::size_t>& dims, bool inverse) {
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (!detail::is_pow2(d)) throw std::invalid_argument("fft: axis length must be a power of two");
        total *= d;
    }
    std::vector<cplx> line;
    std::size_t stride_after = 1;  // product of dims after the current axis
    for (std::size_t axis = dims.size(); axis-- > 0;) {
        const std::size_t n = dims[axis];
        const auto& plan = detail::plan_for(n);
        const std::size_t block = n * stride_after;
        line.resize(n);
        for (std::size_t start = 0; start < total; start += block) {
            for (std::size_t off = 0; off < stride_after; ++off) {
                cplx* base = data + start + off;
                if (stride_after == 1) {
                    plan.run(base, inverse);
                } else {
                    for (std::size_t k = 0; k < n; ++k) line[k] = base[k * stride_after];
                    plan.run(line.data(), inverse);
                    for (std::size_t k = 0; k < n; ++k) base[k * stride_after] = line[k];
                }
            }
        }
        stride_after *= n;
    }
}

}  // namespace harmlab
