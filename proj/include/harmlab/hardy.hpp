#pragma once

// Complex time profiles on a uniform grid, trapezoid quadrature, and the
// Hardy averaging operator with its discrete adjoint.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace harmlab {

struct TimeProfile {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<std::complex<double>> values;

    std::size_t count() const { return values.size(); }
    double time(std::size_t i) const { return t0 + dt * double(i); }
    double end() const { return time(count() - 1); }
    double weight(std::size_t i) const { return (i == 0 || i + 1 == count()) ? 0.5 * dt : dt; }
};

inline void check_profile(const TimeProfile& a) {
    if (a.count() < 2 || !(a.dt > 0.0))
        throw std::invalid_argument("profile needs >= 2 nodes and dt > 0");
}

inline std::complex<double> inner(const TimeProfile& a, const TimeProfile& b) {
    if (a.count() != b.count()) throw std::invalid_argument("inner: size mismatch");
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < a.count(); ++i) s += a.weight(i) * a.values[i] * std::conj(b.values[i]);
    return s;
}

inline double l2_norm(const TimeProfile& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.count(); ++i) s += a.weight(i) * std::norm(a.values[i]);
    return std::sqrt(s);
}

namespace detail {
inline void check_hardy_domain(const TimeProfile& a) {
    check_profile(a);
    if (a.t0 != 0.0)
        throw std::invalid_argument("hardy operators expect a profile grid starting at t = 0");
}
}  // namespace detail

// H alpha(t) = (1/t) int_0^t alpha(s) ds, cumulative trapezoid sum; the t = 0
// node carries the limit value alpha(0).
inline TimeProfile hardy_transform(const TimeProfile& alpha) {
    detail::check_hardy_domain(alpha);
    TimeProfile out = alpha;
    out.values[0] = alpha.values[0];
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 1; i < alpha.count(); ++i) {
        acc += 0.5 * alpha.dt * (alpha.values[i - 1] + alpha.values[i]);
        out.values[i] = acc / alpha.time(i);
    }
    return out;
}

// Exact adjoint of hardy_transform under the trapezoid inner product. For
// interior nodes this is precisely the trapezoid quadrature of
// int_t^T alpha(s)/s ds (the upper limit truncated at the support end); the
// t = 0 node additionally inherits the dual of the limit row of H.
inline TimeProfile hardy_adjoint(const TimeProfile& alpha) {
    detail::check_hardy_domain(alpha);
    const std::size_t n = alpha.count();
    // suffix[i] = sum_{k >= i} (w_k / t_k) alpha_k  for i >= 1
    std::vector<std::complex<double>> suffix(n + 1, std::complex<double>{0.0, 0.0});
    for (std::size_t k = n; k-- > 1;)
        suffix[k] = suffix[k + 1] + (alpha.weight(k) / alpha.time(k)) * alpha.values[k];
    TimeProfile out = alpha;
    out.values[0] = alpha.values[0] + suffix[1];
    for (std::size_t j = 1; j < n; ++j)
        out.values[j] = 0.5 * alpha.dt * alpha.values[j] / alpha.time(j) + suffix[j + 1];
    return out;
}

// Indicator of [0, edge] sampled with a half-weight value at the jump node,
// which keeps the cumulative trapezoid of the profile exact past the edge.
// The edge must lie on the grid.
inline TimeProfile box_profile(double edge, double T, double dt) {
    TimeProfile a;
    a.t0 = 0.0;
    a.dt = dt;
    const std::size_t n = std::size_t(std::llround(T / dt)) + 1;
    a.values.assign(n, std::complex<double>{0.0, 0.0});
    const std::size_t kedge = std::size_t(std::llround(edge / dt));
    if (std::fabs(double(kedge) * dt - edge) > 1e-12 * std::max(1.0, edge))
        throw std::invalid_argument("box_profile: edge must lie on the grid");
    for (std::size_t i = 0; i < n && i <= kedge; ++i)
        a.values[i] = (i == kedge) ? 0.5 : 1.0;
    return a;
}

}  // namespace harmlab
