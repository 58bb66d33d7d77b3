#pragma once

// Globally adaptive Gauss-Kronrod 15(7) quadrature on finite intervals, with
// a rational map for semi-infinite ones. Works for real- and complex-valued
// integrands; grids never touch interval endpoints.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace harmlab {

namespace detail {

// QUADPACK dqk15 abscissae and weights (positive half).
inline constexpr double gk_x[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
inline constexpr double gk_wk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.10479001032225018, 0.14065325971552592,
    0.16900472663926790, 0.19035057806478541, 0.20443294007529889, 0.20948214108472783};
inline constexpr double gk_wg[4] = {
    0.12948496616886969, 0.27970539148927666, 0.38183005050511894, 0.41795918367346939};

template <typename T>
double err_abs(const T& v) {
    if constexpr (std::is_same_v<T, std::complex<double>>)
        return std::abs(v);
    else
        return std::fabs(v);
}

template <typename F, typename T>
void gk15(F& f, double a, double b, T& kronrod, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T resk = T{}, resg = T{};
    for (int j = 0; j < 8; ++j) {
        const double dx = h * gk_x[j];
        T fv = f(c - dx);
        if (j != 7) fv += f(c + dx);
        resk += gk_wk[j] * fv;
        if (j == 7)
            resg += gk_wg[3] * fv;
        else if (j % 2 == 1)
            resg += gk_wg[j / 2] * fv;
    }
    kronrod = resk * h;
    err = err_abs<T>((resk - resg) * h);
}

}  // namespace detail

struct QuadOptions {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;
    int max_intervals = 50000;
};

// Integrate f over [a, b]; subdivides the worst interval until the summed
// error estimate meets max(abs_tol, rel_tol * |result|).
template <typename T = double, typename F>
T integrate(F&& f, double a, double b, QuadOptions opt = {}) {
    struct Seg {
        double a, b, err;
        T val;
    };
    std::vector<Seg> segs;
    Seg s{a, b, 0.0, T{}};
    detail::gk15(f, a, b, s.val, s.err);
    segs.push_back(s);
    T total = s.val;
    double total_err = s.err;
    while (true) {
        const double target = std::max(opt.abs_tol, opt.rel_tol * detail::err_abs<T>(total));
        if (total_err <= target) break;
        if (int(segs.size()) >= opt.max_intervals)
            throw std::runtime_error("integrate: interval budget exhausted");
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].err > segs[worst].err) worst = i;
        const Seg cur = segs[worst];
        const double mid = 0.5 * (cur.a + cur.b);
        if (mid <= cur.a || mid >= cur.b) break;  // interval at rounding limit
        Seg left{cur.a, mid, 0.0, T{}}, right{mid, cur.b, 0.0, T{}};
        detail::gk15(f, left.a, left.b, left.val, left.err);
        detail::gk15(f, right.a, right.b, right.val, right.err);
        total += left.val + right.val - cur.val;
        total_err += left.err + right.err - cur.err;
        segs[worst] = left;
        segs.push_back(right);
    }
    return total;
}

// Integrate f over [a, infinity) through t = a + u/(1-u).
template <typename T = double, typename F>
T integrate_to_inf(F&& f, double a, QuadOptions opt = {}) {
    auto mapped = [&](double u) {
        const double om = 1.0 - u;
        return T(f(a + u / om)) * (1.0 / (om * om));
    };
    return integrate<T>(mapped, 0.0, 1.0, opt);
}

}  // namespace harmlab
