#include <catch_amalgamated.hpp>

#include "harmlab/gaussian.hpp"
#include "harmlab/propagators.hpp"
#include "harmlab/quadrature.hpp"
#include <map>

#include "harmlab/rng.hpp"

using namespace harmlab;

namespace {

SampledField random_field(const Grid& g, std::uint64_t stream) {
    SampledField f(g, Domain::physical);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        f.values[i] = cplx(random_normal({55, stream}, 2 * i), random_normal({55, stream}, 2 * i + 1));
    return f;
}

double max_abs_diff(const SampledField& a, const SampledField& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    return worst;
}

}  // namespace

TEST_CASE("free evolution: identity at t = 0, unitary, group law") {
    const Grid g = create_grid(2, 64, 10.0);
    const SampledField f = random_field(g, 1);
    CHECK(max_abs_diff(schrodinger_evolve(f, 0.0), f) / f.l2_norm() < 1e-12);
    for (double t : {0.1, 0.7, 1.0, 10.0})
        CHECK(std::fabs(schrodinger_evolve(f, t).l2_norm() / f.l2_norm() - 1.0) < 1e-9);
    const SampledField ab = schrodinger_evolve(schrodinger_evolve(f, 0.45), 0.3);
    const SampledField once = schrodinger_evolve(f, 0.75);
    CHECK(max_abs_diff(ab, once) / f.l2_norm() < 1e-9);
}

TEST_CASE("free evolution of the gaussian family matches the closed form") {
    const Grid g = create_grid(2, 256, 10.0);
    const SampledField spec = make_field(g, Domain::spectral, [](const std::array<double, 3>& z) {
        return std::exp(-(z[0] * z[0] + z[1] * z[1]));
    });
    const SampledField f = transform(spec, Direction::inverse);
    const SampledField evolved = schrodinger_evolve(f, 1.0);
    const auto closed = gaussian_closed_form(cplx(1.0, -1.0), 2);
    double worst = 0.0;
    for (std::size_t i = 0; i < evolved.values.size(); ++i) {
        const auto x = g.point(i);
        // compare away from the boundary, where periodic images of the spread
        // gaussian sit below 1e-13 of the local value
        if (std::fabs(x[0]) > 4.0 || std::fabs(x[1]) > 4.0) continue;
        const cplx want = closed(std::array<double, 2>{x[0], x[1]});
        worst = std::max(worst, std::abs(evolved.values[i] - want) / std::abs(want));
    }
    CHECK(worst < 1e-7);
}

TEST_CASE("wave multiplier: zero at t = 0, odd in t, energy identity") {
    const Grid g = create_grid(3, 16, 4.0);
    const SampledField f = random_field(g, 2);
    const SampledField zero = wave_evolve(f, 0.0);
    for (const auto& v : zero.values) CHECK(std::abs(v) < 1e-14);
    CHECK(max_abs_diff(wave_evolve(f, -0.8), [&] {
              SampledField neg = wave_evolve(f, 0.8);
              for (auto& v : neg.values) v = -v;
              return neg;
          }()) < 1e-12);

    // |cos(t|z|) fhat|^2 + | |z| sin(t|z|)/|z| fhat |^2 is t-independent
    const SampledField spec = transform(f, Direction::forward);
    auto energy = [&](double t) {
        const SampledField dt_part = apply_multiplier(spec, [t](const std::array<double, 3>& z) {
            return std::cos(t * std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]));
        });
        const SampledField grad_part = apply_multiplier(spec, [t](const std::array<double, 3>& z) {
            const double za = std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]);
            return za * wave_multiplier(t, za);
        });
        const double a = dt_part.l2_norm(), b = grad_part.l2_norm();
        return a * a + b * b;
    };
    const double e0 = energy(0.0);
    for (double t : {0.5, 1.0}) CHECK(std::fabs(energy(t) / e0 - 1.0) < 1e-8);
}

TEST_CASE("resolvent multiplier values and kernel sup norm") {
    CHECK(cosine_resolvent_multiplier(1.0, pi, 0.0) == Catch::Approx(-1.0 / (pi * pi)).epsilon(1e-14));
    CHECK(wave_spatial_kernel(1.0, 1.0) * 4.0 * pi * 1.0 == 1.0);
    CHECK(wave_spatial_kernel(1.0, 2.0) == Catch::Approx(1.0 / (8.0 * pi)).epsilon(1e-15));
    CHECK(wave_spatial_kernel(1.0, 0.5) == 0.0);
    CHECK_THROWS_AS(wave_spatial_kernel(0.0, 0.0), std::invalid_argument);
    const Grid g = create_grid(3, 16, 4.0);
    const SampledField f = random_field(g, 3);
    CHECK_THROWS_AS(cosine_resolvent(f, 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(cosine_resolvent(f, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("damped kernel transform approaches the resolvent multiplier") {
    const double target = std::cos(2.0) / 4.0;
    double prev = 1e300;
    for (double eps : {0.1, 0.03, 0.01}) {
        const double err = std::fabs(wave_kernel_damped_transform(1.0, 2.0, eps) - target);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-2);
}

TEST_CASE("resolvent kernel and multiplier are two routes to one operator") {
    // Both routes use the same one-cell-mollified, gaussian-damped kernel; the
    // sampled-kernel route convolves spectrally, the multiplier route uses a
    // radial quadrature table.
    const Grid g = create_grid(3, 64, 8.0);
    const double t = 1.0, delta = 0.2, w = 3.0 * g.dx();  // damping keeps the kernel inside the box
    auto ramp = [&](double r) {
        const double s = (r - t) / w + 0.5;
        return s <= 0.0 ? 0.0 : (s >= 1.0 ? 1.0 : s * s * (3.0 - 2.0 * s));
    };
    auto kernel = [&](double r) {
        return r == 0.0 ? 0.0 : ramp(r) * std::exp(-delta * r * r) / (4.0 * pi * r);
    };

    const SampledField kern = make_field(g, Domain::physical, [&](const std::array<double, 3>& x) {
        return kernel(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
    });
    const SampledField bump = make_field(g, Domain::physical, [](const std::array<double, 3>& x) {
        return std::exp(-2.0 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
    });

    // convolution route
    SampledField conv_spec = transform(kern, Direction::forward);
    const SampledField bump_spec = transform(bump, Direction::forward);
    for (std::size_t i = 0; i < conv_spec.values.size(); ++i) conv_spec.values[i] *= bump_spec.values[i];
    const SampledField conv = transform(conv_spec, Direction::inverse);

    // multiplier route: mu(|zeta|) = (4 pi / |zeta|) int r K(r) sin(r |zeta|) dr,
    // evaluated by quadrature once per distinct lattice radius
    QuadOptions opt;
    opt.rel_tol = 1e-9;
    opt.abs_tol = 1e-13;
    const double rmax = t + std::sqrt(42.0 / delta);
    std::map<long long, double> mu_cache;
    auto mu = [&](double z2_scaled) {
        const long long key = std::llround(z2_scaled / (g.dzeta() * g.dzeta()));
        auto it = mu_cache.find(key);
        if (it != mu_cache.end()) return it->second;
        const double z = std::sqrt(z2_scaled);
        double v;
        if (key == 0)
            v = 4.0 * pi * integrate([&](double r) { return r * r * kernel(r); }, 0.0, rmax, opt);
        else
            v = (4.0 * pi / z) *
                integrate([&](double r) { return r * kernel(r) * std::sin(r * z); }, 0.0, rmax, opt);
        mu_cache.emplace(key, v);
        return v;
    };
    SampledField mult_spec = apply_multiplier(bump_spec, [&](const std::array<double, 3>& z) {
        return mu(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]);
    });
    const SampledField mult = transform(mult_spec, Direction::inverse);

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < conv.values.size(); ++i) {
        const auto x = g.point(i);
        if (std::fabs(x[0]) > 6.0 || std::fabs(x[1]) > 6.0 || std::fabs(x[2]) > 6.0) continue;
        num += std::norm(conv.values[i] - mult.values[i]);
        den += std::norm(conv.values[i]);
    }
    CHECK(std::sqrt(num / den) < 1e-3);
}

TEST_CASE("product-to-sum identity holds at multiplier level") {
    const Grid g = create_grid(3, 16, 4.0);
    CHECK(composition_identity_check(0.0, 0.0, g) == 0.0);
    CHECK(composition_identity_check(1.0, 2.0, g) < 1e-12);
    for (std::uint64_t k = 0; k < 100; ++k) {
        const double s = 10.0 * (random_uniform({60, k}, 0) - 0.5);
        const double t = 10.0 * (random_uniform({60, k}, 1) - 0.5);
        CHECK(composition_identity_check(s, t, g) < 1e-12);
    }
}

TEST_CASE("point-mass overlap: pinned constant, symmetry, regularized limit") {
    const std::array<double, 2> origin{0.0, 0.0};
    CHECK_THROWS_AS(point_overlap_schrodinger(0.0, origin, origin), std::invalid_argument);
    CHECK_THROWS_AS(point_overlap_schrodinger(1.0, origin, origin, -0.1), std::invalid_argument);

    // coincident points: modulus is (1/4pi)/|t|, cross-checked by the
    // regularized radial quadrature extrapolated along an eps ladder
    for (double t : {0.5, 1.0, 3.0}) {
        CHECK(std::abs(point_overlap_schrodinger(t, origin, origin)) * std::fabs(t) ==
              Catch::Approx(1.0 / (4.0 * pi)).epsilon(1e-12));
    }
    QuadOptions opt;
    opt.rel_tol = 1e-11;
    opt.abs_tol = 1e-15;
    auto reg_quad = [&](double t, double eps) {
        return integrate<cplx>(
                   [&](double r) { return r * std::exp(cplx(-2.0 * eps * r * r, t * r * r)); }, 0.0,
                   std::sqrt(42.0 / eps), opt) /
               (2.0 * pi);
    };
    const cplx q1 = reg_quad(1.0, 0.05), q2 = reg_quad(1.0, 0.025);
    const cplx richardson = 2.0 * q2 - q1;  // first-order eps extrapolation
    CHECK(std::abs(richardson - point_overlap_schrodinger(1.0, origin, origin)) < 2e-3);
    CHECK(std::abs(reg_quad(1.0, 0.05) - point_overlap_schrodinger(1.0, origin, origin, 0.05)) < 1e-9);

    // depends only on |p - q|
    const std::array<double, 2> p{0.3, -0.7}, q{1.1, 0.2};
    CHECK(std::abs(point_overlap_schrodinger(2.0, p, q) - point_overlap_schrodinger(2.0, q, p)) < 1e-15);

    // eps ladder converges to the closed form, gap shrinking at least 5x
    const std::array<double, 2> e1{1.0, 0.0};
    const cplx v0 = point_overlap_schrodinger(1.0, e1, origin, 0.0);
    const double gap_big = std::abs(point_overlap_schrodinger(1.0, e1, origin, 0.1) - v0);
    const double gap_small = std::abs(point_overlap_schrodinger(1.0, e1, origin, 0.01) - v0);
    CHECK(gap_small < gap_big);
    CHECK(gap_big / gap_small >= 5.0);
}

TEST_CASE("two-time gaussian-data overlap against the spectral quadrature oracle") {
    QuadOptions opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-14;
    for (std::uint64_t k = 0; k < 50; ++k) {
        const SeedSpec s{81, k};
        const double t = 6.0 * (random_uniform(s, 0) - 0.5);
        const double u = 6.0 * (random_uniform(s, 1) - 0.5);
        const std::array<double, 2> p{3.0 * (random_uniform(s, 2) - 0.5), 3.0 * (random_uniform(s, 3) - 0.5)};
        const std::array<double, 2> q{3.0 * (random_uniform(s, 4) - 0.5), 3.0 * (random_uniform(s, 5) - 0.5)};
        const cplx closed = gaussian_overlap_schrodinger(t, t - u, p, q);
        const double d0 = q[0] - p[0], d1 = q[1] - p[1];
        auto inner = [&](double z1) {
            return integrate<cplx>(
                [&](double z2) {
                    const double r2 = z1 * z1 + z2 * z2;
                    return r2 * r2 * std::exp(cplx(-2.0 * r2, u * r2 + z1 * d0 + z2 * d1));
                },
                -7.0, 7.0, opt);
        };
        const cplx oracle = integrate<cplx>(inner, -7.0, 7.0, opt) / (4.0 * pi * pi);
        CHECK(std::abs(closed - oracle) / std::abs(closed) < 1e-7);
    }
}

TEST_CASE("two-time overlap: equal-time value, polynomial, far-time decay") {
    QuadOptions opt;
    opt.rel_tol = 1e-12;
    const double oracle =
        integrate([](double r) { return std::pow(r, 5) * std::exp(-2.0 * r * r); }, 0.0, 12.0, opt) /
        (2.0 * pi);
    const cplx equal = gaussian_overlap_from_rho(0.0, 0.0);
    CHECK(equal.imag() == 0.0);
    CHECK(equal.real() == Catch::Approx(oracle).epsilon(1e-10));

    CHECK(overlap_polynomial(0.0) == 32.0);
    CHECK(overlap_polynomial(2.0) == -32.0);
    CHECK(overlap_polynomial(4.0) == 32.0);

    // coincident centers, |t - s| = 100: modulus below C/|u| with C fitted
    // from the mid-range leading term
    const double c_fit = std::abs(gaussian_overlap_from_rho(50.0, 0.0)) * 50.0 * 1.05;
    CHECK(std::abs(gaussian_overlap_from_rho(100.0, 0.0)) <= c_fit / 100.0);
}
