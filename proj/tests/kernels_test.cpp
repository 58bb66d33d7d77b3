#include <catch_amalgamated.hpp>

#include "harmlab/experiments.hpp"
#include "harmlab/kernels.hpp"

using namespace harmlab;

TEST_CASE("kernel matrix quadratic form: band exclusion and hermitian reality") {
    // all-ones kernel with unit profile: the form counts included weight pairs
    const std::size_t count = 9;
    const double dt = 0.5;
    KernelMatrix m = build_kernel_matrix(0.0, dt, count, 2, [](double, double) { return cplx(1.0, 0.0); });
    TimeProfile ones;
    ones.t0 = 0.0;
    ones.dt = dt;
    ones.values.assign(count, cplx(1.0, 0.0));
    double expected = 0.0;
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j) {
            const std::size_t lag = i > j ? i - j : j - i;
            if (lag < 2) continue;
            expected += m.weight(i) * m.weight(j);
        }
    CHECK(m.quadratic_form(ones).real() == Catch::Approx(expected).epsilon(1e-14));
    CHECK(m.quadratic_form(ones).imag() == 0.0);

    // hermitian kernel from a drifting path gives a real form
    const Path path = drifting_brownian_path(-2.0, 0.125, 33, 0.5, {101, 5});
    KernelMatrix h = build_kernel_matrix(-2.0, 0.125, 33, 2, [&](double t, double s) {
        const std::size_t i = std::size_t(std::llround((t + 2.0) / 0.125));
        const std::size_t j = std::size_t(std::llround((s + 2.0) / 0.125));
        return gaussian_data_kernel(t, s, path, i, j);
    });
    TimeProfile a;
    a.t0 = -2.0;
    a.dt = 0.125;
    a.values.resize(33);
    for (std::size_t i = 0; i < 33; ++i)
        a.values[i] = cplx(random_normal({102, 0}, 2 * i), random_normal({102, 0}, 2 * i + 1));
    const cplx q = h.quadratic_form(a);
    CHECK(std::fabs(q.imag()) <= 1e-10 * std::abs(q));
}

TEST_CASE("two-time kernel is conjugate-symmetric along any path") {
    const Path path = drifting_brownian_path(-2.0, 0.25, 17, 0.5, {103, 1});
    for (std::size_t i = 0; i < path.count(); ++i)
        for (std::size_t j = 0; j < path.count(); ++j) {
            const cplx kij = gaussian_data_kernel(path.time(i), path.time(j), path, i, j);
            const cplx kji = gaussian_data_kernel(path.time(j), path.time(i), path, j, i);
            CHECK(std::abs(kij - std::conj(kji)) < 1e-12 * std::max(1.0, std::abs(kij)));
        }
}

TEST_CASE("point-mass form: zero profile, frozen path, kernel mass oracle") {
    const double dt = 1e-3;
    const std::size_t count = 2001;
    TimeProfile alpha;
    alpha.t0 = -1.0;
    alpha.dt = dt;
    alpha.values.assign(count, cplx(1.0, 0.0));
    Path still;
    still.dim = 1;
    still.t0 = -1.0;
    still.dt = dt;
    still.points.assign(count, 0.0);

    TimeProfile zero = alpha;
    for (auto& v : zero.values) v = 0.0;
    const FormValue fz = point_mass_form(zero, still, 0.01);
    CHECK(std::abs(fz.value) == 0.0);
    CHECK(fz.abs_mass == 0.0);

    // antisymmetric kernel cancels exactly on the frozen path
    const FormValue f0 = point_mass_form(alpha, still, 0.01);
    CHECK(std::abs(f0.value) < 1e-13);

    // the kernel's absolute mass reproduces S(eps)/(4 pi) up to grid error
    for (double eps : {0.1, 0.01}) {
        const FormValue f = point_mass_form(alpha, still, eps);
        const double oracle = s_integral_quadrature(eps, 2.0) / (4.0 * pi);
        CHECK(std::fabs(f.abs_mass - oracle) / oracle < 0.05);
    }
    // analytic S agrees with adaptive quadrature to 1e-6
    for (double eps : {0.1, 0.03, 0.01, 0.003})
        CHECK(std::fabs(s_integral_analytic(eps, 2.0) - s_integral_quadrature(eps, 2.0)) < 1e-6);

    CHECK_THROWS_AS(point_mass_form(alpha, still, 1e-4), std::invalid_argument);

    // ladder evaluation agrees with one-band evaluation
    Path b = sample_brownian(-1.0, dt, count, {104, 2});
    for (auto& v : b.points) v *= std::sqrt(0.5);
    const auto ladder_vals = point_mass_form_ladder(alpha, b, {0.01, 0.1});
    const FormValue lo = point_mass_form(alpha, b, 0.01);
    const FormValue hi = point_mass_form(alpha, b, 0.1);
    CHECK(std::abs(ladder_vals[0].value - lo.value) < 1e-12);
    CHECK(std::abs(ladder_vals[1].value - hi.value) < 1e-12);
    CHECK(ladder_vals[0].abs_mass == Catch::Approx(lo.abs_mass).epsilon(1e-12));
}

TEST_CASE("scaled-path form vanishes on constant paths by antisymmetry") {
    Path still;
    still.dim = 1;
    still.t0 = 0.0;
    still.dt = 2.0 * pi / 255.0;
    still.points.assign(256, 1.5);
    for (double r : {1.0, 16.0}) {
        const FormValue f = scaled_path_form(still, r, 2.0 * still.dt);
        CHECK(std::abs(f.value) < 1e-13);
        CHECK(f.abs_mass > 0.0);
    }
}

TEST_CASE("smooth cutoff: identity on the core, compact support, finite mass") {
    for (double rho : {-1.0, -0.3, 0.0, 0.7, 1.0}) CHECK(smooth_cutoff(rho) == rho);
    CHECK(smooth_cutoff(2.0) == 0.0);
    CHECK(smooth_cutoff(-2.3) == 0.0);
    CHECK(smooth_cutoff(1.5) > 0.0);
    CHECK(smooth_cutoff(1.5) < 1.5);
    // continuity across the transition edges
    CHECK(std::fabs(smooth_cutoff(1.0 + 1e-9) - 1.0) < 1e-6);
    CHECK(std::fabs(smooth_cutoff(2.0 - 1e-6)) < 1e-3);
    const double mass = cutoff_l1_mass(60.0, 600);
    CHECK(std::isfinite(mass));
    CHECK(mass > 0.0);
}

TEST_CASE("expected kernel: symmetry, envelope, exact-expectation consistency") {
    const double theta = 0.5;
    const auto display = ExpectedKernelConstants::display();
    const auto derived = ExpectedKernelConstants::derived();
    for (double u : {3.0, 17.0, 60.0}) {
        CHECK(std::abs(expected_kernel_leading(-u, theta, display) -
                       std::conj(expected_kernel_leading(u, theta, display))) < 1e-15);
        CHECK(std::abs(expected_kernel_exact(-u, theta) - std::conj(expected_kernel_exact(u, theta))) <
              1e-15);
    }
    // display variant reaches its 1/|u| envelope
    for (double u : {50.0, 80.0}) {
        const double env =
            16.0 * std::exp(-2.0) / (4.0 * pi) * std::abs(gaussian_quadratic_char(theta)) / u;
        const double ratio = std::abs(expected_kernel_leading(u, theta, display)) / env;
        CHECK(ratio > 0.9);
        CHECK(ratio < 1.1);
    }
    // Monte Carlo mean of the kernel against the exact expectation
    for (double u : {10.0, 50.0}) {
        std::vector<cplx> vals(10000);
        for (std::size_t r = 0; r < vals.size(); ++r) {
            const double g = random_normal({105, std::uint64_t(u)}, r);
            vals[r] = gaussian_overlap_from_rho(u, u * u + theta * u * g * g);
        }
        cplx mean{0.0, 0.0};
        for (const auto& v : vals) mean += v;
        mean /= double(vals.size());
        double var = 0.0;
        for (const auto& v : vals) var += std::norm(v - mean);
        const double se = std::sqrt(var / double(vals.size()) / double(vals.size()));
        CHECK(std::abs(mean - expected_kernel_exact(u, theta)) <= 3.5 * se);
    }
    // remainder of the derived leading term decays at the measured rate
    std::vector<LadderPoint> pts;
    for (double u : {10.0, 20.0, 40.0, 80.0})
        pts.push_back({1.0 + u, std::log(std::abs(expected_kernel_exact(u, theta) -
                                                  expected_kernel_leading(u, theta, derived)))});
    CHECK(fit_log_divergence(pts, false).slope <= -1.9);
}

TEST_CASE("lag-sum resonant form matches the dense quadratic form") {
    const double theta = 0.5, dt = 0.5, N = 2.0;
    const auto display = ExpectedKernelConstants::display();
    auto ek = [&](double u) { return expected_kernel_leading(u, theta, display); };
    const std::size_t count = std::size_t(std::llround(2.0 * N / dt)) + 1;
    KernelMatrix m = build_kernel_matrix(-N, dt, count, 2, [&](double t, double s) { return ek(t - s); });
    TimeProfile alpha;
    alpha.t0 = -N;
    alpha.dt = dt;
    alpha.values.resize(count);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < count; ++i) norm2 += alpha.weight(i);
    for (std::size_t i = 0; i < count; ++i)
        alpha.values[i] = std::polar(1.0 / std::sqrt(norm2), alpha.time(i));
    const cplx dense = m.quadratic_form(alpha);
    const cplx fast = toeplitz_resonant_form(N, dt, 1.0, 2, ek);
    CHECK(std::abs(dense - fast) < 1e-13);
}

TEST_CASE("resonant profile carries unit quadrature norm") {
    // the resonant form normalizes by the exact trapezoid weight sum
    for (double N : {16.0, 64.0}) {
        const double dt = 0.1;
        const std::size_t count = std::size_t(std::llround(2.0 * N / dt)) + 1;
        double norm2 = 0.0;
        for (std::size_t i = 0; i < count; ++i)
            norm2 += (i == 0 || i + 1 == count) ? 0.5 * dt : dt;
        CHECK(norm2 == Catch::Approx(2.0 * N).epsilon(1e-12));
    }
}
