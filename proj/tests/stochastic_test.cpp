#include <catch_amalgamated.hpp>

#include "harmlab/brownian.hpp"
#include "harmlab/gaussian.hpp"
#include "harmlab/kernels.hpp"
#include "harmlab/rng.hpp"

using namespace harmlab;

TEST_CASE("counter-based draws are pure functions of (master, stream, counter)") {
    const SeedSpec s{0xDEADBEEFCAFEF00Dull, 17};
    const double a = random_normal(s, 123456);
    const double b = random_normal(s, 123456);
    CHECK(a == b);
    CHECK(random_normal(s, 123457) != a);
    CHECK(random_normal({s.master, 18}, 123456) != a);
    CHECK(random_normal({s.master + 1, 17}, 123456) != a);
    // uniform draws live strictly inside (0, 1)
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const double u = random_uniform(s, i);
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("brownian paths: pinned origin, reproducibility, increment law") {
    const Path p = sample_brownian(-1.0, 0.01, 201, {42, 3});
    CHECK(p.points[0] == 0.0);
    const Path q = sample_brownian(-1.0, 0.01, 201, {42, 3});
    for (std::size_t i = 0; i < p.points.size(); ++i) CHECK(p.points[i] == q.points[i]);
    CHECK_THROWS_AS(sample_brownian(0.0, -0.1, 32, {42, 3}), std::invalid_argument);
    CHECK_THROWS_AS(sample_brownian(0.0, 0.1, 1, {42, 3}), std::invalid_argument);

    // moment checks over 1e5 replicas of a two-step path with dt = 0.25
    const std::size_t reps = 100000;
    double sum = 0.0, sum2 = 0.0, cross = 0.0;
    for (std::uint64_t r = 0; r < reps; ++r) {
        const Path b = sample_brownian(0.0, 0.25, 3, {2024, r});
        const double inc1 = b.points[1] - b.points[0];
        const double inc2 = b.points[2] - b.points[1];
        sum += inc1;
        sum2 += inc1 * inc1;
        cross += inc1 * inc2;
    }
    const double mean = sum / double(reps);
    const double var = sum2 / double(reps) - mean * mean;
    CHECK(var > 0.245);
    CHECK(var < 0.255);
    // disjoint increments uncorrelated within 3 sigma
    const double cov = cross / double(reps);
    CHECK(std::fabs(cov) < 3.0 * 0.25 / std::sqrt(double(reps)));
}

TEST_CASE("brownian scaling: rescaled path passes the same moment checks") {
    // b_{ct}/sqrt(c) with c = 4: increments over dt = 0.25 of the rescaled
    // path come from increments over dt = 1 of the original
    const std::size_t reps = 100000;
    const double c = 4.0;
    double sum2 = 0.0;
    for (std::uint64_t r = 0; r < reps; ++r) {
        const Path b = sample_brownian(0.0, 0.25 * c, 2, {2025, r});
        const double inc = (b.points[1] - b.points[0]) / std::sqrt(c);
        sum2 += inc * inc;
    }
    const double var = sum2 / double(reps);
    CHECK(var > 0.245);
    CHECK(var < 0.255);
}

TEST_CASE("gaussian quadratic characteristic function") {
    CHECK(gaussian_quadratic_char(0.0) == cplx(1.0, 0.0));
    CHECK(gaussian_quadratic_sin(0.0) == 0.0);
    const cplx v = gaussian_quadratic_char(0.5);
    CHECK(std::abs(v) == Catch::Approx(std::pow(2.0, -0.25)).epsilon(1e-14));
    CHECK(std::arg(v) == Catch::Approx(pi / 8.0).epsilon(1e-14));
    CHECK(gaussian_quadratic_sin(0.5) == Catch::Approx(0.321797126452791).epsilon(1e-12));

    for (double theta : {0.1, 0.5, 1.0, 2.0}) {
        const auto mc = gaussian_quadratic_char_mc(theta, 200000, {31, std::uint64_t(theta * 1000)});
        CHECK(std::abs(mc.mean - gaussian_quadratic_char(theta)) <= 3.0 * mc.stderr_combined);
    }
    CHECK_THROWS_AS(gaussian_quadratic_char_mc(0.5, 0, {1, 1}), std::invalid_argument);
}

TEST_CASE("distinct streams decorrelate") {
    const std::size_t n = 100000;
    double cross = 0.0;
    for (std::uint64_t i = 0; i < n; ++i)
        cross += random_normal({5, 1}, i) * random_normal({5, 2}, i);
    CHECK(std::fabs(cross / double(n)) < 3.0 / std::sqrt(double(n)));
}

TEST_CASE("drifting planar path carries time in the first coordinate") {
    const Path p = drifting_brownian_path(-2.0, 0.125, 33, 0.5, {11, 0});
    CHECK(p.dim == 2);
    for (std::size_t i = 0; i < p.count(); ++i) CHECK(p.coord(i, 0) == Catch::Approx(p.time(i)).epsilon(1e-14));
    CHECK(p.coord(0, 1) == 0.0);
}
