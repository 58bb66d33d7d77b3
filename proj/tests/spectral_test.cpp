#include <catch_amalgamated.hpp>

#include <complex>

#include "harmlab/gaussian.hpp"
#include "harmlab/grid.hpp"
#include "harmlab/quadrature.hpp"
#include "harmlab/rng.hpp"
#include "harmlab/transform.hpp"

using namespace harmlab;

namespace {

SampledField random_field(const Grid& g, std::uint64_t stream) {
    SampledField f(g, Domain::physical);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        f.values[i] = cplx(random_normal({321, stream}, 2 * i), random_normal({321, stream}, 2 * i + 1));
    return f;
}

// 1-d oracle integral of exp(-alpha s^2 + i c s) over the line.
cplx axis_transform_oracle(std::complex<double> alpha, double c) {
    QuadOptions opt;
    opt.rel_tol = 1e-11;
    opt.abs_tol = 1e-15;
    const double L = 14.0 / std::sqrt(std::max(0.25, alpha.real()));
    return integrate<cplx>([&](double s) { return std::exp(-alpha * s * s + cplx(0.0, c * s)); }, -L, L, opt);
}

}  // namespace

TEST_CASE("grid spacings follow from n and the half-extent") {
    const Grid a = create_grid(1, 8, 1.0);
    CHECK(a.dx() == Catch::Approx(0.25).epsilon(1e-15));
    CHECK(a.dzeta() == Catch::Approx(pi).epsilon(1e-15));
    const Grid b = create_grid(2, 256, 10.0);
    CHECK(b.dx() == Catch::Approx(0.078125).epsilon(1e-15));
    const Grid c = create_grid(3, 64, 8.0);
    CHECK(c.zeta_max() == Catch::Approx(4.0 * pi).epsilon(1e-15));  // == pi/dx
    CHECK(c.zeta_max() == Catch::Approx(pi / c.dx()).epsilon(1e-15));
}

TEST_CASE("grid construction rejects bad parameters") {
    CHECK_THROWS_AS(create_grid(4, 16, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(create_grid(0, 16, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(create_grid(2, 12, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(create_grid(2, 4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(create_grid(2, 16, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(create_grid(2, 16, -3.0), std::invalid_argument);
}

TEST_CASE("transform round trip is the identity") {
    for (int d = 1; d <= 3; ++d) {
        const Grid g = create_grid(d, d == 3 ? 16 : 64, 3.0);
        const SampledField f = random_field(g, std::uint64_t(d));
        const SampledField back = transform(transform(f, Direction::forward), Direction::inverse);
        double worst = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            worst = std::max(worst, std::abs(back.values[i] - f.values[i]));
            scale = std::max(scale, std::abs(f.values[i]));
        }
        CHECK(worst / scale < 1e-12);
    }
}

TEST_CASE("transform enforces the domain tag and maps zero to zero") {
    const Grid g = create_grid(2, 16, 2.0);
    SampledField f(g, Domain::spectral);
    CHECK_THROWS_AS(transform(f, Direction::forward), std::invalid_argument);
    f.domain = Domain::physical;
    CHECK_THROWS_AS(transform(f, Direction::inverse), std::invalid_argument);
    const SampledField z = transform(f, Direction::forward);  // all zeros
    for (const auto& v : z.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("parseval identity holds with the convention weights") {
    for (int d = 1; d <= 3; ++d) {
        const Grid g = create_grid(d, d == 3 ? 16 : 64, 5.0);
        const SampledField f = random_field(g, 10 + std::uint64_t(d));
        const SampledField spec = transform(f, Direction::forward);
        CHECK(std::fabs(spec.l2_norm() / f.l2_norm() - 1.0) < 1e-9);
    }
}

TEST_CASE("forward transform of a centered gaussian matches both oracles") {
    const Grid g = create_grid(2, 256, 10.0);
    const SampledField f = make_field(g, Domain::physical, [](const std::array<double, 3>& x) {
        return std::exp(-(x[0] * x[0] + x[1] * x[1]));
    });
    const SampledField spec = transform(f, Direction::forward);

    // closed form pi e^{-|zeta|^2/4} wherever it is representable
    double worst = 0.0;
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        const auto z = g.freq(i);
        const double z2 = z[0] * z[0] + z[1] * z[1];
        if (z2 > 49.0) continue;
        const double want = pi * std::exp(-z2 / 4.0);
        worst = std::max(worst, std::abs(spec.values[i] - want) / want);
    }
    CHECK(worst < 1e-8);

    // tensor-product quadrature of the defining integral at a few interior nodes
    for (std::uint64_t k = 0; k < 10; ++k) {
        std::size_t flat = std::size_t(random_bits({99, k}, 0) % spec.values.size());
        auto z = g.freq(flat);
        if (z[0] * z[0] + z[1] * z[1] > 36.0) {
            flat = 0;
            z = g.freq(flat);
        }
        const cplx oracle = axis_transform_oracle(1.0, -z[0]) * axis_transform_oracle(1.0, -z[1]);
        CHECK(std::abs(spec.values[flat] - oracle) / std::abs(oracle) < 1e-8);
    }
}

TEST_CASE("multiplier application is pointwise, linear and norm-aware") {
    const Grid g = create_grid(2, 32, 4.0);
    const SampledField f = transform(random_field(g, 21), Direction::forward);
    const SampledField same = apply_multiplier(f, [](const std::array<double, 3>&) { return 1.0; });
    for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(same.values[i] == f.values[i]);

    // gaussian times gaussian
    const SampledField gh = make_field(g, Domain::spectral, [](const std::array<double, 3>& z) {
        return std::exp(-(z[0] * z[0] + z[1] * z[1]));
    });
    const SampledField sq = apply_multiplier(gh, [](const std::array<double, 3>& z) {
        return std::exp(-(z[0] * z[0] + z[1] * z[1]));
    });
    for (std::size_t i = 0; i < sq.values.size(); ++i) {
        const auto z = g.freq(i);
        CHECK(std::abs(sq.values[i] - std::exp(-2.0 * (z[0] * z[0] + z[1] * z[1]))) < 1e-14);
    }

    // unimodular multiplier preserves the spectral norm
    const SampledField rot = apply_multiplier(f, [](const std::array<double, 3>& z) {
        return std::polar(1.0, 0.7 * (z[0] + 2.0 * z[1]));
    });
    CHECK(std::fabs(rot.l2_norm() / f.l2_norm() - 1.0) < 1e-12);

    // linearity
    const SampledField h = transform(random_field(g, 22), Direction::forward);
    auto m = [](const std::array<double, 3>& z) { return std::cos(z[0]) + 0.3 * z[1]; };
    SampledField combo = f;
    for (std::size_t i = 0; i < combo.values.size(); ++i)
        combo.values[i] = 2.0 * f.values[i] + cplx(0.0, -0.5) * h.values[i];
    const SampledField lhs = apply_multiplier(combo, m);
    const SampledField mf = apply_multiplier(f, m), mh = apply_multiplier(h, m);
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.values.size(); ++i)
        worst = std::max(worst,
                         std::abs(lhs.values[i] - (2.0 * mf.values[i] + cplx(0.0, -0.5) * mh.values[i])));
    CHECK(worst < 1e-12);

    // non-finite multiplier values are rejected
    CHECK_THROWS_AS(apply_multiplier(f,
                                     [](const std::array<double, 3>& z) {
                                         const double r2 = z[0] * z[0] + z[1] * z[1];
                                         return 1.0 / r2;  // infinite at the zero node
                                     }),
                    std::domain_error);
}

TEST_CASE("gaussian closed form is pinned by the quadrature oracle") {
    // value at the origin equals (2 pi)^{-2} int exp(-|zeta|^2) dzeta
    const auto f1 = gaussian_closed_form(1.0, 2);
    QuadOptions opt;
    opt.rel_tol = 1e-12;
    const double oracle0 =
        integrate([](double r) { return r * std::exp(-r * r); }, 0.0, 12.0, opt) / (2.0 * pi);
    CHECK(std::abs(f1.at_rho(0.0) - oracle0) < 1e-8 * oracle0);

    // radial symmetry
    const std::array<double, 2> xa{0.3, 0.4}, xb{0.5, 0.0}, xc{-0.4, 0.3};
    CHECK(std::abs(f1(xa) - f1(xb)) < 1e-12);
    CHECK(std::abs(f1(xa) - f1(xc)) < 1e-12);

    // prefactor halves when alpha doubles (d = 2)
    const auto f2 = gaussian_closed_form(2.0, 2);
    CHECK(std::abs(f2.at_rho(0.0) / f1.at_rho(0.0) - 0.5) < 1e-12);

    CHECK_THROWS_AS(gaussian_closed_form(cplx(-0.1, 0.0), 2), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_closed_form(cplx(0.0, 0.0), 2), std::invalid_argument);

    // oracle agreement at random points for alpha in {1, 2, 1+i}
    for (const cplx alpha : {cplx(1.0, 0.0), cplx(2.0, 0.0), cplx(1.0, 1.0)}) {
        const auto cf = gaussian_closed_form(alpha, 2);
        for (std::uint64_t k = 0; k < 100; ++k) {
            const double x0 = 6.0 * (random_uniform({77, k}, 0) - 0.5);
            const double x1 = 6.0 * (random_uniform({77, k}, 1) - 0.5);
            const cplx oracle = axis_transform_oracle(alpha, x0) * axis_transform_oracle(alpha, x1) /
                                (4.0 * pi * pi);
            const cplx got = cf(std::array<double, 2>{x0, x1});
            CHECK(std::abs(got - oracle) / std::abs(oracle) < 1e-8);
        }
    }
}
