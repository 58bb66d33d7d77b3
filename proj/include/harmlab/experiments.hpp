#pragma once

// Named experiments behind the CLI. Each runner resolves its defaults from
// the acceptance parameters, executes deterministically for a given config
// (worker count never changes a value), and emits a report body of ladder
// records, a log-divergence fit where applicable, plus named checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "brownian.hpp"
#include "constants.hpp"
#include "densities.hpp"
#include "fits.hpp"
#include "kernels.hpp"
#include "lemma6.hpp"
#include "maximal.hpp"
#include "parallel.hpp"
#include "positive_control.hpp"
#include "propagators.hpp"
#include "report.hpp"

namespace harmlab {

struct GridSpec {
    int d = 2;
    std::size_t n = 256;
    double X = 10.0;
};

struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 20240601;
    std::vector<double> ladder;  // empty -> experiment default
    GridSpec grid;
    bool grid_set = false;
    std::size_t replicas = 0;  // 0 -> experiment default
    double theta = 0.5;
    std::string format = "json";
    std::string out;
    std::string constants_path;
};

inline const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "thm1",      "carbery-hofmann", "thm2-kernel", "thm2-blowup",     "thm2-fourier",
        "thm3-cone", "lemma6",          "selftest",    "positive-control"};
    return names;
}

namespace detail {

inline ordered_json fit_json(const DivergenceFit& f) {
    ordered_json j;
    j["slope"] = f.slope;
    j["intercept"] = f.intercept;
    j["r_squared"] = f.r_squared;
    j["against"] = f.against_inverse ? "ln(1/parameter)" : "ln(parameter)";
    return j;
}

inline CheckRecord check(const std::string& name, bool pass, double value, double threshold) {
    return CheckRecord{name, pass, value, threshold};
}

inline void push_records(ordered_json& body, const std::vector<LadderRecord>& recs) {
    body["records"] = ordered_json::array();
    for (const auto& r : recs) body["records"].push_back(to_json(r));
}

inline void push_checks(ordered_json& body, const std::vector<CheckRecord>& checks) {
    body["checks"] = ordered_json::array();
    bool pass = true;
    for (const auto& c : checks) {
        body["checks"].push_back(to_json(c));
        pass = pass && c.pass;
    }
    body["pass"] = pass;
}

inline std::vector<LadderPoint> modulus_ladder(const std::vector<LadderRecord>& recs) {
    std::vector<LadderPoint> pts;
    pts.reserve(recs.size());
    for (const auto& r : recs) pts.push_back({r.parameter, r.modulus});
    return pts;
}

// Mean and combined standard error of complex per-replica values, reduced in
// a fixed pairwise order.
struct McSummary {
    std::complex<double> mean;
    double stderr_combined;
};

inline McSummary mc_summary(const std::vector<std::complex<double>>& vals) {
    const std::size_t n = vals.size();
    std::vector<std::complex<double>> v = vals;
    const std::complex<double> mean = pairwise_sum(std::move(v)) / double(n);
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = std::norm(vals[i] - mean);
    const double var = pairwise_sum(std::move(sq)) / double(n);
    return {mean, std::sqrt(var / double(n))};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Multi-band point-mass form: one pass over the pairs, accumulated per
// smallest admitting band, so a whole band ladder costs a single sweep.

inline std::vector<FormValue> point_mass_form_ladder(const TimeProfile& alpha, const Path& path,
                                                     std::vector<double> bands_ascending) {
    check_profile(alpha);
    std::sort(bands_ascending.begin(), bands_ascending.end());
    const std::size_t L = bands_ascending.size();
    std::vector<std::size_t> min_lag(L);
    for (std::size_t l = 0; l < L; ++l) {
        if (bands_ascending[l] < 2.0 * alpha.dt - 1e-12)
            throw std::invalid_argument("point_mass_form_ladder: band below grid resolution");
        min_lag[l] = detail::band_steps_for(bands_ascending[l], alpha.dt);
    }
    const std::size_t n = alpha.count();
    // bucket[m] = number of bands admitting lag m (pairs of lag m feed bands 0..bucket-1)
    std::vector<std::size_t> bucket(n, 0);
    for (std::size_t m = 0; m < n; ++m) {
        std::size_t c = 0;
        while (c < L && min_lag[c] <= m) ++c;
        bucket[m] = c;
    }
    std::vector<std::complex<double>> acc(L + 1, std::complex<double>{0.0, 0.0});
    std::vector<double> mass(L + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = alpha.weight(i);
        const double ti = alpha.time(i);
        for (std::size_t j = i + std::max<std::size_t>(min_lag[0], 1); j < n; ++j) {
            const double u = ti - alpha.time(j);
            const double rho = path.sq_dist(i, j);
            const std::complex<double> pref(0.0, 1.0 / (4.0 * pi * u));
            const std::complex<double> k =
                pref * std::polar(1.0, -rho / u) * alpha.values[i] * std::conj(alpha.values[j]);
            const double w = wi * alpha.weight(j);
            const std::size_t b = bucket[j - i];
            acc[b] += w * 2.0 * k.real();
            mass[b] += w * 2.0 * std::abs(k);
        }
    }
    std::vector<FormValue> out(L);
    std::complex<double> sv{0.0, 0.0};
    double sm = 0.0;
    for (std::size_t b = L + 1; b-- > 1;) {
        sv += acc[b];
        sm += mass[b];
        out[b - 1].value = sv;
        out[b - 1].abs_mass = sm;
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace experiments {

inline ordered_json thm1(const ExperimentConfig& cfg, unsigned workers) {
    std::vector<double> ladder = cfg.ladder.empty() ? std::vector<double>{0.1, 0.03, 0.01, 0.003} : cfg.ladder;
    std::sort(ladder.begin(), ladder.end());
    const std::size_t replicas = cfg.replicas ? cfg.replicas : 200;
    const double theta = cfg.theta;
    const double dt = 1e-3;
    const std::size_t count = std::size_t(std::llround(2.0 / dt)) + 1;

    TimeProfile alpha;
    alpha.t0 = -1.0;
    alpha.dt = dt;
    alpha.values.assign(count, std::complex<double>{1.0, 0.0});

    std::vector<std::vector<FormValue>> per_replica(replicas);
    parallel_for(replicas, workers, [&](std::size_t r) {
        Path b = sample_brownian(-1.0, dt, count, SeedSpec{cfg.seed, r});
        const double st = std::sqrt(theta);
        for (double& v : b.points) v *= st;
        per_replica[r] = point_mass_form_ladder(alpha, b, ladder);
    });

    std::vector<LadderRecord> recs;
    std::vector<double> mean_mass(ladder.size());
    for (std::size_t l = 0; l < ladder.size(); ++l) {
        std::vector<std::complex<double>> vals(replicas);
        std::vector<double> masses(replicas);
        for (std::size_t r = 0; r < replicas; ++r) {
            vals[r] = per_replica[r][l].value;
            masses[r] = per_replica[r][l].abs_mass;
        }
        const auto s = detail::mc_summary(vals);
        mean_mass[l] = pairwise_sum(std::move(masses)) / double(replicas);
        recs.push_back(LadderRecord{ladder[l], s.mean.real(), s.mean.imag(), std::abs(s.mean),
                                    s.stderr_combined, replicas});
    }

    const DivergenceFit fit = fit_log_divergence(detail::modulus_ladder(recs), true);

    // oracle: band-excluded integral of 1/|t-s| over the square, same ladder
    std::vector<LadderPoint> s_pts;
    for (double eps : ladder) s_pts.push_back({eps, s_integral_quadrature(eps, 2.0)});
    const DivergenceFit s_fit = fit_log_divergence(s_pts, true);
    const double a = gaussian_quadratic_sin(theta);
    const double predicted = a / (4.0 * pi) * s_fit.slope;

    ordered_json body;
    detail::push_records(body, recs);
    body["fit"] = detail::fit_json(fit);
    ordered_json oracle;
    oracle["s_slope"] = s_fit.slope;
    oracle["sin_char"] = a;
    oracle["predicted_slope"] = predicted;
    oracle["mean_abs_mass"] = mean_mass;
    body["oracle"] = oracle;

    bool monotone = true;
    for (std::size_t l = 1; l < recs.size(); ++l) monotone = monotone && recs[l].modulus < recs[l - 1].modulus;
    std::vector<CheckRecord> checks;
    checks.push_back(detail::check("fit.r_squared >= 0.99", fit.r_squared >= 0.99, fit.r_squared, 0.99));
    checks.push_back(detail::check("slope within 15% of (a/4pi) * S-slope",
                                   std::fabs(fit.slope - predicted) <= 0.15 * predicted, fit.slope, predicted));
    checks.push_back(detail::check("modulus grows towards small bands", monotone, monotone ? 1.0 : 0.0, 1.0));
    detail::push_checks(body, checks);
    return body;
}

inline ordered_json carbery_hofmann(const ExperimentConfig& cfg, unsigned workers) {
    std::vector<double> ladder = cfg.ladder.empty()
                                     ? std::vector<double>{2, 3, 4, 5, 6, 7, 8}
                                     : cfg.ladder;
    const std::vector<double> r_sweep{1.0, 4.0, 16.0, 64.0};
    const std::size_t samples = 4096;
    const double b_end = 2.0 * pi;

    struct LevelOut {
        std::complex<double> best{0.0, 0.0};
        double best_mod = 0.0;
        double best_r = 0.0;
        double lip = 0.0;
    };
    std::vector<LevelOut> outs(ladder.size());
    parallel_for(ladder.size(), workers, [&](std::size_t li) {
        const int n = int(std::llround(ladder[li]));
        Path p = lacunary_path(n, samples, 0.0, b_end);
        LevelOut o;
        o.lip = lip_half_seminorm(p);
        for (double r : r_sweep) {
            const FormValue f = scaled_path_form(p, r, 2.0 * p.dt);
            const double mod = std::abs(f.value);
            if (mod > o.best_mod) {
                o.best_mod = mod;
                o.best = f.value;
                o.best_r = r;
            }
        }
        outs[li] = o;
    });

    std::vector<LadderRecord> recs;
    for (std::size_t li = 0; li < ladder.size(); ++li) {
        const auto& o = outs[li];
        recs.push_back(LadderRecord{ladder[li], o.best.real() / b_end, o.best.imag() / b_end,
                                    o.best_mod / b_end, 0.0, 1});
    }
    const DivergenceFit fit = fit_log_divergence(detail::modulus_ladder(recs), false);

    const double cutoff = cutoff_l1_mass(80.0, 1600);
    const double cutoff_fine = cutoff_l1_mass(80.0, 3200);

    ordered_json body;
    detail::push_records(body, recs);
    body["fit"] = detail::fit_json(fit);
    ordered_json extra;
    extra["cutoff_l1_mass"] = cutoff;
    extra["cutoff_l1_mass_refined"] = cutoff_fine;
    ordered_json rlist = ordered_json::array();
    for (const auto& o : outs) rlist.push_back(o.best_r);
    extra["argmax_r"] = rlist;
    body["oracle"] = extra;

    const double growth = recs.back().modulus / recs.front().modulus;
    std::vector<CheckRecord> checks;
    checks.push_back(detail::check("normalized form grows with the level count", growth >= 1.35, growth, 1.35));
    checks.push_back(detail::check("cutoff mass stable under resolution doubling",
                                   std::fabs(cutoff - cutoff_fine) <= 0.01 * cutoff,
                                   std::fabs(cutoff - cutoff_fine) / cutoff, 0.01));
    checks.push_back(detail::check("cutoff mass finite", std::isfinite(cutoff) && cutoff > 0.0, cutoff, 0.0));
    detail::push_checks(body, checks);
    return body;
}

inline ordered_json thm2_kernel(const ExperimentConfig& cfg, unsigned workers) {
    std::vector<double> ladder = cfg.ladder.empty() ? std::vector<double>{10, 20, 40, 80} : cfg.ladder;
    const std::size_t replicas = cfg.replicas ? cfg.replicas : 10000;
    const double theta = cfg.theta;

    std::vector<LadderRecord> recs(ladder.size());
    parallel_for(ladder.size(), workers, [&](std::size_t li) {
        const double u = ladder[li];
        std::vector<std::complex<double>> vals(replicas);
        for (std::size_t r = 0; r < replicas; ++r) {
            const double g = random_normal(SeedSpec{cfg.seed, li}, r);
            const double rho = u * u + theta * std::fabs(u) * g * g;
            vals[r] = gaussian_overlap_from_rho(u, rho);
        }
        const auto s = detail::mc_summary(vals);
        recs[li] = LadderRecord{u, s.mean.real(), s.mean.imag(), std::abs(s.mean), s.stderr_combined, replicas};
    });

    std::vector<CheckRecord> checks;
    const auto derived = ExpectedKernelConstants::derived();
    const auto display = ExpectedKernelConstants::display();
    std::vector<LadderPoint> gap_pts;
    for (std::size_t li = 0; li < ladder.size(); ++li) {
        const double u = ladder[li];
        const std::complex<double> exact = expected_kernel_exact(u, theta);
        const std::complex<double> mc(recs[li].re, recs[li].im);
        const double gap = std::abs(mc - exact);
        checks.push_back(detail::check("mc mean within 4 sigma of exact expectation (u=" + std::to_string(int(u)) + ")",
                                       gap <= 4.0 * recs[li].mc_stderr, gap, 4.0 * recs[li].mc_stderr));
        gap_pts.push_back({1.0 + u, std::log(std::abs(exact - expected_kernel_leading(u, theta, derived)))});
    }
    // remainder of the derived leading term: log-log fit of |exact - leading|
    DivergenceFit rem_fit;
    {
        std::vector<LadderPoint> pts;
        for (auto& p : gap_pts) pts.push_back({p.parameter, p.value});
        rem_fit = fit_log_divergence(pts, false);  // slope of log gap vs log <u>
    }
    checks.push_back(detail::check("derived leading-term remainder decays (log-log slope <= -1.9)",
                                   rem_fit.slope <= -1.9, rem_fit.slope, -1.9));

    for (double u : {50.0, 80.0}) {
        const double env = 16.0 * std::exp(-2.0) / (4.0 * pi) *
                           std::abs(gaussian_quadratic_char(theta)) / u;
        const double ratio = std::abs(expected_kernel_leading(u, theta, display)) / env;
        checks.push_back(detail::check("display envelope ratio in [0.9, 1.1] (u=" + std::to_string(int(u)) + ")",
                                       ratio >= 0.9 && ratio <= 1.1, ratio, 1.0));
    }
    {
        // headline consistency point at u = 50 with its own stream
        const double u = 50.0;
        std::vector<std::complex<double>> vals(replicas);
        for (std::size_t r = 0; r < replicas; ++r) {
            const double g = random_normal(SeedSpec{cfg.seed, 9001}, r);
            vals[r] = gaussian_overlap_from_rho(u, u * u + theta * u * g * g);
        }
        const auto s = detail::mc_summary(vals);
        const double gap = std::abs(s.mean - expected_kernel_exact(u, theta));
        checks.push_back(detail::check("mc mean within 3 sigma of exact expectation (u=50)",
                                       gap <= 3.0 * s.stderr_combined, gap, 3.0 * s.stderr_combined));
    }

    ordered_json body;
    detail::push_records(body, recs);
    body["fit"] = detail::fit_json(rem_fit);
    ordered_json oracle;
    for (std::size_t li = 0; li < ladder.size(); ++li) {
        const double u = ladder[li];
        ordered_json row;
        row["u"] = u;
        const auto exact = expected_kernel_exact(u, theta);
        const auto lead = expected_kernel_leading(u, theta, derived);
        row["exact_re"] = exact.real();
        row["exact_im"] = exact.imag();
        row["leading_re"] = lead.real();
        row["leading_im"] = lead.imag();
        oracle["expected"].push_back(row);
    }
    body["oracle"] = oracle;
    detail::push_checks(body, checks);
    return body;
}

inline ordered_json thm2_blowup(const ExperimentConfig& cfg, unsigned workers) {
    std::vector<double> ladder = cfg.ladder.empty() ? std::vector<double>{16, 64, 256, 1024} : cfg.ladder;
    const double theta = cfg.theta;
    const double dt = 0.1;
    const std::size_t band = 2;
    const auto display = ExpectedKernelConstants::display();
    const auto derived = ExpectedKernelConstants::derived();

    struct Row {
        std::complex<double> resonant, detuned;
    };
    std::vector<Row> rows(ladder.size());
    parallel_for(ladder.size(), workers, [&](std::size_t li) {
        const double N = ladder[li];
        auto ek_display = [&](double u) { return expected_kernel_leading(u, theta, display); };
        rows[li].resonant = toeplitz_resonant_form(N, dt, display.carrier, band, ek_display);
        rows[li].detuned = toeplitz_resonant_form(N, dt, 2.0 * display.carrier, band, ek_display);
    });
    // the pinned-convention variant resonates at carrier 1/4; its smaller
    // amplitude needs a longer ladder before the log term dominates
    std::vector<LadderPoint> derived_pts;
    for (double N : {64.0, 256.0, 1024.0, 4096.0}) {
        auto ek_derived = [&](double u) { return expected_kernel_leading(u, theta, derived); };
        derived_pts.push_back({N, std::abs(toeplitz_resonant_form(N, dt, derived.carrier, band, ek_derived))});
    }

    std::vector<LadderRecord> recs;
    std::vector<LadderPoint> detuned_pts;
    for (std::size_t li = 0; li < ladder.size(); ++li) {
        recs.push_back(LadderRecord{ladder[li], rows[li].resonant.real(), rows[li].resonant.imag(),
                                    std::abs(rows[li].resonant), 0.0, 1});
        detuned_pts.push_back({ladder[li], std::abs(rows[li].detuned)});
    }
    const DivergenceFit fit = fit_log_divergence(detail::modulus_ladder(recs), false);
    const DivergenceFit detuned_fit = fit_log_divergence(detuned_pts, false);
    const DivergenceFit derived_fit = fit_log_divergence(derived_pts, false);

    ordered_json body;
    detail::push_records(body, recs);
    body["fit"] = detail::fit_json(fit);
    ordered_json oracle;
    oracle["detuned_fit"] = detail::fit_json(detuned_fit);
    oracle["derived_carrier_fit"] = detail::fit_json(derived_fit);
    body["oracle"] = oracle;

    std::vector<CheckRecord> checks;
    checks.push_back(detail::check("resonant slope positive", fit.slope > 0.0, fit.slope, 0.0));
    checks.push_back(detail::check("fit.r_squared >= 0.98", fit.r_squared >= 0.98, fit.r_squared, 0.98));
    checks.push_back(detail::check("detuned slope below 25% of resonant",
                                   std::fabs(detuned_fit.slope) < 0.25 * fit.slope,
                                   std::fabs(detuned_fit.slope), 0.25 * fit.slope));
    checks.push_back(detail::check("pinned-convention variant resonates at its own carrier",
                                   derived_fit.slope > 0.0 && derived_fit.r_squared >= 0.98,
                                   derived_fit.slope, 0.0));
    detail::push_checks(body, checks);
    return body;
}

inline ordered_json thm2_fourier(const ExperimentConfig& cfg, unsigned workers) {
    std::vector<double> ladder = cfg.ladder.empty() ? std::vector<double>{0.1, 0.03, 0.01, 0.003} : cfg.ladder;
    std::sort(ladder.begin(), ladder.end(), std::greater<double>());
    const double omega = 0.25;

    std::vector<LadderRecord> recs(ladder.size());
    parallel_for(ladder.size(), workers, [&](std::size_t li) {
        const double v = lhat_truncated(omega, ladder[li]);
        recs[li] = LadderRecord{ladder[li], v, 0.0, v, 0.0, 1};
    });
    const DivergenceFit fit = fit_log_divergence(detail::modulus_ladder(recs), true);

    // pointwise lower bound on the density at the singular frequency
    std::size_t violations = 0;
    const std::size_t npts = 10000;
    double min_margin = 1e300;
    for (std::size_t i = 0; i < npts; ++i) {
        const double r = std::sqrt(random_uniform(SeedSpec{cfg.seed, 77}, 2 * i));
        const double phi = 2.0 * pi * random_uniform(SeedSpec{cfg.seed, 77}, 2 * i + 1);
        const double z1 = 0.5 + r * std::cos(phi), z2 = r * std::sin(phi);
        const double k = schrodinger_spectral_density(omega, z1, z2);
        const double d2 = (z1 - 0.5) * (z1 - 0.5) + z2 * z2;
        const double bound = z2 * z2 / (2.0 * d2 * d2);
        if (!(k >= bound * (1.0 - 1e-12))) ++violations;
        min_margin = std::min(min_margin, k - bound);
        if (!(k >= 0.0)) ++violations;
    }

    ordered_json body;
    detail::push_records(body, recs);
    body["fit"] = detail::fit_json(fit);
    ordered_json oracle;
    oracle["min_margin"] = min_margin;
    body["oracle"] = oracle;
    bool monotone = true;
    for (std::size_t l = 1; l < recs.size(); ++l) monotone = monotone && recs[l].modulus > recs[l - 1].modulus;
    std::vector<CheckRecord> checks;
    checks.push_back(detail::check("fit.r_squared >= 0.95", fit.r_squared >= 0.95, fit.r_squared, 0.95));
    checks.push_back(detail::check("slope positive", fit.slope > 0.0, fit.slope, 0.0));
    checks.push_back(detail::check("values grow towards small exclusion radii", monotone, monotone ? 1 : 0, 1));
    checks.push_back(detail::check("pointwise density bound: zero violations", violations == 0,
                                   double(violations), 0.0));
    detail::push_checks(body, checks);
    (void)workers;
    return body;
}

inline ordered_json thm3_cone(const ExperimentConfig& cfg, unsigned workers) {
    std::vector<double> ladder = cfg.ladder.empty() ? std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4} : cfg.ladder;
    std::sort(ladder.begin(), ladder.end(), std::greater<double>());

    std::vector<ConeIntegral> vals(ladder.size());
    parallel_for(ladder.size(), workers, [&](std::size_t li) { vals[li] = cone_integral(ladder[li]); });

    std::vector<LadderRecord> recs;
    std::vector<LadderPoint> comparison_pts;
    bool ordered = true;
    for (std::size_t li = 0; li < ladder.size(); ++li) {
        recs.push_back(LadderRecord{ladder[li], vals[li].value, 0.0, vals[li].value, 0.0, 1});
        comparison_pts.push_back({ladder[li], vals[li].comparison});
        ordered = ordered && vals[li].value >= vals[li].comparison;
    }
    const DivergenceFit exact_fit = fit_log_divergence(detail::modulus_ladder(recs), true);
    const DivergenceFit comparison_fit = fit_log_divergence(comparison_pts, true);
    const double oracle_slope = cone_comparison_slope_oracle();

    std::size_t violations = 0;
    const std::size_t npts = 10000;
    for (std::size_t i = 0; i < npts; ++i) {
        const double z = random_uniform(SeedSpec{cfg.seed, 78}, 2 * i);
        const double r = z * random_uniform(SeedSpec{cfg.seed, 78}, 2 * i + 1);
        if (r <= 0.0 || z <= 0.0) continue;
        const double lhs = cone_density(z, r);
        const double rhs = 4.0 * z * z / (r * r * (4.0 + z * z));
        if (!(lhs >= rhs * (1.0 - 1e-12))) ++violations;
    }

    ordered_json body;
    detail::push_records(body, recs);
    body["fit"] = detail::fit_json(comparison_fit);
    ordered_json oracle;
    oracle["exact_fit"] = detail::fit_json(exact_fit);
    oracle["oracle_slope"] = oracle_slope;
    ordered_json comp = ordered_json::array();
    for (const auto& p : comparison_pts) comp.push_back(p.value);
    oracle["comparison_values"] = comp;
    body["oracle"] = oracle;

    std::vector<CheckRecord> checks;
    checks.push_back(detail::check("comparison slope within 2% of 1-d oracle",
                                   std::fabs(comparison_fit.slope - oracle_slope) <= 0.02 * oracle_slope,
                                   comparison_fit.slope, oracle_slope));
    checks.push_back(detail::check("comparison fit r_squared >= 0.99", comparison_fit.r_squared >= 0.99,
                                   comparison_fit.r_squared, 0.99));
    checks.push_back(detail::check("exact cone fit r_squared >= 0.99", exact_fit.r_squared >= 0.99,
                                   exact_fit.r_squared, 0.99));
    checks.push_back(detail::check("cone integral dominates the comparison value", ordered, ordered ? 1 : 0, 1));
    checks.push_back(detail::check("pointwise cone density bound: zero violations", violations == 0,
                                   double(violations), 0.0));
    detail::push_checks(body, checks);
    return body;
}

inline ordered_json lemma6(const ExperimentConfig& cfg, unsigned workers) {
    const std::size_t families = cfg.replicas ? cfg.replicas : 100;
    const double T = 4.0, dt = 1.0 / 32.0;
    const std::size_t count = std::size_t(std::llround(T / dt)) + 1;

    struct Out {
        PairingResult res;
    };
    std::vector<Out> outs(families);
    parallel_for(families, workers, [&](std::size_t fam) {
        PairingFamilyMember m;
        m.sigma = 0.5;
        if (fam == 0) {
            m.alpha = box_profile(1.0, T, dt);
            m.centers.assign(3 * m.alpha.count(), 0.0);
        } else {
            m.alpha.t0 = 0.0;
            m.alpha.dt = dt;
            m.alpha.values.resize(count);
            const SeedSpec coeff{cfg.seed, 1000 + 16 * fam};
            double c[5], d[5];
            for (int k = 0; k < 5; ++k) {
                c[k] = random_normal(coeff, 2 * k);
                d[k] = random_normal(coeff, 2 * k + 1);
            }
            for (std::size_t i = 0; i < count; ++i) {
                const double t = dt * double(i);
                double v = 0.0;
                for (int k = 0; k < 5; ++k)
                    v += c[k] * std::cos(double(k) * pi * t / T) + d[k] * std::sin(double(k) * pi * t / T);
                m.alpha.values[i] = std::fabs(v);
            }
            m.centers.resize(3 * count);
            for (int axis = 0; axis < 3; ++axis) {
                const Path b = sample_brownian(0.0, dt, count, SeedSpec{cfg.seed, 1000 + 16 * fam + 1 + axis});
                for (std::size_t i = 0; i < count; ++i) m.centers[3 * i + axis] = b.points[i];
            }
        }
        outs[fam].res = kernel_pairing(m);
    });

    const double bound = 1.0 / pi;
    std::vector<LadderRecord> recs;
    double worst_ratio = 0.0, worst_chain = 0.0;
    for (std::size_t fam = 0; fam < families; ++fam) {
        const auto& r = outs[fam].res;
        recs.push_back(LadderRecord{double(fam + 1), r.ratio, 0.0, std::fabs(r.ratio), 0.0, 1});
        worst_ratio = std::max(worst_ratio, r.ratio);
        if (r.hardy_bound > 0.0) worst_chain = std::max(worst_chain, r.fourfold / r.hardy_bound);
    }

    ordered_json body;
    detail::push_records(body, recs);
    ordered_json oracle;
    oracle["box_ratio"] = outs[0].res.ratio;
    oracle["box_hardy_bound_ratio"] = outs[0].res.hardy_bound / outs[0].res.norm_sq;
    body["oracle"] = oracle;
    std::vector<CheckRecord> checks;
    checks.push_back(detail::check("all ratios <= (1/pi)(1 + 5%)", worst_ratio <= bound * 1.05, worst_ratio,
                                   bound * 1.05));
    checks.push_back(detail::check("fourfold below hardy chain with 5% slack", worst_chain <= 1.05, worst_chain, 1.05));
    checks.push_back(detail::check("box family ratio <= (1/pi)(1 + 5%)", outs[0].res.ratio <= bound * 1.05,
                                   outs[0].res.ratio, bound * 1.05));
    detail::push_checks(body, checks);
    return body;
}

inline ordered_json positive_control(const ExperimentConfig& cfg, unsigned workers) {
    const std::size_t count = cfg.replicas ? cfg.replicas : 100;
    const GridSpec gs = cfg.grid_set ? cfg.grid : GridSpec{2, 128, 20.0};
    const Grid base = create_grid(gs.d, gs.n, gs.X);
    const double T = 30.0;
    const std::size_t nt = 81;
    const double envelope = 1.5;

    struct Out {
        StrichartzRatio base, fine, scaled;
    };
    std::vector<Out> outs(count);
    parallel_for(count, workers, [&](std::size_t i) {
        const SampledField f = random_band_limited(base, envelope, SeedSpec{cfg.seed, i});
        outs[i].base = strichartz_ratio(f, T, nt);
        outs[i].fine = strichartz_ratio(embed_refined(f), T, nt);
        outs[i].scaled = strichartz_ratio(reinterpret_scaled(f), T / 4.0, nt);
    });

    std::vector<LadderRecord> recs;
    std::vector<double> base_ratios;
    double worst_scaling = 1.0, worst_tail = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        recs.push_back(LadderRecord{double(i + 1), outs[i].base.ratio, 0.0, outs[i].base.ratio,
                                    0.0, 1});
        base_ratios.push_back(outs[i].base.ratio);
        const double sratio = outs[i].scaled.ratio / outs[i].base.ratio;
        if (std::fabs(sratio - 1.0) > std::fabs(worst_scaling - 1.0)) worst_scaling = sratio;
        worst_tail = std::max(worst_tail, outs[i].base.tail_fraction);
    }
    auto stats = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const double median = v[v.size() / 2];
        return std::pair<double, double>(v.back(), median);
    };
    const auto [mx, med] = stats(base_ratios);
    std::vector<double> fine_ratios;
    for (const auto& o : outs) fine_ratios.push_back(o.fine.ratio);
    const auto [mxf, medf] = stats(fine_ratios);

    ordered_json body;
    detail::push_records(body, recs);
    ordered_json oracle;
    oracle["max_ratio"] = mx;
    oracle["median_ratio"] = med;
    oracle["max_ratio_refined"] = mxf;
    oracle["median_ratio_refined"] = medf;
    oracle["worst_scaling_ratio"] = worst_scaling;
    oracle["worst_tail_fraction"] = worst_tail;
    body["oracle"] = oracle;
    std::vector<CheckRecord> checks;
    checks.push_back(detail::check("max/median ratio <= 3", mx / med <= 3.0, mx / med, 3.0));
    checks.push_back(detail::check("max ratio stable under refinement (5%)",
                                   std::fabs(mxf - mx) <= 0.05 * mx, std::fabs(mxf - mx) / mx, 0.05));
    checks.push_back(detail::check("median ratio stable under refinement (5%)",
                                   std::fabs(medf - med) <= 0.05 * med, std::fabs(medf - med) / med, 0.05));
    checks.push_back(detail::check("scaling covariance ratio in [0.95, 1.05]",
                                   worst_scaling >= 0.95 && worst_scaling <= 1.05, worst_scaling, 1.0));
    checks.push_back(detail::check("dispersive tail estimate below 1%", worst_tail < 0.01, worst_tail, 0.01));
    detail::push_checks(body, checks);
    return body;
}

inline ordered_json selftest(const ExperimentConfig& cfg, unsigned workers) {
    std::vector<CheckRecord> checks;
    auto add = [&](const std::string& name, bool pass, double value, double threshold) {
        checks.push_back(detail::check(name, pass, value, threshold));
    };
    const SeedSpec seed{cfg.seed, 424242};

    // transform round trip and Parseval on every supported dimension
    double worst_rt = 0.0, worst_parseval = 0.0;
    for (int d = 1; d <= 3; ++d) {
        const Grid g = create_grid(d, d == 3 ? 16 : 64, 5.0);
        SampledField f(g, Domain::physical);
        for (std::size_t i = 0; i < f.values.size(); ++i)
            f.values[i] = cplx(random_normal(seed, 2 * (i + d * 1000003)),
                               random_normal(seed, 2 * (i + d * 1000003) + 1));
        const SampledField spec = transform(f, Direction::forward);
        const SampledField back = transform(spec, Direction::inverse);
        double rt = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            rt = std::max(rt, std::abs(back.values[i] - f.values[i]));
            scale = std::max(scale, std::abs(f.values[i]));
        }
        worst_rt = std::max(worst_rt, rt / scale);
        worst_parseval = std::max(worst_parseval, std::fabs(spec.l2_norm() / f.l2_norm() - 1.0));
    }
    add("transform round trip < 1e-12 relative", worst_rt < 1e-12, worst_rt, 1e-12);
    add("parseval identity < 1e-9 relative", worst_parseval < 1e-9, worst_parseval, 1e-9);

    // unitarity and group law of the free evolution
    {
        const Grid g = create_grid(2, 64, 10.0);
        SampledField f(g, Domain::physical);
        for (std::size_t i = 0; i < f.values.size(); ++i)
            f.values[i] = cplx(random_normal(seed, 2 * (i + 5000011)), random_normal(seed, 2 * (i + 5000011) + 1));
        double worst_unit = 0.0;
        for (double t : {0.1, 1.0, 10.0})
            worst_unit = std::max(worst_unit,
                                  std::fabs(schrodinger_evolve(f, t).l2_norm() / f.l2_norm() - 1.0));
        add("free evolution unitary < 1e-9", worst_unit < 1e-9, worst_unit, 1e-9);
        const SampledField two_step = schrodinger_evolve(schrodinger_evolve(f, 0.4), 0.35);
        const SampledField one_step = schrodinger_evolve(f, 0.75);
        double gap = 0.0;
        for (std::size_t i = 0; i < f.values.size(); ++i)
            gap = std::max(gap, std::abs(two_step.values[i] - one_step.values[i]));
        add("group law < 1e-9", gap / f.l2_norm() < 1e-9, gap / f.l2_norm(), 1e-9);
    }

    // product-to-sum identity of the wave multipliers
    {
        const Grid g = create_grid(3, 16, 4.0);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const double s = 10.0 * (random_uniform(seed, 9000 + 2 * k) - 0.5);
            const double t = 10.0 * (random_uniform(seed, 9000 + 2 * k + 1) - 0.5);
            worst = std::max(worst, composition_identity_check(s, t, g));
        }
        add("composition identity < 1e-12", worst < 1e-12, worst, 1e-12);
    }

    // Hardy operators: box value, bound, adjointness
    {
        const TimeProfile box = box_profile(1.0, 2000.0, 1.0 / 64.0);
        const double h2 = l2_norm(hardy_transform(box));
        add("box averaging norm^2 near 2", std::fabs(h2 * h2 - 2.0) < 1e-3, h2 * h2, 2.0);
        double worst_ratio = 0.0, worst_adj = 0.0;
        for (std::size_t k = 0; k < 50; ++k) {
            TimeProfile a;
            a.t0 = 0.0;
            a.dt = 1.0 / 128.0;
            a.values.resize(1025);
            TimeProfile b = a;
            for (std::size_t i = 0; i < a.values.size(); ++i) {
                a.values[i] = cplx(random_normal(SeedSpec{cfg.seed, 500 + k}, 2 * i),
                                   random_normal(SeedSpec{cfg.seed, 500 + k}, 2 * i + 1));
                b.values[i] = cplx(random_normal(SeedSpec{cfg.seed, 600 + k}, 2 * i),
                                   random_normal(SeedSpec{cfg.seed, 600 + k}, 2 * i + 1));
            }
            worst_ratio = std::max(worst_ratio, l2_norm(hardy_transform(a)) / l2_norm(a));
            const std::complex<double> lhs = inner(hardy_transform(a), b);
            const std::complex<double> rhs = inner(a, hardy_adjoint(b));
            worst_adj = std::max(worst_adj, std::abs(lhs - rhs) / std::abs(lhs));
        }
        add("averaging operator bounded by 2 + 1e-6", worst_ratio <= 2.0 + 1e-6, worst_ratio, 2.0 + 1e-6);
        add("adjoint identity < 1e-8 relative", worst_adj < 1e-8, worst_adj, 1e-8);
    }

    // density bounds
    {
        std::size_t violations = 0;
        for (std::size_t i = 0; i < 10000; ++i) {
            const double r = std::sqrt(random_uniform(SeedSpec{cfg.seed, 700}, 2 * i));
            const double phi = 2.0 * pi * random_uniform(SeedSpec{cfg.seed, 700}, 2 * i + 1);
            const double z1 = 0.5 + r * std::cos(phi), z2 = r * std::sin(phi);
            const double k = schrodinger_spectral_density(0.25, z1, z2);
            const double d2 = (z1 - 0.5) * (z1 - 0.5) + z2 * z2;
            if (!(k >= z2 * z2 / (2.0 * d2 * d2) * (1.0 - 1e-12))) ++violations;
            const double z = random_uniform(SeedSpec{cfg.seed, 701}, 2 * i);
            const double rr = z * random_uniform(SeedSpec{cfg.seed, 701}, 2 * i + 1);
            if (z > 0 && rr > 0 &&
                !(cone_density(z, rr) >= 4.0 * z * z / (rr * rr * (4.0 + z * z)) * (1.0 - 1e-12)))
                ++violations;
        }
        add("pointwise density bounds: zero violations", violations == 0, double(violations), 0.0);
    }

    // cone ordering and characteristic value
    {
        const ConeIntegral ci = cone_integral(0.01);
        add("cone integral dominates comparison at eps = 0.01", ci.value >= ci.comparison, ci.value,
            ci.comparison);
        const double mod = std::abs(gaussian_quadratic_char(0.5));
        add("characteristic modulus at theta = 1/2", std::fabs(mod - std::pow(2.0, -0.25)) < 1e-12, mod,
            std::pow(2.0, -0.25));
        const auto mc = gaussian_quadratic_char_mc(0.5, 100000, SeedSpec{cfg.seed, 702});
        const double gap = std::abs(mc.mean - gaussian_quadratic_char(0.5));
        add("characteristic MC within 4 sigma", gap <= 4.0 * mc.stderr_combined, gap,
            4.0 * mc.stderr_combined);
    }

    // lacunary path normalization
    {
        const Path p = lacunary_path(2, 128, 0.0, 2.0 * pi);
        add("lacunary path seminorm normalized", std::fabs(lip_half_seminorm(p) - 1.0) < 1e-9,
            lip_half_seminorm(p), 1.0);
    }

    // Hermitian kernel gives a real quadratic form
    {
        const std::size_t count = 33;
        const double dt = 0.125;
        const Path path = drifting_brownian_path(-2.0, dt, count, cfg.theta, SeedSpec{cfg.seed, 703});
        const KernelMatrix m = build_kernel_matrix(-2.0, dt, count, 2, [&](double t, double s) {
            const std::size_t i = std::size_t(std::llround((t + 2.0) / dt));
            const std::size_t j = std::size_t(std::llround((s + 2.0) / dt));
            return gaussian_data_kernel(t, s, path, i, j);
        });
        TimeProfile a;
        a.t0 = -2.0;
        a.dt = dt;
        a.values.resize(count);
        for (std::size_t i = 0; i < count; ++i)
            a.values[i] = cplx(random_normal(SeedSpec{cfg.seed, 704}, 2 * i),
                               random_normal(SeedSpec{cfg.seed, 704}, 2 * i + 1));
        const std::complex<double> q = m.quadratic_form(a);
        add("hermitian quadratic form real to 1e-10 relative", std::fabs(q.imag()) <= 1e-10 * std::abs(q),
            std::fabs(q.imag()) / std::abs(q), 1e-10);
    }

    // resolvent kernel sup norm
    add("resolvent kernel sup norm times 4 pi |t| equals 1",
        wave_spatial_kernel(1.0, 1.0) * 4.0 * pi * 1.0 == 1.0, wave_spatial_kernel(1.0, 1.0) * 4.0 * pi,
        1.0);

    ordered_json body;
    body["records"] = ordered_json::array();
    detail::push_checks(body, checks);
    (void)workers;
    return body;
}

}  // namespace experiments

// ---------------------------------------------------------------------------

inline ordered_json resolve_config_echo(const ExperimentConfig& cfg, const std::vector<double>& ladder,
                                        std::size_t replicas) {
    ordered_json j;
    j["experiment"] = cfg.experiment;
    j["seed"] = cfg.seed;
    j["ladder"] = ladder;
    ordered_json g;
    g["d"] = cfg.grid.d;
    g["n"] = cfg.grid.n;
    g["X"] = cfg.grid.X;
    j["grid"] = g;
    j["replicas"] = replicas;
    j["theta"] = cfg.theta;
    return j;
}

inline Report run_experiment(const ExperimentConfig& cfg, unsigned workers) {
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), cfg.experiment) == names.end())
        throw std::invalid_argument("unknown experiment: " + cfg.experiment);

    const auto t0 = std::chrono::steady_clock::now();
    ordered_json body;
    if (cfg.experiment == "thm1") body = experiments::thm1(cfg, workers);
    else if (cfg.experiment == "carbery-hofmann") body = experiments::carbery_hofmann(cfg, workers);
    else if (cfg.experiment == "thm2-kernel") body = experiments::thm2_kernel(cfg, workers);
    else if (cfg.experiment == "thm2-blowup") body = experiments::thm2_blowup(cfg, workers);
    else if (cfg.experiment == "thm2-fourier") body = experiments::thm2_fourier(cfg, workers);
    else if (cfg.experiment == "thm3-cone") body = experiments::thm3_cone(cfg, workers);
    else if (cfg.experiment == "lemma6") body = experiments::lemma6(cfg, workers);
    else if (cfg.experiment == "positive-control") body = experiments::positive_control(cfg, workers);
    else body = experiments::selftest(cfg, workers);
    const auto t1 = std::chrono::steady_clock::now();

    Report rep;
    rep.body["experiment"] = cfg.experiment;
    rep.body["config"] = resolve_config_echo(cfg, cfg.ladder, cfg.replicas);
    for (auto it = body.begin(); it != body.end(); ++it) rep.body[it.key()] = it.value();

    // constants stamp
    ordered_json cstamp;
    std::string cbytes;
    std::string cname = "(builtin)";
    std::string version = "builtin";
    if (!cfg.constants_path.empty()) {
        std::ifstream f(cfg.constants_path, std::ios::binary);
        if (f) {
            std::ostringstream ss;
            ss << f.rdbuf();
            cbytes = ss.str();
            cname = cfg.constants_path.substr(cfg.constants_path.find_last_of('/') + 1);
            try {
                auto doc = ordered_json::parse(cbytes);
                if (doc.contains("version")) version = doc["version"].get<std::string>();
            } catch (...) {
                version = "unparsed";
            }
        }
    }
    if (cbytes.empty()) {
        ordered_json builtin = ordered_json::array();
        for (const auto& c : oracle_constants()) {
            ordered_json e;
            e["name"] = c.name;
            e["value"] = c.value;
            builtin.push_back(e);
        }
        cbytes = builtin.dump();
    }
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(cbytes)));
    cstamp["file"] = cname;
    cstamp["version"] = version;
    cstamp["fnv1a64"] = hex;
    rep.body["constants"] = cstamp;

    ordered_json seeds;
    seeds["master"] = cfg.seed;
    seeds["streams"] = "replica/member index keyed; see experiment docs";
    rep.body["seed_provenance"] = seeds;

    rep.meta["workers"] = workers;
    rep.meta["out"] = cfg.out;
    rep.meta["format"] = cfg.format;
    rep.meta["wall_clock_seconds"] = std::chrono::duration<double>(t1 - t0).count();
    return rep;
}

}  // namespace harmlab
