// Experiment runner. Usage:
//   harmlab <experiment> [--seed N] [--ladder a,b,c | --ladder-geom start:ratio:count]
//           [--grid d:n:X] [--replicas N] [--theta T] [--out PATH] [--format csv|json]
//           [--workers N] [--constants PATH] [--config FILE]
//
// Exit status: 0 all experiment checks pass, 1 a check failed, 2 usage or
// configuration error. HARMLAB_OUT sets the default output directory.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "harmlab/experiments.hpp"

namespace {

std::vector<double> parse_geom(const std::string& text) {
    double start = 0.0, ratio = 0.0;
    int count = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &start, &ratio, &count) != 3 || count < 1 ||
        ratio <= 0.0 || start <= 0.0)
        throw CLI::ValidationError("--ladder-geom", "expected start:ratio:count with positive values");
    std::vector<double> out;
    double v = start;
    for (int i = 0; i < count; ++i, v *= ratio) out.push_back(v);
    return out;
}

std::string default_constants_path() {
    std::error_code ec;
    const auto exe = std::filesystem::read_symlink("/proc/self/exe", ec);
    if (ec) return "constants.json";
    return (exe.parent_path() / "constants.json").string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"harmonic-analysis experiment runner"};
    app.set_config("--config", "", "flat key=value config file; flags override it");

    std::string experiment;
    std::string names;
    for (const auto& n : harmlab::experiment_names()) names += (names.empty() ? "" : ", ") + n;
    app.add_option("experiment", experiment, "one of: " + names)->required();

    harmlab::ExperimentConfig cfg;
    std::string ladder_geom_text, grid_text;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    app.add_option("--seed", cfg.seed, "master seed");
    app.add_option("--ladder", cfg.ladder, "explicit ladder, comma separated")->delimiter(',');
    app.add_option("--ladder-geom", ladder_geom_text, "geometric ladder start:ratio:count");
    app.add_option("--grid", grid_text, "grid as d:n:X");
    app.add_option("--replicas", cfg.replicas, "replica / family / sample count");
    app.add_option("--theta", cfg.theta, "Brownian scale parameter");
    app.add_option("--out", cfg.out, "output path");
    app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--workers", workers, "worker threads (results are worker-count independent)");
    app.add_option("--constants", cfg.constants_path, "constants file (default: next to the binary)");

    try {
        app.parse(argc, argv);
        cfg.experiment = experiment;
        if (!cfg.ladder.empty() && !ladder_geom_text.empty())
            throw CLI::ValidationError("--ladder", "give either --ladder or --ladder-geom, not both");
        if (!ladder_geom_text.empty()) cfg.ladder = parse_geom(ladder_geom_text);
        if (!grid_text.empty()) {
            int d = 0;
            unsigned long long n = 0;
            double X = 0.0;
            if (std::sscanf(grid_text.c_str(), "%d:%llu:%lf", &d, &n, &X) != 3)
                throw CLI::ValidationError("--grid", "expected d:n:X");
            cfg.grid = harmlab::GridSpec{d, std::size_t(n), X};
            cfg.grid_set = true;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (cfg.constants_path.empty()) cfg.constants_path = default_constants_path();
    if (cfg.out.empty()) {
        const char* dir = std::getenv("HARMLAB_OUT");
        const std::string base = cfg.experiment + "." + (cfg.format == "csv" ? "csv" : "json");
        cfg.out = dir ? (std::string(dir) + "/" + base) : base;
    }

    try {
        const harmlab::Report rep = harmlab::run_experiment(cfg, workers);
        rep.write(cfg.out, cfg.format);
        const bool pass = rep.body.contains("pass") && rep.body["pass"].get<bool>();
        std::printf("%s: %s  (report: %s)\n", cfg.experiment.c_str(), pass ? "PASS" : "FAIL",
                    cfg.out.c_str());
        if (rep.body.contains("checks"))
            for (const auto& c : rep.body["checks"])
                std::printf("  [%s] %s  value=%.6g threshold=%.6g\n",
                            c["pass"].get<bool>() ? "ok" : "FAIL",
                            c["name"].get<std::string>().c_str(), c["value"].get<double>(),
                            c["threshold"].get<double>());
        return pass ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
