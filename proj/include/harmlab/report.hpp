#pragma once

// Experiment reports. The body is a pure function of the experiment config
// (seed included): timestamps, wall clock, worker count and output location
// live in a separate metadata block so reruns are byte-comparable.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace harmlab {

using ordered_json = nlohmann::ordered_json;

struct LadderRecord {
    double parameter = 0.0;
    double re = 0.0;
    double im = 0.0;
    double modulus = 0.0;
    double mc_stderr = 0.0;
    std::size_t n_replicas = 1;
};

inline ordered_json to_json(const LadderRecord& r) {
    ordered_json j;
    j["parameter"] = r.parameter;
    j["re"] = r.re;
    j["im"] = r.im;
    j["modulus"] = r.modulus;
    j["mc_stderr"] = r.mc_stderr;
    j["n_replicas"] = r.n_replicas;
    return j;
}

struct CheckRecord {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
};

inline ordered_json to_json(const CheckRecord& c) {
    ordered_json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    j["value"] = c.value;
    j["threshold"] = c.threshold;
    return j;
}

struct Report {
    ordered_json body;
    ordered_json meta;

    std::string body_string() const { return body.dump(2); }

    // CSV body: fixed header, one row per ladder record, 17 significant digits.
    std::string csv_string() const {
        std::string out = "parameter,re,im,modulus,mc_stderr,n_replicas\n";
        if (!body.contains("records")) return out;
        char buf[256];
        for (const auto& r : body["records"]) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%zu\n",
                          r["parameter"].get<double>(), r["re"].get<double>(), r["im"].get<double>(),
                          r["modulus"].get<double>(), r["mc_stderr"].get<double>(),
                          std::size_t(r["n_replicas"].get<std::uint64_t>()));
            out += buf;
        }
        return out;
    }

    void write(const std::string& path, const std::string& format) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open report output: " + path);
        if (format == "csv") {
            f << csv_string();
        } else if (format == "json") {
            ordered_json doc;
            doc["body"] = body;
            doc["meta"] = meta;
            f << doc.dump(2) << "\n";
        } else {
            throw std::invalid_argument("unknown report format: " + format);
        }
        if (!f.good()) throw std::runtime_error("short write on report output: " + path);
    }
};

}  // namespace harmlab
