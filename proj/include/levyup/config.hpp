#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levyup/criteria.hpp"
#include "levyup/errors.hpp"
#include "levyup/growth.hpp"
#include "levyup/limsup_lab.hpp"
#include "levyup/process.hpp"
#include "levyup/simulate.hpp"

namespace levyup {

class ParseError : public Error {
public:
    ParseError(int line, std::string key, const std::string& what)
        : Error("ParseError", "line " + std::to_string(line) + (key.empty() ? "" : ", key '" + key + "'") +
                                  ": " + what),
          line_(line),
          key_(std::move(key)) {}

    int line() const { return line_; }
    const std::string& key() const { return key_; }

private:
    int line_;
    std::string key_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error("ValidationError", what) {}
};

struct ProcessConfig {
    // stable, iterated_log, log_corrected, atom, zero, variable_order, stable_type, sde
    std::string kind = "stable";
    double alpha = 1.0;
    int d = 1;
    double skew = 0.0;
    std::string norm = "symbol";  // symbol | density
    double drift = 0.0;
    double mass = 1.0;
    double radius = 2.0;
    double order_base = 1.5;
    double order_slope = 0.4;
    double amplitude = 0.25;
    double sigma0 = 1.0;
    double sigma1 = 0.5;
    double omega = 1.0;
    double driver_alpha = 1.0;  // stable driver of the sde kind, symbol norm
    double x = 0.0;             // every coordinate of the starting point

    bool operator==(const ProcessConfig&) const = default;
};

struct GrowthConfig {
    std::string form = "power";  // power | power_log
    double kappa = 0.8;
    double scale = 1.0;
    double lambda = 0.0;

    bool operator==(const GrowthConfig&) const = default;
};

struct RunSettings {
    std::string criterion = "auto";  // auto | levy | power | ltp_upper | ltp_lower
    std::size_t n_paths = 1000;
    std::uint64_t seed = 1;
    double dt = 1e-3;
    double horizon = 1.0;
    std::string scheme = "auto";
    unsigned threads = 0;
    int n_min = 4;
    int n_max = 16;
    int dyadic_levels = 64;
    double eps = 1.0;
    double ball_radius = 0.5;
    double bg_tol = 0.02;
    bool check_majorization = false;
    std::string bound = "ExitSurvival";
    std::vector<double> t_grid{0.01, 0.05, 0.1};
    std::vector<double> r_grid{0.25, 0.5, 1.0};
    double c_max = 1.0;
    double c_lower = 0.5;
    std::string example = "StableDichotomy";

    bool operator==(const RunSettings&) const = default;
};

struct OutputConfig {
    std::string dir = ".";
    bool svg = false;

    bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
    ProcessConfig process;
    GrowthConfig growth;
    RunSettings run;
    OutputConfig output;

    bool operator==(const RunConfig&) const = default;
};

// `key = value` lines under [process], [growth], [run] and [output]; `#` starts
// a comment. Missing keys keep their defaults.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);
// Throws ValidationError naming the first violated range.
void validate_config(const RunConfig& config);

ProcessSpec build_process(const ProcessConfig& p);
GrowthFunction build_growth(const GrowthConfig& g);
Vec start_point(const RunConfig& config);
SimConfig sim_config(const RunConfig& config, const ProcessSpec& spec);
ClassifySettings classify_settings(const RunConfig& config);

}  // namespace levyup
