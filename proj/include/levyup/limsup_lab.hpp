#pragma once

#include <functional>
#include <string>
#include <vector>

#include "levyup/criteria.hpp"
#include "levyup/growth.hpp"
#include "levyup/simulate.hpp"

namespace levyup {

// Per-level summaries of M_n = sup_{s <= 2^-n} |X_s - x| / f(2^-n) over paths.
struct DyadicStats {
    std::vector<int> levels;
    std::vector<double> t;  // 2^-n
    std::vector<double> q10, median, q90;
    std::vector<double> mean_log;
    std::size_t n_paths = 0;
};

enum class TrendLabel { TendsZero, Grows, Flat, Noisy };

std::string to_string(TrendLabel l);

struct TrendVerdict {
    TrendLabel label = TrendLabel::Flat;
    double slope = 0.0;  // d log2(median) / dn over the last two thirds of levels
    double ratio = 1.0;  // median(n_max) / median(n_min)
    // Direction of the slope agrees with the direction of the ratio; true for
    // Flat and Noisy labels whose slope and ratio point the same way.
    bool consistent = true;
};

struct TrendThresholds {
    double slope = 0.05;
    double ratio = 4.0;
    double noisy_decades = 3.0;
};

// Geometric time grid: 2^-n / 256 steps inside [2^-(n+1), 2^-n] for
// n = n_min..n_max and 256 steps on [0, 2^-(n_max+1)].
std::vector<double> dyadic_time_grid(int n_min, int n_max);

// Denominator of M_n from the time t_n and the path's running maximum there.
using Normaliser = std::function<double(double t, double runmax)>;

DyadicStats dyadic_limsup_stats(const ProcessSpec& spec, const Vec& x, const GrowthFunction& f, int n_min,
                                int n_max, const SimConfig& config);
DyadicStats dyadic_limsup_stats(const ProcessSpec& spec, const Vec& x, const Normaliser& norm, int n_min,
                                int n_max, const SimConfig& config);

TrendVerdict trend_classify(const DyadicStats& stats, const TrendThresholds& th = {});

enum class ExampleName { StableDichotomy, Main48, VariableOrder, StableType, SdeCauchy, SqrtTLaw };

std::string to_string(ExampleName e);
ExampleName example_from_string(const std::string& s);

struct ExampleRow {
    std::string description;
    Classification analytic;
    DyadicStats stats;
    TrendVerdict empirical;
    bool agree = false;
};

struct ExampleReport {
    ExampleName name = ExampleName::StableDichotomy;
    std::vector<ExampleRow> rows;
    bool agree() const;
};

struct ExampleSettings {
    std::size_t n_paths = 500;
    std::uint64_t seed = 1;
    int n_min = 4;
    int n_max = 16;
    unsigned threads = 0;
};

ExampleReport reproduce_example(ExampleName name, const ExampleSettings& settings = {});

// max over t of sum_{n=1}^{terms} n^-2 t^{1/n} log(1/t) on a dense grid of
// [1e-6, 0.999].
double appendix_series_max(int terms = 10000, int grid_points = 4000);

}  // namespace levyup
