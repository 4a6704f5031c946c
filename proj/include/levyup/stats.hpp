#pragma once

#include <cstddef>
#include <vector>

namespace levyup {

// Monte Carlo estimate with a two-sided confidence half width.
struct McEstimate {
    double p_hat = 0.0;
    double ci_half_width = 0.0;
    std::size_t n_paths = 0;

    double lo() const;  // clipped to [0, 1] for probabilities
    double hi() const;
    bool probability = true;
};

double normal_quantile(double level);  // two-sided: z with P(|Z| <= z) = level

// Normal interval, Wilson when min(p, 1-p) n < 10.
McEstimate proportion_estimate(std::size_t hits, std::size_t n, double level = 0.99);
McEstimate mean_estimate(const std::vector<double>& xs, double level = 0.99);

// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
double ks_statistic(std::vector<double> a, std::vector<double> b);
double ks_pvalue(double d, std::size_t n, std::size_t m);

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Sample quantile with linear interpolation between order statistics.
double quantile(std::vector<double> v, double q);

}  // namespace levyup
