#include "levyup/stats.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/statistics/linear_regression.hpp>

#include <algorithm>
#include <cmath>

#include "levyup/errors.hpp"

namespace levyup {

double McEstimate::lo() const {
    const double v = p_hat - ci_half_width;
    return probability ? std::max(0.0, v) : v;
}

double McEstimate::hi() const {
    const double v = p_hat + ci_half_width;
    return probability ? std::min(1.0, v) : v;
}

double normal_quantile(double level) {
    const boost::math::normal_distribution<double> n;
    return boost::math::quantile(n, 0.5 + 0.5 * level);
}

McEstimate proportion_estimate(std::size_t hits, std::size_t n, double level) {
    McEstimate e;
    e.n_paths = n;
    if (n == 0) return e;
    const double p = static_cast<double>(hits) / n;
    const double z = normal_quantile(level);
    e.p_hat = p;
    if (std::min(p, 1.0 - p) * n >= 10.0) {
        e.ci_half_width = z * std::sqrt(p * (1.0 - p) / n);
        return e;
    }
    const double z2n = z * z / n;
    const double centre = (p + 0.5 * z2n) / (1.0 + z2n);
    const double w = z / (1.0 + z2n) * std::sqrt(p * (1.0 - p) / n + 0.25 * z2n / n);
    e.ci_half_width = std::max(centre + w - p, p - (centre - w));
    return e;
}

McEstimate mean_estimate(const std::vector<double>& xs, double level) {
    McEstimate e;
    e.probability = false;
    e.n_paths = xs.size();
    if (xs.empty()) return e;
    double m = 0.0;
    for (double x : xs) m += x;
    m /= xs.size();
    double v = 0.0;
    for (double x : xs) v += (x - m) * (x - m);
    v = xs.size() > 1 ? v / (xs.size() - 1) : 0.0;
    e.p_hat = m;
    e.ci_half_width = normal_quantile(level) * std::sqrt(v / xs.size());
    return e;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw PreconditionViolated("KS test needs two non-empty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
    }
    return d;
}

double ks_pvalue(double d, std::size_t n, std::size_t m) {
    const double ne = static_cast<double>(n) * m / (n + m);
    const double sq = std::sqrt(ne);
    const double lambda = (sq + 0.12 + 0.11 / sq) * d;
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 ? 2.0 : -2.0) * term;
        if (term < 1e-16) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw PreconditionViolated("line fit needs >= 2 points");
    auto [c0, c1] = boost::math::statistics::simple_ordinary_least_squares(x, y);
    return {c0, c1};
}

double quantile(std::vector<double> v, double q) {
    if (v.empty()) throw PreconditionViolated("quantile of an empty sample");
    std::sort(v.begin(), v.end());
    const double pos = q * (v.size() - 1);
    const std::size_t k = static_cast<std::size_t>(std::floor(pos));
    if (k + 1 >= v.size()) return v.back();
    const double w = pos - k;
    return v[k] * (1.0 - w) + v[k + 1] * w;
}

}  // namespace levyup
