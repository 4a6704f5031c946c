#include "levyup/quadrature.hpp"

#include <algorithm>

namespace levyup::quad {

double wynn_epsilon(std::span<const double> s, double* error) {
    const std::size_t n = s.size();
    if (n == 0) {
        if (error) *error = std::numeric_limits<double>::infinity();
        return 0.0;
    }
    if (n < 3) {
        if (error) *error = n == 2 ? std::abs(s[1] - s[0]) : std::numeric_limits<double>::infinity();
        return s.back();
    }
    double best = s.back();
    double best_err = std::abs(s[n - 1] - s[n - 2]);
    // a is column k-2, b is column k-1 of the epsilon table.
    std::vector<double> a(n + 1, 0.0), b(s.begin(), s.end());
    double last_even = s.back();
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<double> c(n - k);
        bool ok = true;
        for (std::size_t j = 0; j + 1 < b.size(); ++j) {
            const double d = b[j + 1] - b[j];
            if (d == 0.0) {
                ok = false;
                break;
            }
            c[j] = a[j + 1] + 1.0 / d;
        }
        if (!ok) break;
        if (k % 2 == 0 && !c.empty()) {
            const double est = c.back();
            const double err = std::abs(est - last_even);
            if (std::isfinite(est) && err <= best_err) {
                best = est;
                best_err = err;
            }
            last_even = est;
        }
        a = std::move(b);
        b = std::move(c);
        if (b.size() < 2) break;
    }
    if (error) *error = best_err;
    return best;
}

}  // namespace levyup::quad
