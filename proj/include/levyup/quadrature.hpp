#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "levyup/errors.hpp"

namespace levyup::quad {

struct Options {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_depth = 60;        // maximal number of bisections along any branch
    int max_intervals = 4000;  // global budget of accepted sub-intervals
};

struct Result {
    double value = 0.0;
    double error = 0.0;
};

namespace detail {

template <class F>
Result gk15(const F& f, double a, double b) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    using G = boost::math::quadrature::gauss<double, 7>;
    const auto& xk = GK::abscissa();
    const auto& wk = GK::weights();
    const auto& wg = G::weights();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double k = wk[0] * fc;
    double g = wg[0] * fc;
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double fs = f(c - h * xk[i]) + f(c + h * xk[i]);
        k += wk[i] * fs;
        if (i % 2 == 0) g += wg[i / 2] * fs;
    }
    return {k * h, std::abs((k - g) * h)};
}

template <class F>
void adaptive(const F& f, double a, double b, const Result& whole, const Options& opt,
              double tol, int depth, int& budget, Result& acc) {
    if (whole.error <= tol || depth >= opt.max_depth || budget <= 0) {
        if (whole.error > tol) acc.error = std::numeric_limits<double>::infinity();
        acc.value += whole.value;
        if (std::isfinite(acc.error)) acc.error += whole.error;
        --budget;
        return;
    }
    const double m = 0.5 * (a + b);
    const Result left = gk15(f, a, m);
    const Result right = gk15(f, m, b);
    adaptive(f, a, m, left, opt, 0.5 * tol, depth + 1, budget, acc);
    adaptive(f, m, b, right, opt, 0.5 * tol, depth + 1, budget, acc);
}

}  // namespace detail

// Adaptive Gauss-Kronrod (7/15) quadrature on a finite interval. Throws
// QuadratureFailure when the tolerance is not met within the bisection budget.
template <class F>
double integrate(const F& f, double a, double b, const Options& opt = {}) {
    if (a == b) return 0.0;
    const Result whole = detail::gk15(f, a, b);
    if (!std::isfinite(whole.value))
        throw EvaluationFailure("integrand returned a non-finite value");
    const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(whole.value));
    Result acc;
    int budget = opt.max_intervals;
    detail::adaptive(f, a, b, whole, opt, tol, 0, budget, acc);
    const double final_tol = std::max(opt.abs_tol, 2.0 * opt.rel_tol * std::abs(acc.value));
    if (!std::isfinite(acc.value))
        throw EvaluationFailure("integrand returned a non-finite value");
    if (!(acc.error <= final_tol))
        throw QuadratureFailure("adaptive quadrature did not reach tolerance on [" +
                                std::to_string(a) + ", " + std::to_string(b) + "]");
    return acc.value;
}

// Fixed-order 20-point Gauss-Legendre rule.
template <class F>
double gauss_legendre(const F& f, double a, double b) {
    using G = boost::math::quadrature::gauss<double, 20>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) {
            s += w[i] * f(c);
        } else {
            s += w[i] * (f(c - h * x[i]) + f(c + h * x[i]));
        }
    }
    return s * h;
}

// Integral of f over [a, b], 0 < a < b, in the variable u = log t, split into
// pieces of ratio at most `ratio`. Each piece uses the fixed 20-point rule.
template <class F>
double integrate_geometric(const F& f, double a, double b, double ratio = 2.0) {
    if (!(a > 0.0) || !(b > a)) return 0.0;
    const double la = std::log(a), lb = std::log(b);
    const int pieces = std::max(1, static_cast<int>(std::ceil((lb - la) / std::log(ratio))));
    const double step = (lb - la) / pieces;
    double s = 0.0;
    for (int k = 0; k < pieces; ++k) {
        const double u0 = la + k * step;
        s += gauss_legendre([&](double u) { const double t = std::exp(u); return f(t) * t; },
                            u0, u0 + step);
    }
    return s;
}

// Adaptive integral of f over [a, b], 0 < a < b, in the variable u = log t,
// split into pieces of ratio at most `ratio`. Suited to integrands with power
// behaviour over many decades.
template <class F>
double integrate_log(const F& f, double a, double b, const Options& opt = {}, double ratio = 4.0) {
    if (!(a > 0.0) || !(b > a)) return 0.0;
    const double la = std::log(a), lb = std::log(b);
    const int pieces = std::max(1, static_cast<int>(std::ceil((lb - la) / std::log(ratio))));
    const double step = (lb - la) / pieces;
    auto g = [&](double u) { const double t = std::exp(u); return f(t) * t; };
    double s = 0.0;
    for (int k = 0; k < pieces; ++k) {
        const double u0 = la + k * step;
        const double u1 = (k + 1 == pieces) ? lb : u0 + step;
        s += integrate(g, u0, u1, opt);
    }
    return s;
}

// Limit of a sequence of partial sums by Wynn's epsilon algorithm. `error`
// receives the difference between the last two diagonal estimates.
double wynn_epsilon(std::span<const double> partial_sums, double* error = nullptr);

}  // namespace levyup::quad
