#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "levyup/errors.hpp"
#include "levyup/growth.hpp"
#include "levyup/levy_core.hpp"
#include "levyup/models.hpp"

using namespace levyup;

namespace {

const Vec kZero{0.0};

std::vector<ProcessSpec> every_model() {
    StableParams skew;
    skew.alpha = 1.5;
    skew.skew = 0.7;
    StableParams dens;
    dens.alpha = 0.7;
    dens.norm = StableNorm::Density;
    return {make_stable({0.5}),    make_stable({1.0}),   make_stable({1.5}),  make_stable(skew),
            make_stable(dens),     make_iterated_log(),  make_log_corrected(), make_atom(),
            make_variable_order(), make_stable_type(),   make_sde(make_stable({}))};
}

// Brute-force exponent of nu(dy) = |y|^{-1-alpha} dy: trapezoid in log s over
// [1e-10, 1e3] with 1e6 nodes plus the exact non-oscillating remainder.
double brute_force_exponent(double alpha, double xi) {
    const int n = 1'000'000;
    const double lo = std::log(1e-10), hi = std::log(1e3), h = (hi - lo) / (n - 1);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const double s = std::exp(lo + k * h);
        const double u = xi * s;
        const double one_minus_cos = u < 1e-4 ? 0.5 * u * u : 1.0 - std::cos(u);
        const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
        sum += w * one_minus_cos * 2.0 * std::pow(s, -alpha);
    }
    const double S = 1e3;
    return sum * h + 2.0 * std::pow(S, -alpha) / alpha;
}

}  // namespace

TEST(Exponent, MatchesBruteForceQuadrature) {
    const double alpha = 1.5;
    StableParams p;
    p.alpha = alpha;
    p.norm = StableNorm::Density;
    const auto spec = make_stable(p);
    const auto& tr = spec.levy_family().levy_triplet();
    const double closed = std::numbers::pi / (std::tgamma(1.0 + alpha) * std::sin(std::numbers::pi * alpha / 2.0));
    for (double xi : {0.5, 1.0, 4.0}) {
        const double bf = brute_force_exponent(alpha, xi);
        EXPECT_NEAR(bf / (closed * std::pow(xi, alpha)), 1.0, 1e-4) << xi;
        EXPECT_NEAR(eval_exponent(tr, Vec{xi}).real() / bf, 1.0, 1e-4) << xi;
        EXPECT_NEAR(spec.symbol(kZero, Vec{xi}).real() / bf, 1.0, 1e-4) << xi;
    }
}

TEST(Exponent, QuadratureAgreesWithStableClosedForm) {
    for (double a : {0.5, 1.0, 1.5}) {
        const auto spec = make_stable({a});
        const auto& tr = spec.levy_family().levy_triplet();
        for (double xi : {0.1, 0.7, 3.0, 20.0, 100.0}) {
            const Complex q = eval_exponent(tr, Vec{xi});
            EXPECT_NEAR(q.real() / std::pow(xi, a), 1.0, 1e-5) << "alpha=" << a << " xi=" << xi;
            EXPECT_NEAR(q.imag(), 0.0, 1e-8 * std::pow(xi, a));
        }
    }
}

TEST(Exponent, SkewedStableImaginaryPart) {
    StableParams p;
    p.alpha = 1.5;
    p.skew = 0.5;
    const auto spec = make_stable(p);
    const auto& tr = spec.levy_family().levy_triplet();
    for (double xi : {0.3, 2.0, 50.0}) {
        const Complex q = eval_exponent(tr, Vec{xi});
        const double mag = std::pow(xi, 1.5);
        EXPECT_NEAR(q.real() / mag, 1.0, 1e-5);
        EXPECT_NEAR(q.imag() / mag, -0.5 * std::tan(0.75 * std::numbers::pi), 1e-5);
    }
}

TEST(Symbol, StructuralInvariants) {
    for (const auto& spec : every_model()) {
        for (double x : {-0.4, 0.0, 0.9}) {
            const Vec z{x};
            EXPECT_EQ(std::abs(spec.symbol(z, Vec{0.0})), 0.0) << spec.name();
            for (double xi : {1e-3, 0.2, 1.0, 13.0, 4e3}) {
                const Complex a = spec.symbol(z, Vec{xi});
                const Complex b = spec.symbol(z, Vec{-xi});
                EXPECT_GE(a.real(), 0.0) << spec.name();
                EXPECT_NEAR(a.real(), b.real(), 1e-9 * (1.0 + std::abs(a)));
                EXPECT_NEAR(a.imag(), -b.imag(), 1e-9 * (1.0 + std::abs(a)));
            }
        }
    }
}

TEST(Symbol, Doubling) {
    std::vector<double> mags;
    for (int e = -4; e <= 6; ++e) mags.push_back(std::pow(10.0, e));
    for (const auto& spec : every_model())
        EXPECT_LE(doubling_excess(spec, {Vec{-0.5}, Vec{0.0}, Vec{0.5}}, mags), 1e-12) << spec.name();
}

TEST(Symbol, MultivariateIsotropicStable) {
    for (int d : {2, 3}) {
        StableParams p;
        p.alpha = 1.2;
        p.dim = d;
        const auto spec = make_stable(p);
        const auto& tr = spec.levy_family().levy_triplet();
        Vec xi(d);
        xi[0] = 0.6;
        xi[d - 1] = -1.7;
        EXPECT_NEAR(eval_exponent(tr, xi).real() / std::pow(xi.norm(), 1.2), 1.0, 1e-5) << d;
    }
}

TEST(Concentration, CauchyDensityClosedForms) {
    StableParams p;
    p.norm = StableNorm::Density;
    const auto spec = make_stable(p);
    for (double r : {0.01, 0.5, 1.0, 7.0}) {
        const auto c = concentration(spec, kZero, r);
        EXPECT_NEAR(c.G, 2.0 / r, 1e-12 * c.G);
        EXPECT_NEAR(c.K, 2.0 / r, 1e-12 * c.K);
        EXPECT_NEAR(c.I, 4.0 * r, 1e-12 * c.I);
    }
}

TEST(Concentration, MonotoneOnEveryModel) {
    for (const auto& spec : every_model()) {
        double g_prev = INFINITY, k_prev = 0.0;
        for (int k = 0; k <= 60; ++k) {
            const double r = std::pow(10.0, -6.0 + 0.1 * k);
            const double g = spec.tail(kZero, r), t2 = spec.trunc2(kZero, r);
            EXPECT_LE(g, g_prev * (1 + 1e-12)) << spec.name() << " r=" << r;
            EXPECT_GE(t2, k_prev * (1 - 1e-12)) << spec.name() << " r=" << r;
            g_prev = g;
            k_prev = t2;
        }
    }
}

TEST(PsiStar, MonotoneAndComparableToH) {
    std::vector<double> grid;
    for (int k = 0; k <= 12; ++k) grid.push_back(std::pow(10.0, -4.0 + 0.25 * k));
    for (const auto& spec : {make_stable({0.5}), make_stable({1.5}), make_iterated_log(), make_log_corrected(),
                             make_atom()}) {
        double prev = 0.0;
        for (int k = 0; k <= 30; ++k) {
            const double v = psi_star(spec, kZero, std::pow(10.0, -2.0 + 0.2 * k));
            EXPECT_GE(v, prev * (1 - 1e-9)) << spec.name();
            prev = v;
        }
        EXPECT_LT(fit_h_psi_constant(spec, kZero, grid), 100.0) << spec.name();
    }
}

TEST(Extremum, VariableOrderBallExtrema) {
    const auto spec = make_variable_order();
    EXPECT_NEAR(symbol_extremum(spec, kZero, 0.5, 4.0, ExtremumMode::SupSup), std::pow(4.0, 1.7), 1e-9);
    EXPECT_NEAR(symbol_extremum(spec, kZero, 0.5, 4.0, ExtremumMode::InfSup), std::pow(4.0, 1.3), 1e-9);
    EXPECT_NEAR(variable_order({}, 0.0), 1.5, 1e-15);
    EXPECT_NEAR(variable_order({}, 3.0), 1.1, 1e-15);
}

TEST(Extremum, LevyKindIgnoresBall) {
    const auto spec = make_stable({1.3});
    const double a = symbol_extremum(spec, kZero, 0.7, 3.0, ExtremumMode::SupSup);
    const double b = symbol_extremum(spec, kZero, 0.7, 3.0, ExtremumMode::InfSup);
    EXPECT_DOUBLE_EQ(a, b);
    EXPECT_NEAR(a, std::pow(3.0, 1.3), 1e-9);
}

TEST(Sector, HoldsForStableAndIteratedLog) {
    EXPECT_EQ(sector_check(make_stable({1.0}), kZero, 0.0, default_xi_grid()).verdict, Verdict::Holds);
    EXPECT_EQ(sector_check(make_iterated_log(), kZero, 0.0, default_xi_grid()).verdict, Verdict::Holds);
    StableParams p;
    p.alpha = 1.5;
    p.skew = 1.0;
    EXPECT_EQ(sector_check(make_stable(p), kZero, 0.0, default_xi_grid()).verdict, Verdict::Holds);
}

TEST(Growth, InverseOfPowers) {
    const auto f = GrowthFunction::power(0.5);
    EXPECT_NEAR(f.inverse(0.1), 0.01, 1e-12);
    EXPECT_TRUE(std::isinf(f.inverse(2.0)));
    const auto g = GrowthFunction::power_log(0.5, 0.2);
    const double t = g.inverse(0.05);
    EXPECT_NEAR(g(t), 0.05, 1e-9);
    EXPECT_NO_THROW(g.check_monotone());
    EXPECT_THROW(GrowthFunction::custom([](double t) { return 1.0 - t; }, "decreasing").check_monotone(),
                 PreconditionViolated);
}

TEST(Models, InvalidParametersRejected) {
    EXPECT_THROW(make_stable({2.5}), InvalidModel);
    StableParams p;
    p.skew = 2.0;
    EXPECT_THROW(make_stable(p), InvalidModel);
}
