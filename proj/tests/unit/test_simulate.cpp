#include <gtest/gtest.h>

#include <cmath>

#include "levyup/errors.hpp"
#include "levyup/models.hpp"
#include "levyup/simulate.hpp"
#include "levyup/stats.hpp"

using namespace levyup;

namespace {

const Vec kZero{0.0};

std::vector<double> terminal_values(const ProcessSpec& spec, const SimConfig& cfg, double T) {
    std::vector<double> out(cfg.n_paths);
    for_each_path(spec, kZero, make_grid(T, cfg.dt), cfg,
                  [&](std::size_t i, const PathSample& p) { out[i] = p.values.back()[0]; });
    return out;
}

SimConfig config(Scheme s, std::size_t n, std::uint64_t seed) {
    SimConfig c;
    c.scheme = s;
    c.n_paths = n;
    c.seed = seed;
    return c;
}

}  // namespace

TEST(Stats, ProportionAndMean) {
    const auto e = proportion_estimate(500, 1000);
    EXPECT_DOUBLE_EQ(e.p_hat, 0.5);
    EXPECT_NEAR(e.ci_half_width, 2.5758293035489 * std::sqrt(0.25 / 1000), 1e-9);
    const auto w = proportion_estimate(0, 100);
    EXPECT_EQ(w.p_hat, 0.0);
    EXPECT_GT(w.hi(), 0.0);
    const auto m = mean_estimate({1.0, 2.0, 3.0, 4.0});
    EXPECT_DOUBLE_EQ(m.p_hat, 2.5);
    EXPECT_NEAR(quantile({4.0, 1.0, 3.0, 2.0}, 0.5), 2.5, 1e-15);
    const auto fit = fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
    EXPECT_NEAR(fit.slope, 2.0, 1e-12);
    EXPECT_NEAR(fit.intercept, 1.0, 1e-12);
}

TEST(Stats, KolmogorovSmirnov) {
    EXPECT_DOUBLE_EQ(ks_statistic({1, 2, 3}, {1, 2, 3}), 0.0);
    EXPECT_DOUBLE_EQ(ks_statistic({1, 2, 3}, {4, 5, 6}), 1.0);
    EXPECT_LT(ks_pvalue(1.0, 100, 100), 1e-10);
    EXPECT_GT(ks_pvalue(0.01, 100, 100), 0.99);
}

TEST(Grid, MergesExtraTimes) {
    const auto g = make_grid(0.1, 0.03, {0.05});
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_DOUBLE_EQ(g.back(), 0.1);
    EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
    EXPECT_NE(std::find(g.begin(), g.end(), 0.05), g.end());
}

TEST(Simulate, DeterministicAcrossThreadCounts) {
    auto a = config(Scheme::CompoundPoissonGauss, 64, 9);
    auto b = a;
    a.threads = 1;
    b.threads = 3;
    const auto spec = make_log_corrected();
    EXPECT_EQ(terminal_values(spec, a, 0.05), terminal_values(spec, b, 0.05));
    const auto p = simulate_path(make_stable({1.3}), kZero, 0.05, config(Scheme::ExactStable, 1, 4), 3);
    const auto q = simulate_path(make_stable({1.3}), kZero, 0.05, config(Scheme::ExactStable, 1, 4), 3);
    EXPECT_EQ(p.runmax, q.runmax);
}

TEST(Simulate, RunningMaximumDominatesDisplacement) {
    for (Scheme s : {Scheme::ExactStable, Scheme::CompoundPoissonGauss, Scheme::FreezeSymbol}) {
        const auto p = simulate_path(make_stable({1.0}), kZero, 0.2, config(s, 1, 2), 0);
        for (std::size_t j = 0; j < p.times.size(); ++j) {
            EXPECT_GE(p.runmax[j] + 1e-15, std::abs(p.values[j][0] - p.start[0]));
            if (j) EXPECT_GE(p.runmax[j], p.runmax[j - 1]);
        }
    }
}

TEST(Simulate, SchemeValidation) {
    SimConfig c = config(Scheme::ExactStable, 10, 1);
    EXPECT_THROW(c.validate(make_log_corrected()), PreconditionViolated);
    c.scheme = Scheme::EulerSDE;
    EXPECT_THROW(c.validate(make_stable({})), PreconditionViolated);
    c.scheme = Scheme::CompoundPoissonGauss;
    EXPECT_THROW(c.validate(make_variable_order()), PreconditionViolated);
    c.scheme = Scheme::FreezeSymbol;
    EXPECT_NO_THROW(c.validate(make_variable_order()));
    EXPECT_EQ(scheme_from_string("EulerSDE"), Scheme::EulerSDE);
    EXPECT_THROW(scheme_from_string("Milstein"), PreconditionViolated);
}

TEST(Simulate, SymmetricModelsAreSymmetric) {
    for (const auto& [spec, s] : {std::pair{make_stable({0.8}), Scheme::ExactStable},
                                  std::pair{make_log_corrected(), Scheme::CompoundPoissonGauss},
                                  std::pair{make_iterated_log(), Scheme::CompoundPoissonGauss}}) {
        const auto x = terminal_values(spec, config(s, 2000, 21), 0.1);
        std::vector<double> flipped(x.size());
        std::transform(x.begin(), x.end(), flipped.begin(), [](double v) { return -v; });
        EXPECT_GT(ks_pvalue(ks_statistic(x, flipped), x.size(), x.size()), 0.01) << spec.name();
    }
}

TEST(Simulate, SmallJumpApproximationMatchesExactStable) {
    const auto spec = make_stable({1.5});
    const auto a = terminal_values(spec, config(Scheme::ExactStable, 3000, 31), 0.1);
    const auto b = terminal_values(spec, config(Scheme::CompoundPoissonGauss, 3000, 32), 0.1);
    EXPECT_GT(ks_pvalue(ks_statistic(a, b), a.size(), b.size()), 0.01);
}

TEST(Simulate, ConstantCoefficientSdeMatchesDriver) {
    const auto driver = make_stable({});
    const auto sde = make_sde(driver, {1.0, 0.0, 1.0});
    const auto a = terminal_values(driver, config(Scheme::ExactStable, 3000, 41), 0.1);
    const auto b = terminal_values(sde, config(Scheme::EulerSDE, 3000, 42), 0.1);
    EXPECT_GT(ks_pvalue(ks_statistic(a, b), a.size(), b.size()), 0.01);
}

TEST(Simulate, StableIncrementScaling) {
    const auto law = *make_stable({}).stable_law(kZero);
    Rng rng(5, 0);
    int hits = 0;
    const int n = 40000;
    for (int i = 0; i < n; ++i) hits += std::abs(stable_increment(law, 0.5, rng)[0]) <= 0.5 ? 1 : 0;
    const auto e = proportion_estimate(hits, n);
    EXPECT_NEAR(e.p_hat, 0.5, e.ci_half_width);
}

TEST(Simulate, RateOverflowIsReported) {
    Rng rng(1, 0);
    const auto& tr = make_stable({1.9}).levy_family().levy_triplet();
    EXPECT_THROW(sample_increment(tr, 1.0, 1e-6, rng), RateOverflow);
}

TEST(Bounds, CauchyExitSurvivalHasNoViolations) {
    StableParams p;
    p.norm = StableNorm::Density;
    const auto rows = verify_bound_table(make_stable(p), kZero, BoundKind::ExitSurvival,
                                         {{0.01, 0.25}, {0.1, 0.5}, {0.1, 1.0}}, config(Scheme::ExactStable, 2000, 1));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_NEAR(rows[1].bound, 1.0 / 1.2, 1e-12);
    for (const auto& r : rows) EXPECT_FALSE(r.violated);
}

TEST(Bounds, ExitTimesAreCensored) {
    const auto tau = simulate_exit_times(make_stable({}), kZero, 0.5, 0.3, config(Scheme::ExactStable, 200, 3));
    ASSERT_EQ(tau.size(), 200u);
    for (double t : tau) {
        EXPECT_GT(t, 0.0);
        EXPECT_LE(t, 0.3);
    }
}
