#include <gtest/gtest.h>

#include <cmath>

#include "levyup/limsup_lab.hpp"
#include "levyup/errors.hpp"
#include "levyup/models.hpp"

using namespace levyup;

namespace {

DyadicStats synthetic(double slope, double spread = 2.0) {
    DyadicStats s;
    for (int n = 4; n <= 16; ++n) {
        const double m = std::exp2(slope * n);
        s.levels.push_back(n);
        s.t.push_back(std::ldexp(1.0, -n));
        s.median.push_back(m);
        s.q10.push_back(m / spread);
        s.q90.push_back(m * spread);
        s.mean_log.push_back(std::log(m));
    }
    return s;
}

}  // namespace

TEST(DyadicGrid, ContainsEveryLevelTime) {
    const auto g = dyadic_time_grid(4, 16);
    EXPECT_EQ(g.size(), 1u + 256u + 128u * 13u);
    EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
    EXPECT_EQ(std::adjacent_find(g.begin(), g.end()), g.end());
    for (int n = 4; n <= 16; ++n)
        EXPECT_NE(std::find(g.begin(), g.end(), std::ldexp(1.0, -n)), g.end()) << n;
    EXPECT_THROW(dyadic_time_grid(5, 3), PreconditionViolated);
}

TEST(Trend, SyntheticLabels) {
    EXPECT_EQ(trend_classify(synthetic(-0.3)).label, TrendLabel::TendsZero);
    EXPECT_EQ(trend_classify(synthetic(0.3)).label, TrendLabel::Grows);
    EXPECT_EQ(trend_classify(synthetic(0.0)).label, TrendLabel::Flat);
    EXPECT_EQ(trend_classify(synthetic(-0.3, 1e3)).label, TrendLabel::Noisy);
    const auto v = trend_classify(synthetic(-0.3));
    EXPECT_NEAR(v.slope, -0.3, 1e-12);
    EXPECT_NEAR(v.ratio, std::exp2(-0.3 * 12), 1e-12);
    EXPECT_TRUE(v.consistent);
}

TEST(Trend, ZeroMediansAreFlat) {
    DyadicStats s = synthetic(0.0);
    std::fill(s.median.begin(), s.median.end(), 0.0);
    std::fill(s.q10.begin(), s.q10.end(), 0.0);
    std::fill(s.q90.begin(), s.q90.end(), 0.0);
    const auto v = trend_classify(s);
    EXPECT_EQ(v.label, TrendLabel::Flat);
    EXPECT_EQ(v.slope, 0.0);
    EXPECT_EQ(v.ratio, 1.0);
}

TEST(LimsupStats, CustomNormaliser) {
    SimConfig cfg;
    cfg.scheme = Scheme::ExactStable;
    cfg.n_paths = 50;
    const auto s = dyadic_limsup_stats(make_stable({}), Vec{0.0}, [](double, double run) { return run; }, 4, 10,
                                       cfg);
    ASSERT_EQ(s.levels.size(), 7u);
    for (double m : s.median) EXPECT_DOUBLE_EQ(m, 1.0);
    EXPECT_EQ(s.n_paths, 50u);
}

TEST(LimsupStats, CauchyScalingAtPowerOne) {
    SimConfig cfg;
    cfg.scheme = Scheme::ExactStable;
    cfg.n_paths = 400;
    const auto s = dyadic_limsup_stats(make_stable({}), Vec{0.0}, GrowthFunction::power(1.0), 4, 12, cfg);
    const auto v = trend_classify(s);
    EXPECT_EQ(v.label, TrendLabel::Flat);
    EXPECT_LT(std::abs(v.slope), 0.05);
}

TEST(Appendix, SeriesBoundAndSingleTerm) {
    EXPECT_LE(appendix_series_max(), 2.0 + 1e-9);
    EXPECT_NEAR(appendix_series_max(1, 4000), std::exp(-1.0), 1e-6);
}

TEST(Examples, NamesRoundTrip) {
    for (ExampleName e : {ExampleName::StableDichotomy, ExampleName::Main48, ExampleName::VariableOrder,
                          ExampleName::StableType, ExampleName::SdeCauchy, ExampleName::SqrtTLaw})
        EXPECT_EQ(example_from_string(to_string(e)), e);
    EXPECT_THROW(example_from_string("Nope"), PreconditionViolated);
}

TEST(Examples, SqrtLawAgrees) {
    ExampleSettings es;
    es.n_paths = 300;
    const auto rep = reproduce_example(ExampleName::SqrtTLaw, es);
    ASSERT_EQ(rep.rows.size(), 2u);
    EXPECT_EQ(rep.rows[0].analytic.outcome, Outcome::Zero);
    EXPECT_TRUE(rep.agree());
}
