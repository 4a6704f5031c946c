#include <gtest/gtest.h>

#include <cmath>

#include "levyup/criteria.hpp"
#include "levyup/errors.hpp"
#include "levyup/models.hpp"

using namespace levyup;

namespace {

const Vec kZero{0.0};

ProcessSpec cauchy_density() {
    StableParams p;
    p.norm = StableNorm::Density;
    return make_stable(p);
}

}  // namespace

TEST(BlockSums, ConstantBlocksDiverge) {
    EXPECT_EQ(classify_block_sums(std::vector<double>(65, std::log(2.0))).state, IntegralState::Diverges);
}

TEST(BlockSums, GeometricBlocksConvergeWithTail) {
    std::vector<double> b;
    for (int n = 0; n <= 64; ++n) b.push_back(std::ldexp(1.0, -n));
    const auto v = classify_block_sums(b);
    ASSERT_TRUE(v.converges());
    EXPECT_NEAR(v.value, 2.0, 1e-12);
}

TEST(BlockSums, OscillatingSmallBlocksAreIndeterminate) {
    std::vector<double> b;
    for (int n = 0; n <= 64; ++n) b.push_back(1e-9 * (1.0 + (n % 2)));
    EXPECT_EQ(classify_block_sums(b).state, IntegralState::Indeterminate);
}

TEST(DyadicIntegral, PowerIntegrands) {
    EXPECT_EQ(dyadic_integral([](double t) { return 1.0 / t; }).state, IntegralState::Diverges);
    const auto v = dyadic_integral([](double t) { return std::pow(t, -0.8); });
    ASSERT_TRUE(v.converges());
    EXPECT_NEAR(v.value, 5.0, 1e-5);
    EXPECT_NEAR(dyadic_integral([](double t) { return std::pow(t, -0.5); }).value, 2.0, 1e-6);
    EXPECT_THROW(dyadic_integral([](double) { return -1.0; }), EvaluationFailure);
}

TEST(SymbolIntegral, CauchyPowers) {
    const auto cauchy = make_stable({});
    const auto v = symbol_integral_criterion(cauchy, kZero, GrowthFunction::power(0.8), 1.0, BallMode::None);
    ASSERT_TRUE(v.at_eps.converges());
    EXPECT_NEAR(v.at_eps.value, 5.0, 1e-5);
    EXPECT_NEAR(v.at_half_eps.value, 10.0, 1e-4);
    const auto w = symbol_integral_criterion(cauchy, kZero, GrowthFunction::power(1.2), 1.0, BallMode::None);
    EXPECT_TRUE(w.at_eps.diverges());
    EXPECT_TRUE(w.eps_consistent());
}

TEST(SymbolIntegral, EpsilonInsensitiveOnStableFamily) {
    for (double a : {0.5, 1.0, 1.5})
        for (double k : {0.5, 0.9, 1.1, 2.0}) {
            const auto v = symbol_integral_criterion(make_stable({a}), kZero, GrowthFunction::power(k), 1.0,
                                                     BallMode::None);
            EXPECT_TRUE(v.eps_consistent()) << a << " " << k;
        }
}

TEST(TailIntegral, StableClassicalCharacterisation) {
    for (double a : {0.5, 1.0, 1.5})
        for (double d : {-0.2, 0.2}) {
            const auto v = tail_integral_criterion(make_stable({a}), kZero, GrowthFunction::power(1.0 / a + d),
                                                   1.0, BallMode::None);
            EXPECT_EQ(v.state, d < 0 ? IntegralState::Converges : IntegralState::Diverges) << a << " " << d;
        }
}

TEST(TailIntegral, ConstantGrowthGivesTailMass) {
    const auto v = tail_integral_criterion(cauchy_density(), kZero, GrowthFunction::constant(1.0), 1.0,
                                           BallMode::None);
    ASSERT_TRUE(v.converges());
    EXPECT_NEAR(v.value, 2.0, 1e-9);
}

TEST(TailIntegral, ScaleCoherence) {
    for (double a : {0.5, 1.0, 1.5}) {
        const auto f = GrowthFunction::power(1.0 / a - 0.2);
        for (int j = -4; j < 8; ++j) {
            const auto v = tail_integral_criterion(make_stable({a}), kZero, f, std::ldexp(1.0, j), BallMode::None);
            if (!v.converges()) continue;
            const auto w =
                tail_integral_criterion(make_stable({a}), kZero, f, std::ldexp(1.0, j + 1), BallMode::None);
            EXPECT_TRUE(w.converges()) << a << " " << j;
        }
    }
}

TEST(TailIntegral, StableTypeMatchesConstantKernel) {
    const StableTypeParams p;
    const auto st = make_stable_type(p);
    for (double d : {-0.1, 0.1}) {
        const auto f = GrowthFunction::power(1.0 / p.alpha + d);
        const auto ref = tail_integral_criterion(make_stable({p.alpha}), kZero, f, 1.0, BallMode::None).state;
        for (BallMode m : {BallMode::SupBall, BallMode::InfBall})
            EXPECT_EQ(tail_integral_criterion(st, kZero, f, 1.0, m).state, ref) << d << " " << to_string(m);
    }
}

TEST(TailIntegral, BallModeMustMatchKind) {
    const auto f = GrowthFunction::power(0.5);
    EXPECT_THROW(tail_integral_criterion(make_stable({}), kZero, f, 1.0, BallMode::SupBall), PreconditionViolated);
    EXPECT_THROW(tail_integral_criterion(make_variable_order(), kZero, f, 1.0, BallMode::None),
                 PreconditionViolated);
}

TEST(ConverseConsistency, InfBallIntegrals) {
    for (const auto& spec : {make_variable_order(), make_stable_type(), make_sde(make_stable({}))}) {
        if (check_A1(spec, kZero, 0.5).verdict != Verdict::Holds) continue;
        for (double k : {0.5, 0.6, 0.9}) {
            const auto f = GrowthFunction::power(k);
            if (!tail_integral_criterion(spec, kZero, f, 1.0, BallMode::InfBall).converges()) continue;
            EXPECT_TRUE(symbol_integral_criterion(spec, kZero, f, 1.0, BallMode::InfBall).at_eps.converges())
                << spec.name() << " " << k;
        }
    }
}

TEST(ConditionA1, StableWitnessAndAtom) {
    const auto r = check_A1(make_stable({1.0}), kZero, std::nullopt);
    EXPECT_EQ(r.verdict, Verdict::Holds);
    EXPECT_NEAR(r.witness, 1.0, 0.05);
    EXPECT_EQ(check_A1(make_atom(), kZero, std::nullopt).verdict, Verdict::Holds);
    EXPECT_EQ(check_A1(make_iterated_log(), kZero, std::nullopt).verdict, Verdict::Fails);
}

TEST(ConditionA2, DirectWitnessMatchesClosedForm) {
    const auto rep = check_A2(GrowthFunction::power(0.7));
    EXPECT_EQ(rep.verdict, Verdict::Holds);
    EXPECT_EQ(rep.note.rfind("shortcut", 0), 0u);
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        const double r = rep.grid[i];
        if (r < 1e-6) break;
        EXPECT_NEAR(rep.values[i], 2.5 * (1.0 - std::pow(r, 4.0 / 7.0)), 1e-6) << r;
    }
    const auto a = a2_shortcut(GrowthFunction::power(0.7));
    ASSERT_TRUE(a.has_value());
    EXPECT_GT(*a, 0.5);
    EXPECT_LE(*a, 0.7 + 1e-12);
}

TEST(ConditionA2, SquareRootFails) {
    EXPECT_EQ(check_A2(GrowthFunction::power(0.5)).verdict, Verdict::Fails);
    EXPECT_FALSE(a2_shortcut(GrowthFunction::power(0.5)).has_value());
}

TEST(BgIndex, StableAtomAndMonotonicity) {
    const auto nu = [](const ProcessSpec& s) { return s.levy_family().levy_triplet().measure; };
    for (double a : {0.5, 1.0, 1.5}) EXPECT_NEAR(bg_index(nu(make_stable({a}))), a, 0.02);
    EXPECT_EQ(bg_index(nu(make_atom())), 0.0);
    EXPECT_LT(bg_index(nu(make_stable({1.0}))), bg_index(nu(make_stable({1.2}))));
    EXPECT_TRUE(moment_integral(nu(make_stable({1.0})), 1.5).converges());
    EXPECT_TRUE(moment_integral(nu(make_stable({1.0})), 0.5).diverges());
}

TEST(ExitBounds, CauchyAnchors) {
    const auto b = exit_bounds(cauchy_density(), kZero, 0.1, 0.5, 0.5);
    EXPECT_NEAR(b.tail_inf, 2.0, 1e-12);
    EXPECT_NEAR(b.new_bound, 1.0 / 1.2, 1e-12);
    EXPECT_NEAR(b.expected_exit, 0.5, 1e-12);
    EXPECT_NEAR(b.exponential, std::exp(-0.2), 1e-12);
    EXPECT_NEAR(b.lower, 0.1, 1e-12);
    const auto z = exit_bounds(cauchy_density(), kZero, 0.0, 0.5, 0.5);
    EXPECT_EQ(z.new_bound, 1.0);
    EXPECT_EQ(z.lower, 0.0);
}

TEST(Classify, LevyExamples) {
    EXPECT_EQ(classify_levy(make_stable({}), GrowthFunction::power(0.8)).outcome, Outcome::Zero);
    EXPECT_EQ(classify_levy(make_stable({}), GrowthFunction::power(1.25)).outcome, Outcome::Infinity);
    const auto m = classify_levy(make_iterated_log(), GrowthFunction::power(0.5));
    EXPECT_EQ(m.label(), "Indeterminate (A1, A2 fail)");
    EXPECT_FALSE(m.definite());
    EXPECT_THROW(classify_levy(make_variable_order(), GrowthFunction::power(0.5)), PreconditionViolated);
}

TEST(Classify, PowerFunctions) {
    EXPECT_EQ(classify_power(make_stable({}), 0.5).outcome, Outcome::Zero);
    EXPECT_EQ(classify_power(make_stable({}), 1.25).outcome, Outcome::Infinity);
    EXPECT_EQ(classify_power(make_stable({1.5}), 0.6).outcome, Outcome::Zero);
    EXPECT_EQ(classify_power(make_atom(), 3.0).outcome, Outcome::Zero);
}

TEST(Classify, LevyTypePipelines) {
    const auto vo = make_variable_order();
    EXPECT_EQ(classify_ltp_upper(vo, kZero, GrowthFunction::power(0.6)).outcome, Outcome::Zero);
    EXPECT_EQ(classify_ltp_lower(vo, kZero, GrowthFunction::power(0.9)).outcome, Outcome::Infinity);
    const auto st = make_stable_type();
    EXPECT_EQ(classify_ltp_upper(st, kZero, GrowthFunction::power(1.0 / 1.5 - 0.05)).outcome, Outcome::Zero);
    EXPECT_EQ(classify_ltp_upper(make_sde(make_stable({})), kZero, GrowthFunction::power(0.8)).outcome,
              Outcome::Zero);
}
