#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "levyup/growth.hpp"
#include "levyup/levy_core.hpp"
#include "levyup/process.hpp"

namespace levyup {

enum class IntegralState { Converges, Diverges, Indeterminate };

std::string to_string(IntegralState s);

struct IntegralVerdict {
    IntegralState state = IntegralState::Indeterminate;
    double value = 0.0;  // sum of blocks plus geometric tail, when Converges
    std::vector<double> block_sums;
    int n_max = 0;
    double ratio = 0.0;  // largest S_{n+1}/S_n over the last half

    bool converges() const { return state == IntegralState::Converges; }
    bool diverges() const { return state == IntegralState::Diverges; }
};

struct DyadicOptions {
    int n_max = 64;
    double ratio = 0.999;  // largest admissible block ratio for convergence
    double floor = 1e-6;   // last-half minimum that signals divergence
};

// Classifies a sequence of non-negative block sums.
IntegralVerdict classify_block_sums(std::vector<double> blocks, const DyadicOptions& opt = {});

// int_0^1 g(t) dt over the blocks [2^{-(n+1)}, 2^{-n}].
IntegralVerdict dyadic_integral(const std::function<double(double)>& g, const DyadicOptions& opt = {});

enum class BallMode { None, SupBall, InfBall };

std::string to_string(BallMode m);

// int_0^1 ext_{|z-x| <= ball_scale f(t)} nu(z, {|y| >= c f(t)}) dt.
IntegralVerdict tail_integral_criterion(const ProcessSpec& spec, const Vec& x, const GrowthFunction& f,
                                        double c, BallMode mode, double ball_scale = 1.0,
                                        const DyadicOptions& opt = {}, const GridOptions& grid = {});

struct SymbolIntegral {
    IntegralVerdict at_eps;
    IntegralVerdict at_half_eps;
    bool eps_consistent() const { return at_eps.state == at_half_eps.state; }
};

// int_0^1 ext_{|z-x| <= ball_scale f(t)} sup_{|xi| <= 1/(eps f(t))} |q(z, xi)| dt,
// evaluated at eps and eps/2.
SymbolIntegral symbol_integral_criterion(const ProcessSpec& spec, const Vec& x, const GrowthFunction& f,
                                         double eps, BallMode mode, double ball_scale = 1.0,
                                         const DyadicOptions& opt = {}, const GridOptions& grid = {});

std::vector<double> default_a1_grid();
std::vector<double> default_a2_grid();

// Ratio trunc2(r) / (r^2 G(r)) along r_grid; with a ball, the sup over it.
ConditionReport check_A1(const ProcessSpec& spec, const Vec& x, std::optional<double> ball_radius,
                         const std::vector<double>& r_grid = default_a1_grid());

// Growth condition on f. A note starting with "shortcut" marks a verdict
// obtained from the monotone-ratio sufficient criterion.
ConditionReport check_A2(const GrowthFunction& f, const std::vector<double>& r_grid = default_a2_grid());

// Exponent a in (1/2, 1] with f(t)/t non-increasing and f(t)/t^a increasing
// in t on a log grid, if any.
std::optional<double> a2_shortcut(const GrowthFunction& f);

// int_{|y|<1} |y|^p nu(dy) by dyadic blocks in the jump size.
IntegralVerdict moment_integral(const LevyMeasure& nu, double p, const DyadicOptions& opt = {});

double bg_index(const LevyMeasure& nu, double tol = 0.02, const DyadicOptions& opt = {});

enum class Outcome { Zero, Infinity, LowerBound, Indeterminate };
enum class Assumption { A1, A2, A1Ball, Sector, C1, C2 };

std::string to_string(Outcome o);
std::string to_string(Assumption a);

struct IntegralEvidence {
    std::string criterion;
    double parameter = 0.0;  // c, C or eps
    IntegralVerdict verdict;
};

struct ConditionEvidence {
    std::string name;
    ConditionReport report;
};

struct Classification {
    Outcome outcome = Outcome::Indeterminate;
    double lower_bound = 0.0;  // C/5 for LowerBound
    std::vector<Assumption> assumptions_used;
    std::vector<IntegralEvidence> integrals;
    std::vector<ConditionEvidence> conditions;
    std::string reason;

    std::string label() const;
    bool definite() const { return outcome != Outcome::Indeterminate; }
};

struct ClassifySettings {
    DyadicOptions dyadic;
    GridOptions grid;
    std::vector<double> c_scan;   // defaults to 2^k, k = -4..8
    double ball_radius = 0.5;     // R of the ball in A1' and the local sector check
    double eps = 1.0;
    double bg_tol = 0.02;
    double lower_constant = 1.0;  // starting C of the lower-bound scan
    int lower_scan = 8;           // C, 2C, ..., 2^lower_scan C
    bool check_majorization = false;

    std::vector<double> constants() const;
};

Classification classify_levy(const ProcessSpec& spec, const GrowthFunction& f,
                             const ClassifySettings& s = {});
Classification classify_power(const ProcessSpec& spec, double kappa, const ClassifySettings& s = {});
Classification classify_ltp_upper(const ProcessSpec& spec, const Vec& x, const GrowthFunction& f,
                                  const ClassifySettings& s = {});
Classification classify_ltp_lower(const ProcessSpec& spec, const Vec& x, const GrowthFunction& f,
                                  const ClassifySettings& s = {});

// Constant-free factors of the small-time maximal and exit-time bounds.
struct ExitBounds {
    double tail_inf = 0.0;      // inf_{|z-x| <= 2r} nu(z, {|y| > 2r})
    double schilling = 0.0;     // t sup_{|z-x|<=r} sup_{|xi|<=1/r} |q|, times an absolute constant
    double new_bound = 1.0;     // 1 / (1 + t tail_inf)
    double expected_exit = 0.0; // 1 / tail_inf
    double exponential = 1.0;   // exp(-t tail_inf), up to C0, C1
    double lower = 0.0;         // min(1, (1 - c) t tail_inf)
    double symbol_bound = 1.0;  // 1 / (1 + t sup_{|xi|<=1/(2r)} inf_{|z-x|<=r} Re q)
};

ExitBounds exit_bounds(const ProcessSpec& spec, const Vec& x, double t, double r, double c_lower,
                       const GridOptions& grid = {});

}  // namespace levyup
