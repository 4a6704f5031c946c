#include "levyup/criteria.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "levyup/errors.hpp"
#include "levyup/quadrature.hpp"
#include "levyup/stats.hpp"

namespace levyup {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// Fixed 10-point Gauss-Legendre rule in u = log t over [a, b].
template <class F>
double block_rule(const F& g, double a, double b) {
    using G = boost::math::quadrature::gauss<double, 10>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    const double la = std::log(a), lb = std::log(b);
    const double c = 0.5 * (la + lb), h = 0.5 * (lb - la);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (double sgn : {-1.0, 1.0}) {
            const double t = std::exp(c + sgn * h * x[i]);
            s += w[i] * g(t) * t;
            if (x[i] == 0.0) break;
        }
    }
    return s * h;
}

// Witness diverges along the grid: non-decreasing over the last half with a
// log-log slope of at least min_slope against log(1/t).
bool grows(const std::vector<double>& ts, const std::vector<double>& w, double min_slope = 0.05) {
    const std::size_t n = w.size(), mid = n / 2;
    if (n < 4) return false;
    std::vector<double> lx, ly;
    for (std::size_t k = mid; k < n; ++k) {
        if (!(w[k] > 0.0) || !std::isfinite(w[k])) return w[k] == kInf;
        if (k > mid && w[k] < w[k - 1] * (1.0 - 1e-9)) return false;
        lx.push_back(-std::log(ts[k]));
        ly.push_back(std::log(w[k]));
    }
    return fit_line(lx, ly).slope >= min_slope;
}

std::vector<double> sorted_descending(std::vector<double> g) {
    std::sort(g.begin(), g.end(), std::greater<>());
    return g;
}

// Holds if the last half varies by < 10% or never increases.
Verdict stable_verdict(const std::vector<double>& v, double& witness) {
    const std::size_t n = v.size(), mid = n / 2;
    const auto [lo_it, hi_it] = std::minmax_element(v.begin() + mid, v.end());
    const double lo = *lo_it, hi = *hi_it;
    witness = hi;
    if (!std::isfinite(hi)) return Verdict::Indeterminate;
    if (hi - lo <= 0.1 * hi) return Verdict::Holds;
    bool non_increasing = true;
    for (std::size_t k = mid + 1; k < n; ++k)
        if (v[k] > v[k - 1] * (1.0 + 1e-12)) non_increasing = false;
    return non_increasing ? Verdict::Holds : Verdict::Indeterminate;
}

bool increasing_tail(const std::vector<double>& v) {
    const std::size_t n = v.size(), mid = n / 2;
    for (std::size_t k = mid + 1; k < n; ++k)
        if (!(v[k] > v[k - 1])) return false;
    return n >= 4;
}

std::vector<double> dyadic_times() {
    std::vector<double> ts;
    for (int k = 2; k <= 60; ++k) ts.push_back(std::ldexp(1.0, -k));
    return ts;
}

void require_growth(const GrowthFunction& f) { f.check_monotone(); }

}  // namespace

std::string to_string(IntegralState s) {
    switch (s) {
        case IntegralState::Converges: return "Converges";
        case IntegralState::Diverges: return "Diverges";
        case IntegralState::Indeterminate: return "Indeterminate";
    }
    return "?";
}

std::string to_string(BallMode m) {
    switch (m) {
        case BallMode::None: return "None";
        case BallMode::SupBall: return "SupBall";
        case BallMode::InfBall: return "InfBall";
    }
    return "?";
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Zero: return "Zero";
        case Outcome::Infinity: return "Infinity";
        case Outcome::LowerBound: return "LowerBound";
        case Outcome::Indeterminate: return "Indeterminate";
    }
    return "?";
}

std::string to_string(Assumption a) {
    switch (a) {
        case Assumption::A1: return "A1";
        case Assumption::A2: return "A2";
        case Assumption::A1Ball: return "A1'";
        case Assumption::Sector: return "Sector";
        case Assumption::C1: return "C1";
        case Assumption::C2: return "C2";
    }
    return "?";
}

std::string Classification::label() const {
    switch (outcome) {
        case Outcome::LowerBound: return "LowerBound(C/5=" + fmt(lower_bound) + ")";
        case Outcome::Indeterminate: return reason.empty() ? "Indeterminate" : "Indeterminate (" + reason + ")";
        default: return to_string(outcome);
    }
}

std::vector<double> ClassifySettings::constants() const {
    if (!c_scan.empty()) return c_scan;
    std::vector<double> c;
    for (int k = -4; k <= 8; ++k) c.push_back(std::ldexp(1.0, k));
    return c;
}

IntegralVerdict classify_block_sums(std::vector<double> blocks, const DyadicOptions& opt) {
    IntegralVerdict v;
    const std::size_t n = blocks.size();
    if (n < 4) throw PreconditionViolated("need at least four dyadic blocks");
    double total = 0.0;
    for (double& b : blocks) {
        if (!std::isfinite(b)) throw EvaluationFailure("non-finite block sum");
        if (b < 0.0) b = 0.0;
        total += b;
    }
    v.n_max = static_cast<int>(n) - 1;
    const std::size_t mid = n / 2;
    double rmax = 0.0;
    for (std::size_t k = mid; k + 1 < n; ++k) {
        const double r = blocks[k] == 0.0 ? (blocks[k + 1] == 0.0 ? 0.0 : kInf) : blocks[k + 1] / blocks[k];
        rmax = std::max(rmax, r);
    }
    v.ratio = rmax;
    if (rmax <= opt.ratio) {
        v.state = IntegralState::Converges;
        v.value = total + blocks.back() * rmax / (1.0 - rmax);
    } else {
        bool non_decreasing = blocks.back() > 0.0;
        double lo = kInf;
        for (std::size_t k = mid; k < n; ++k) {
            lo = std::min(lo, blocks[k]);
            if (k > mid && blocks[k] < blocks[k - 1] * (1.0 - 1e-9)) non_decreasing = false;
        }
        v.state = (non_decreasing || lo >= opt.floor) ? IntegralState::Diverges : IntegralState::Indeterminate;
        v.value = total;
    }
    v.block_sums = std::move(blocks);
    return v;
}

IntegralVerdict dyadic_integral(const std::function<double(double)>& g, const DyadicOptions& opt) {
    if (opt.n_max < 8) throw PreconditionViolated("dyadic depth must be at least 8");
    auto safe = [&](double t) {
        double y;
        try {
            y = g(t);
        } catch (const std::exception& e) {
            throw EvaluationFailure("integrand failed at t=" + fmt(t) + ": " + e.what());
        }
        if (!std::isfinite(y) || y < 0.0)
            throw EvaluationFailure("integrand is not a finite non-negative number at t=" + fmt(t));
        return y;
    };
    std::vector<double> blocks;
    blocks.reserve(opt.n_max + 1);
    for (int n = 0; n <= opt.n_max; ++n)
        blocks.push_back(block_rule(safe, std::ldexp(1.0, -(n + 1)), std::ldexp(1.0, -n)));
    return classify_block_sums(std::move(blocks), opt);
}

IntegralVerdict tail_integral_criterion(const ProcessSpec& spec, const Vec& x, const GrowthFunction& f,
                                        double c, BallMode mode, double ball_scale,
                                        const DyadicOptions& opt, const GridOptions& grid) {
    if (!(c > 0.0)) throw PreconditionViolated("tail criterion needs c > 0");
    const bool levy = spec.kind() == ProcessKind::Levy;
    if ((mode == BallMode::None) != levy)
        throw PreconditionViolated("ball mode None is reserved for Lévy processes");
    return dyadic_integral([&](double t) {
        const double ft = f(t);
        if (mode == BallMode::None) return spec.tail(x, c * ft);
        double out = mode == BallMode::SupBall ? 0.0 : kInf;
        for (const Vec& z : ball_points(x, ball_scale * ft, grid)) {
            const double g = spec.tail(z, c * ft);
            out = mode == BallMode::SupBall ? std::max(out, g) : std::min(out, g);
        }
        return out;
    }, opt);
}

SymbolIntegral symbol_integral_criterion(const ProcessSpec& spec, const Vec& x, const GrowthFunction& f,
                                         double eps, BallMode mode, double ball_scale,
                                         const DyadicOptions& opt, const GridOptions& grid) {
    if (!(eps > 0.0)) throw PreconditionViolated("symbol criterion needs eps > 0");
    const ExtremumMode em = mode == BallMode::InfBall ? ExtremumMode::InfSup : ExtremumMode::SupSupAbs;
    auto run = [&](double e) {
        return dyadic_integral([&](double t) {
            const double ft = f(t);
            const double radius = mode == BallMode::None ? 0.0 : ball_scale * ft;
            return symbol_extremum(spec, x, radius, 1.0 / (e * ft), em, grid);
        }, opt);
    };
    return {run(eps), run(0.5 * eps)};
}

std::vector<double> default_a1_grid() {
    std::vector<double> g;
    for (int k = 0; k <= 156; ++k) g.push_back(std::pow(10.0, -2.0 - 0.5 * k));
    return g;
}

std::vector<double> default_a2_grid() {
    std::vector<double> g;
    for (int k = 0; k <= 99; ++k) g.push_back(std::pow(10.0, -1.0 - k));
    return g;
}

ConditionReport check_A1(const ProcessSpec& spec, const Vec& x, std::optional<double> ball_radius,
                         const std::vector<double>& r_grid) {
    if (r_grid.size() < 4) throw PreconditionViolated("A1 grid needs at least four radii");
    ConditionReport rep;
    rep.grid = sorted_descending(r_grid);
    if (!(rep.grid.back() <= 1e-4)) throw PreconditionViolated("A1 grid must reach r <= 1e-4");
    const bool ball = ball_radius && *ball_radius > 0.0 && !spec.family().state_independent();
    const std::vector<Vec> zs = ball ? ball_points(x, *ball_radius) : std::vector<Vec>{x};
    for (double r : rep.grid) {
        double v = 0.0;
        for (const Vec& z : zs) {
            const double G = spec.tail(z, r);
            const double T = spec.trunc2(z, r);
            if (G <= 0.0) {
                if (T > 0.0) {
                    rep.verdict = Verdict::Fails;
                    rep.witness = kInf;
                    rep.note = "ZeroTail: G(r) = 0 at r=" + fmt(r) + " while trunc2(r) > 0";
                    rep.values.push_back(kInf);
                    return rep;
                }
                continue;
            }
            v = std::max(v, T / (r * r * G));
        }
        rep.values.push_back(v);
    }
    rep.verdict = stable_verdict(rep.values, rep.witness);
    if (rep.verdict == Verdict::Indeterminate && increasing_tail(rep.values) && rep.values.back() > 1e3) {
        rep.verdict = Verdict::Fails;
        rep.witness = rep.values.back();
        rep.note = "ratio increases without bound as r -> 0";
    }
    return rep;
}

std::optional<double> a2_shortcut(const GrowthFunction& f) {
    std::vector<double> ts;
    for (int k = 0; k <= 96; ++k) ts.push_back(std::pow(10.0, -12.0 + 0.125 * k));
    std::vector<double> fv;
    for (double t : ts) fv.push_back(f(t));
    for (std::size_t k = 1; k < ts.size(); ++k)
        if (fv[k] / ts[k] > fv[k - 1] / ts[k - 1] * (1.0 + 1e-12)) return std::nullopt;
    if (!(fv.front() / ts.front() > fv.back() / ts.back())) return std::nullopt;
    for (int j = 51; j <= 100; ++j) {
        const double a = 0.01 * j;
        bool ok = fv.front() / std::pow(ts.front(), a) < fv.back() / std::pow(ts.back(), a);
        for (std::size_t k = 1; ok && k < ts.size(); ++k)
            if (fv[k] / std::pow(ts[k], a) < fv[k - 1] / std::pow(ts[k - 1], a) * (1.0 - 1e-12)) ok = false;
        if (ok) return a;
    }
    return std::nullopt;
}

ConditionReport check_A2(const GrowthFunction& f, const std::vector<double>& r_grid) {
    if (r_grid.size() < 4) throw PreconditionViolated("A2 grid needs at least four radii");
    ConditionReport rep;
    rep.grid = sorted_descending(r_grid);
    for (double r : rep.grid) {
        if (!(r > 0.0 && r < 1.0)) throw PreconditionViolated("A2 grid must lie in (0,1)");
        const double ti = f.inverse(r);
        if (!(ti < 1.0)) {
            rep.values.push_back(0.0);
            continue;
        }
        const double I = quad::integrate_geometric([&](double t) { const double v = f(t); return 1.0 / (v * v); },
                                                   ti, 1.0, 2.0);
        rep.values.push_back(r * r * I / ti);
    }
    rep.verdict = stable_verdict(rep.values, rep.witness);
    const std::size_t mid = rep.values.size() / 2;
    if (rep.verdict == Verdict::Indeterminate && increasing_tail(rep.values) &&
        rep.values.back() > 1.5 * rep.values[mid]) {
        rep.verdict = Verdict::Fails;
        rep.witness = rep.values.back();
        rep.note = "witness grows without bound as r -> 0";
    }
    if (const auto a = a2_shortcut(f)) {
        rep.note = "shortcut alpha=" + fmt(*a) + "; direct witness " + to_string(rep.verdict);
        rep.verdict = Verdict::Holds;
    }
    return rep;
}

IntegralVerdict moment_integral(const LevyMeasure& nu, double p, const DyadicOptions& opt) {
    if (p < 0.0) throw PreconditionViolated("moment exponent must be non-negative");
    std::vector<double> blocks;
    for (int n = 0; n <= opt.n_max; ++n) {
        const double a = std::ldexp(1.0, -(n + 1)), b = std::ldexp(1.0, -n);
        const double ga = nu.tail(a), gb = nu.tail(b);
        double s = ga - gb;
        if (p > 0.0) {
            const double edge = std::pow(a, p) * ga - std::pow(b, p) * gb;
            const double inner = quad::gauss_legendre(
                [&](double u) { const double t = std::exp(u); return std::pow(t, p) * nu.tail(t); },
                std::log(a), std::log(b));
            s = edge + p * inner;
            if (s < 0.0 && s > -1e-9 * std::abs(edge)) s = 0.0;
        }
        blocks.push_back(s);
    }
    return classify_block_sums(std::move(blocks), opt);
}

double bg_index(const LevyMeasure& nu, double tol, const DyadicOptions& opt) {
    if (!(tol > 0.0 && tol <= 0.1)) throw PreconditionViolated("bg_index tolerance must lie in (0,0.1]");
    auto state = [&](double p) { return moment_integral(nu, p, opt).state; };
    const IntegralState s0 = state(0.0);
    if (s0 == IntegralState::Converges) return 0.0;
    const IntegralState s2 = state(2.0);
    if (s0 == IntegralState::Indeterminate && s2 == IntegralState::Indeterminate)
        throw IndeterminateBracket("moment test undecided at both ends of [0,2]");
    if (s2 == IntegralState::Diverges) return 2.0;
    double lo = 0.0, hi = 2.0;
    while (hi - lo >= tol) {
        const double mid = 0.5 * (lo + hi);
        (state(mid) == IntegralState::Converges ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

Vec origin(const ProcessSpec& spec) { return Vec(spec.dim()); }

ConditionReport run_sector(const ProcessSpec& spec, const Vec& x, double radius, const GridOptions& grid) {
    return sector_check(spec, x, radius, default_xi_grid(), grid);
}

bool holds(const ConditionReport& r) { return r.verdict == Verdict::Holds; }

// sup_{|z-x| <= R} |q(z, xi)| <= |q(x0, xi)| for some x0 of each smaller ball
// and all |xi| >= 1.
bool majorized(const ProcessSpec& spec, const Vec& x, double R, const GridOptions& grid) {
    std::vector<double> xis;
    for (int k = 0; k <= 24; ++k) xis.push_back(std::pow(10.0, 0.25 * k));
    for (double frac : {0.125, 0.25, 0.5, 0.99}) {
        const auto zs = ball_points(x, frac * R, grid);
        bool found = false;
        for (const Vec& x0 : zs) {
            bool ok = true;
            for (double m : xis) {
                for (const Vec& u : unit_directions(spec.dim(), 4)) {
                    const double ref = std::abs(spec.symbol(x0, u * m));
                    for (const Vec& z : zs)
                        if (std::abs(spec.symbol(z, u * m)) > ref * (1.0 + 1e-9)) ok = false;
                }
                if (!ok) break;
            }
            if (ok) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

Classification classify_levy(const ProcessSpec& spec, const GrowthFunction& f, const ClassifySettings& s) {
    if (spec.kind() != ProcessKind::Levy) throw PreconditionViolated("classify_levy needs a Lévy process");
    if (spec.levy_family().levy_triplet().has_gauss())
        throw PreconditionViolated("classification requires a vanishing Gaussian part");
    require_growth(f);
    Classification out;
    const Vec x = origin(spec);
    const auto sector = run_sector(spec, x, 0.0, s.grid);
    out.conditions.push_back({"Sector", sector});
    if (!holds(sector)) {
        out.reason = "sector condition not verified";
        return out;
    }
    out.assumptions_used.push_back(Assumption::Sector);

    const auto a1 = check_A1(spec, x, std::nullopt);
    out.conditions.push_back({"A1", a1});
    ConditionReport a2;
    try {
        a2 = check_A2(f);
    } catch (const InverseFailure& e) {
        a2.note = e.what();
    }
    out.conditions.push_back({"A2", a2});
    if (holds(a1)) out.assumptions_used.push_back(Assumption::A1);
    if (holds(a2)) out.assumptions_used.push_back(Assumption::A2);
    if (!holds(a1) && !holds(a2)) {
        const bool both_fail = a1.verdict == Verdict::Fails && a2.verdict == Verdict::Fails;
        out.reason = both_fail ? "A1, A2 fail" : "A1, A2 not verified";
        return out;
    }

    bool all_diverge = true;
    for (double c : s.constants()) {
        auto v = tail_integral_criterion(spec, x, f, c, BallMode::None, 1.0, s.dyadic, s.grid);
        out.integrals.push_back({"L1", c, v});
        if (v.converges()) {
            out.outcome = Outcome::Zero;
            return out;
        }
        all_diverge = all_diverge && v.diverges();
    }
    if (all_diverge) {
        out.outcome = Outcome::Infinity;
    } else {
        out.reason = "tail integral undecided";
    }
    return out;
}

Classification classify_power(const ProcessSpec& spec, double kappa, const ClassifySettings& s) {
    if (!(kappa > 0.0)) throw PreconditionViolated("kappa must be positive");
    if (spec.kind() != ProcessKind::Levy) throw PreconditionViolated("classify_power needs a Lévy process");
    Classification out;
    const Vec x = origin(spec);
    const auto sector = run_sector(spec, x, 0.0, s.grid);
    out.conditions.push_back({"Sector", sector});
    if (!holds(sector)) {
        out.reason = "sector condition not verified";
        return out;
    }
    out.assumptions_used.push_back(Assumption::Sector);
    const LevyMeasure& nu = spec.levy_family().levy_triplet().measure;

    if (std::abs(kappa - 0.5) < 1e-12) {
        const auto a1 = check_A1(spec, x, std::nullopt);
        out.conditions.push_back({"A1", a1});
        if (holds(a1)) {
            out.assumptions_used.push_back(Assumption::A1);
            out.outcome = Outcome::Zero;
        } else {
            out.reason = "critical exponent 1/2 without A1";
        }
        return out;
    }
    if (kappa > 0.5) {
        auto m = moment_integral(nu, 1.0 / kappa, s.dyadic);
        out.integrals.push_back({"moment", 1.0 / kappa, m});
        if (m.converges()) {
            out.outcome = Outcome::Zero;
            return out;
        }
        if (m.diverges()) {
            out.outcome = Outcome::Infinity;
            return out;
        }
    }
    const double beta = bg_index(nu, s.bg_tol, s.dyadic);
    ConditionReport bg;
    bg.verdict = Verdict::Holds;
    bg.witness = beta;
    bg.note = "Blumenthal-Getoor index";
    out.conditions.push_back({"BG", bg});
    if (beta == 0.0) {
        out.outcome = Outcome::Zero;
        return out;
    }
    const double critical = 1.0 / beta;
    const double band = s.bg_tol / (beta * beta);
    if (std::abs(kappa - critical) < band) {
        out.reason = "kappa within the critical band around 1/beta";
    } else {
        out.outcome = kappa < critical ? Outcome::Zero : Outcome::Infinity;
    }
    return out;
}

Classification classify_ltp_upper(const ProcessSpec& spec, const Vec& x, const GrowthFunction& f,
                                  const ClassifySettings& s) {
    require_growth(f);
    Classification out;
    const bool levy = spec.kind() == ProcessKind::Levy;
    const BallMode mode = levy ? BallMode::None : BallMode::SupBall;
    const auto sector = run_sector(spec, x, s.ball_radius, s.grid);
    out.conditions.push_back({"Sector", sector});
    const auto a1 = check_A1(spec, x, levy ? std::nullopt : std::optional<double>(s.ball_radius));
    out.conditions.push_back({"A1'", a1});

    if (holds(sector) && holds(a1)) {
        for (double c : s.constants()) {
            auto v = tail_integral_criterion(spec, x, f, c, mode, 1.0, s.dyadic, s.grid);
            out.integrals.push_back({"LTP1", c, v});
            if (v.converges()) {
                out.outcome = Outcome::Zero;
                out.assumptions_used = {Assumption::Sector, Assumption::A1Ball};
                return out;
            }
        }
    }

    const auto sym = symbol_integral_criterion(spec, x, f, s.eps, mode, 1.0, s.dyadic, s.grid);
    out.integrals.push_back({"LTP2", s.eps, sym.at_eps});
    out.integrals.push_back({"LTP2", 0.5 * s.eps, sym.at_half_eps});
    if (sym.at_eps.converges() && sym.at_half_eps.converges()) {
        out.outcome = Outcome::Zero;
        return out;
    }

    if (s.check_majorization && holds(sector)) {
        ConditionReport a2;
        try {
            a2 = check_A2(f);
        } catch (const InverseFailure& e) {
            a2.note = e.what();
        }
        out.conditions.push_back({"A2", a2});
        if (holds(a2) && majorized(spec, x, s.ball_radius, s.grid)) {
            const auto zs = ball_points(x, s.ball_radius, s.grid);
            for (double c : s.constants()) {
                auto v = dyadic_integral([&](double t) {
                    double m = 0.0;
                    for (const Vec& z : zs) m = std::max(m, spec.tail(z, c * f(t)));
                    return m;
                }, s.dyadic);
                out.integrals.push_back({"LTP1'", c, v});
                if (v.converges()) {
                    out.outcome = Outcome::Zero;
                    out.assumptions_used = {Assumption::Sector, Assumption::A2};
                    return out;
                }
            }
        }
    }
    out.reason = sym.eps_consistent() ? "upper integrals do not converge" : "eps and eps/2 disagree";
    return out;
}

Classification classify_ltp_lower(const ProcessSpec& spec, const Vec& x, const GrowthFunction& f,
                                  const ClassifySettings& s) {
    require_growth(f);
    const double C = s.lower_constant;
    if (!(C > 0.0)) throw PreconditionViolated("lower-bound constant must be positive");
    Classification out;
    const bool levy = spec.kind() == ProcessKind::Levy;
    const auto sector = run_sector(spec, x, s.ball_radius, s.grid);
    out.conditions.push_back({"Sector", sector});
    const auto ts = dyadic_times();
    const std::vector<double> radii = f.regularly_varying() ? std::vector<double>{1.0}
                                                            : std::vector<double>{1.0, 2.0, 4.0};

    if (holds(sector)) {
        bool all = true;
        for (double R : radii) {
            ConditionReport w;
            w.grid = ts;
            for (double t : ts) {
                const double ft = f(t);
                w.values.push_back(t * symbol_extremum(spec, x, R * ft, 1.0 / (C * ft), ExtremumMode::InfSupRe,
                                                       s.grid));
            }
            const bool g = grows(ts, w.values);
            w.verdict = g ? Verdict::Holds : Verdict::Fails;
            w.witness = w.values.back();
            w.note = "R=" + fmt(R);
            out.conditions.push_back({"growth witness", w});
            all = all && g;
        }
        if (all) {
            out.outcome = Outcome::Infinity;
            out.assumptions_used = {Assumption::Sector};
            return out;
        }
    }

    // C1: comparability of sup and inf of the symbol over shrinking balls.
    ConditionReport c1;
    c1.verdict = Verdict::Fails;
    if (holds(sector)) {
        bool ok = true;
        double worst = 0.0;
        for (double R : radii) {
            std::vector<double> lx, ly;
            for (double t : ts) {
                const double ft = f(t);
                const double sup = symbol_extremum(spec, x, ft, 1.0 / ft, ExtremumMode::SupSupAbs, s.grid);
                const double inf = symbol_extremum(spec, x, R * ft, 1.0 / ft, ExtremumMode::InfSup, s.grid);
                if (!(inf > 0.0)) {
                    ok = false;
                    break;
                }
                lx.push_back(-std::log(t));
                ly.push_back(std::log(sup / inf));
                c1.values.push_back(sup / inf);
            }
            if (!ok) break;
            const double slope = fit_line(lx, ly).slope;
            worst = std::max(worst, slope);
            if (!(slope < 0.95)) ok = false;
        }
        c1.grid = ts;
        c1.witness = worst;
        c1.verdict = ok ? Verdict::Holds : Verdict::Fails;
        c1.note = "fitted exponent of the sup/inf ratio";
    }
    out.conditions.push_back({"C1", c1});

    // C2: polynomial growth of the symbol, f beyond t^{2/alpha}.
    ConditionReport c2;
    {
        std::vector<double> lx, ly;
        for (int k = 0; k <= 12; ++k) {
            const double m = std::pow(10.0, 2.0 + 0.25 * k);
            const double q = symbol_extremum(spec, x, s.ball_radius, m, ExtremumMode::SupSupAbs, s.grid);
            lx.push_back(std::log(m));
            ly.push_back(std::log(std::max(q, 1e-300)));
        }
        const double alpha = std::clamp(fit_line(lx, ly).slope + 0.01, 0.05, 2.0);
        std::vector<double> g;
        for (double t : ts) g.push_back(std::exp(std::log(f(t)) - 2.0 / alpha * std::log(t)));
        c2.grid = ts;
        c2.values = g;
        c2.witness = alpha;
        c2.verdict = grows(ts, g) ? Verdict::Holds : Verdict::Fails;
        c2.note = "fitted growth exponent alpha";
    }
    out.conditions.push_back({"C2", c2});
    if (holds(c1)) out.assumptions_used.push_back(Assumption::C1);
    if (holds(c2)) out.assumptions_used.push_back(Assumption::C2);
    if (!holds(c1) && !holds(c2)) {
        out.reason = "neither C1 nor C2 verified";
        return out;
    }

    std::vector<double> cs;
    for (int j = 0; j <= s.lower_scan; ++j) cs.push_back(C * std::ldexp(1.0, j));
    const BallMode mode = levy ? BallMode::None : BallMode::InfBall;
    auto conclude = [&](const std::vector<double>& diverging) {
        if (diverging.size() == cs.size()) {
            out.outcome = Outcome::Infinity;
        } else {
            out.outcome = Outcome::LowerBound;
            out.lower_bound = diverging.back() / 5.0;
        }
    };

    std::vector<double> diverging;
    for (double Ck : cs) {
        auto v = tail_integral_criterion(spec, x, f, Ck, mode, Ck, s.dyadic, s.grid);
        out.integrals.push_back({"inf-ball tail", Ck, v});
        if (v.diverges()) diverging.push_back(Ck);
    }
    if (!diverging.empty()) {
        conclude(diverging);
        return out;
    }

    const auto a1 = check_A1(spec, x, levy ? std::nullopt : std::optional<double>(s.ball_radius));
    out.conditions.push_back({"A1'", a1});
    if (holds(a1)) {
        for (double Ck : cs) {
            auto v = symbol_integral_criterion(spec, x, f, 1.0, mode, Ck, s.dyadic, s.grid).at_eps;
            out.integrals.push_back({"inf-ball symbol", Ck, v});
            if (v.diverges()) diverging.push_back(Ck);
        }
        if (!diverging.empty()) {
            out.assumptions_used.push_back(Assumption::A1Ball);
            conclude(diverging);
            return out;
        }
    }
    out.reason = "lower integrals do not diverge";
    return out;
}

ExitBounds exit_bounds(const ProcessSpec& spec, const Vec& x, double t, double r, double c_lower,
                       const GridOptions& grid) {
    if (!(t >= 0.0) || !(r > 0.0)) throw PreconditionViolated("exit bounds need t >= 0 and r > 0");
    if (!(c_lower >= 0.0 && c_lower <= 1.0)) throw PreconditionViolated("c_lower must lie in [0,1]");
    ExitBounds b;
    const auto zs = spec.family().state_independent() ? std::vector<Vec>{x} : ball_points(x, 2.0 * r, grid);
    b.tail_inf = kInf;
    for (const Vec& z : zs) b.tail_inf = std::min(b.tail_inf, spec.tail(z, 2.0 * r));
    const double G = b.tail_inf;
    b.schilling = t * symbol_extremum(spec, x, r, 1.0 / r, ExtremumMode::SupSupAbs, grid);
    b.new_bound = 1.0 / (1.0 + t * G);
    b.expected_exit = G > 0.0 ? 1.0 / G : kInf;
    b.exponential = std::exp(-t * G);
    b.lower = std::min(1.0, (1.0 - c_lower) * t * G);
    const double h = symbol_extremum(spec, x, r, 1.0 / (2.0 * r), ExtremumMode::SupInfRe, grid);
    b.symbol_bound = 1.0 / (1.0 + t * h);
    return b;
}

}  // namespace levyup
