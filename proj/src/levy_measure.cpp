#include "levyup/levy_measure.hpp"

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "levyup/errors.hpp"
#include "levyup/quadrature.hpp"

namespace levyup {

namespace {

constexpr double kE = std::numbers::e;

// Upper incomplete gamma for a in (-2, 2), x > 0.
double upper_gamma(double a, double x) {
    if (a > 0.0) return boost::math::tgamma(a, x);
    if (a == 0.0) return boost::math::expint(1, x);
    return (upper_gamma(a + 1.0, x) - std::pow(x, a) * std::exp(-x)) / a;
}

}  // namespace

double RadialProfile::moment1(double a, double b) const {
    if (!(b > a) || a < 0.0) return 0.0;
    b = std::min(b, support_max());
    if (!(b > a)) return 0.0;
    if (has_density() && atoms().empty()) {
        const double lo = a > 0.0 ? a : std::min(1e-300, 1e-30 * b);
        return quad::integrate_log([&](double s) { return s * density(s); }, lo, b);
    }
    // By parts: a G(a) - b G(b) + int_a^b G.
    const double lo = a > 0.0 ? a : 1e-300;
    return lo * tail(lo) - b * tail(b) +
           quad::integrate_log([&](double s) { return tail(s); }, lo, b);
}

// ---------------------------------------------------------------- power

PowerProfile::PowerProfile(double alpha, double c) : alpha_(alpha), c_(c) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw InvalidModel("alpha must lie in (0,2)");
    if (!(c >= 0.0)) throw InvalidModel("power profile constant must be non-negative");
}

double PowerProfile::tail(double r) const { return c_ * std::pow(r, -alpha_) / alpha_; }

double PowerProfile::trunc2(double r) const {
    return c_ * std::pow(r, 2.0 - alpha_) / (2.0 - alpha_);
}

double PowerProfile::density(double s) const { return c_ * std::pow(s, -1.0 - alpha_); }

double PowerProfile::moment1(double a, double b) const {
    if (!(b > a)) return 0.0;
    if (alpha_ == 1.0) return c_ * std::log(b / a);
    return c_ * (std::pow(b, 1.0 - alpha_) - std::pow(a, 1.0 - alpha_)) / (1.0 - alpha_);
}

double PowerProfile::sample_above(double delta, Rng& rng) const {
    return delta * std::pow(rng.uniform(), -1.0 / alpha_);
}

// ------------------------------------------------------------- tempered

TemperedProfile::TemperedProfile(double alpha, double c, double b) : alpha_(alpha), c_(c), b_(b) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw InvalidModel("alpha must lie in (0,2)");
    if (!(b >= 0.0 && b < 1.0)) throw InvalidModel("tempering weight must lie in [0,1)");
}

double TemperedProfile::tail(double r) const {
    return c_ * (std::pow(r, -alpha_) / alpha_ - b_ * upper_gamma(-alpha_, r));
}

double TemperedProfile::trunc2(double r) const {
    return c_ * (std::pow(r, 2.0 - alpha_) / (2.0 - alpha_) -
                 b_ * boost::math::tgamma_lower(2.0 - alpha_, r));
}

double TemperedProfile::density(double s) const {
    return c_ * (1.0 - b_ * std::exp(-s)) * std::pow(s, -1.0 - alpha_);
}

double TemperedProfile::sample_above(double delta, Rng& rng) const {
    for (;;) {
        const double s = delta * std::pow(rng.uniform(), -1.0 / alpha_);
        if (rng.uniform() <= 1.0 - b_ * std::exp(-s)) return s;
    }
}

// -------------------------------------------------------- iterated log

double IteratedLogProfile::support_max() const { return std::exp(-kE); }

double IteratedLogProfile::tail(double r) const {
    const double u = -std::log(r);
    if (!(u > kE)) return 0.0;
    const double span = std::min(u - kE, 40.0);
    auto g = [u](double v) {
        const double w = u - v;
        const double lw = std::log(w);
        return std::exp(-2.0 * v) / (w * lw * lw);
    };
    quad::Options opt;
    opt.rel_tol = 1e-11;
    opt.abs_tol = 1e-300;
    return std::exp(2.0 * u) * quad::integrate(g, 0.0, span, opt);
}

double IteratedLogProfile::trunc2(double r) const {
    const double u = -std::log(r);
    if (!(u > kE)) return 1.0;
    return 1.0 / std::log(u);
}

double IteratedLogProfile::density(double s) const {
    const double u = -std::log(s);
    if (!(u > kE)) return 0.0;
    const double lu = std::log(u);
    return 1.0 / (s * s * s * u * lu * lu);
}

double IteratedLogProfile::sample_above(double delta, Rng& rng) const {
    const double top = -std::log(delta);
    if (!(top > kE)) return 0.0;
    // Proposal e^{2u} on (e, top) in u = log(1/s), accepted with e / (u log^2 u).
    for (;;) {
        const double w = rng.uniform();
        const double u = top + 0.5 * std::log(w + (1.0 - w) * std::exp(2.0 * (kE - top)));
        const double lu = std::log(u);
        if (rng.uniform() * u * lu * lu <= kE) return std::exp(-u);
    }
}

// -------------------------------------------------------- log corrected

double LogCorrectedProfile::tail(double r) const {
    if (r >= 1.0) return 0.0;
    return 2.0 * (1.0 - 1.0 / (1.0 - std::log(r)));
}

double LogCorrectedProfile::trunc2(double r) const {
    r = std::min(r, 1.0);
    const double l = 1.0 - std::log(r);
    quad::Options opt;
    opt.rel_tol = 1e-11;
    opt.abs_tol = 0.0;
    const double j = quad::integrate(
        [l](double v) { return std::exp(-2.0 * v) / ((l + v) * (l + v)); }, 0.0, 40.0, opt);
    return 2.0 * r * r * j;
}

double LogCorrectedProfile::density(double s) const {
    if (s >= 1.0) return 0.0;
    const double l = 1.0 - std::log(s);
    return 2.0 / (s * l * l);
}

double LogCorrectedProfile::sample_above(double delta, Rng& rng) const {
    const double g = rng.uniform() * tail(delta);
    const double l = 1.0 / (1.0 - 0.5 * g);
    return std::exp(1.0 - l);
}

// ----------------------------------------------------------------- atom

AtomProfile::AtomProfile(double mass, double radius) : mass_(mass), radius_(radius) {
    if (!(mass >= 0.0) || !(radius > 0.0)) throw InvalidModel("atom needs mass >= 0 and radius > 0");
}

double AtomProfile::tail(double r) const { return r < radius_ ? mass_ : 0.0; }

double AtomProfile::trunc2(double r) const { return r >= radius_ ? mass_ * radius_ * radius_ : 0.0; }

double AtomProfile::moment1(double a, double b) const {
    return (a < radius_ && radius_ <= b) ? mass_ * radius_ : 0.0;
}

// --------------------------------------------------------------- scaled

ScaledProfile::ScaledProfile(ProfilePtr base, double factor) : base_(std::move(base)), k_(factor) {
    if (!(factor > 0.0)) throw InvalidModel("scale factor must be positive");
}

std::vector<RadialAtom> ScaledProfile::atoms() const {
    auto a = base_->atoms();
    for (auto& x : a) x.radius *= k_;
    return a;
}

// -------------------------------------------------------------- measure

LevyMeasure::LevyMeasure() : LevyMeasure(std::make_shared<ZeroProfile>(), 1, 0.5) {}

LevyMeasure::LevyMeasure(ProfilePtr radial, int dim, double p_plus)
    : radial_(std::move(radial)), dim_(dim), p_plus_(p_plus) {
    if (!radial_) throw InvalidModel("missing radial profile");
    if (dim < 1 || dim > Vec::kMaxDim) throw InvalidModel("dimension must lie in [1,3]");
    if (!(p_plus >= 0.0 && p_plus <= 1.0)) throw InvalidModel("p_plus must lie in [0,1]");
    if (dim > 1 && p_plus != 0.5) throw InvalidModel("only isotropic measures in d > 1");
}

bool LevyMeasure::is_zero() const {
    return dynamic_cast<const ZeroProfile*>(radial_.get()) != nullptr;
}

Vec LevyMeasure::mean_jump(double a, double b) const {
    Vec m(dim_);
    if (dim_ == 1 && p_plus_ != 0.5) m[0] = (2.0 * p_plus_ - 1.0) * radial_->moment1(a, b);
    return m;
}

Vec LevyMeasure::sample_jump_above(double delta, Rng& rng) const {
    const double s = radial_->sample_above(delta, rng);
    Vec y(dim_);
    if (dim_ == 1) {
        y[0] = rng.uniform() < p_plus_ ? s : -s;
        return y;
    }
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (int i = 0; i < dim_; ++i) {
            y[i] = rng.normal();
            n2 += y[i] * y[i];
        }
    } while (n2 == 0.0);
    return y * (s / std::sqrt(n2));
}

void LevyMeasure::validate() const {
    std::vector<double> grid;
    for (double e = -8.0; e <= 1.0 + 1e-12; e += 0.25) grid.push_back(std::pow(10.0, e));
    double prev_tail = std::numeric_limits<double>::infinity();
    double prev_t2 = 0.0;
    for (double r : grid) {
        const double g = tail(r), k = trunc2(r);
        if (!std::isfinite(g) || !std::isfinite(k) || g < 0.0 || k < 0.0)
            throw InvalidModel(radial_->name() + ": tail or trunc2 not finite/non-negative at r=" +
                               std::to_string(r));
        if (g > prev_tail * (1.0 + 1e-9))
            throw InvalidModel(radial_->name() + ": tail is not non-increasing");
        if (k < prev_t2 * (1.0 - 1e-9))
            throw InvalidModel(radial_->name() + ": trunc2 is not non-decreasing");
        prev_tail = g;
        prev_t2 = k;
    }
    if (!std::isfinite(tail(1.0) + trunc2(1.0)))
        throw InvalidModel(radial_->name() + ": not a Lévy measure");
    if (!radial_->has_density() || !radial_->atoms().empty()) return;
    for (double r : {1e-6, 1e-4, 1e-3, 1e-2, 0.1, 0.5}) {
        const double hi = std::min(10.0 * r, radial_->support_max());
        if (!(hi > r)) continue;
        quad::Options opt;
        opt.rel_tol = 1e-10;
        opt.abs_tol = 0.0;
        const double num =
            quad::integrate_log([&](double s) { return radial_->density(s); }, r, hi, opt);
        const double ref = tail(r) - tail(hi);
        if (std::abs(num - ref) > 1e-6 * std::max(std::abs(ref), 1e-300))
            throw InvalidModel(radial_->name() + ": density inconsistent with tail at r=" +
                               std::to_string(r));
    }
}

}  // namespace levyup
