#include "levyup/growth.hpp"

#include <cmath>
#include <sstream>

#include "levyup/errors.hpp"

namespace levyup {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

GrowthFunction GrowthFunction::power(double kappa, double scale) {
    if (!(kappa > 0.0) || !(scale > 0.0)) throw PreconditionViolated("power growth needs kappa > 0, scale > 0");
    GrowthFunction g;
    g.form_ = Form::Power;
    g.kappa_ = kappa;
    g.scale_ = scale;
    g.eval_ = [kappa, scale](double t) { return scale * std::pow(t, kappa); };
    g.descriptor_ = "power(kappa=" + fmt(kappa) + (scale != 1.0 ? ", scale=" + fmt(scale) : "") + ")";
    g.regularly_varying_ = true;
    return g;
}

GrowthFunction GrowthFunction::power_log(double kappa, double lambda) {
    if (!(kappa > 0.0)) throw PreconditionViolated("power-log growth needs kappa > 0");
    if (lambda > kappa) throw PreconditionViolated("power-log growth needs lambda <= kappa to be non-decreasing");
    GrowthFunction g;
    g.form_ = Form::PowerLog;
    g.kappa_ = kappa;
    g.lambda_ = lambda;
    g.eval_ = [kappa, lambda](double t) {
        return std::pow(t, kappa) * std::pow(1.0 - std::log(t), lambda);
    };
    g.descriptor_ = "power_log(kappa=" + fmt(kappa) + ", lambda=" + fmt(lambda) + ")";
    g.regularly_varying_ = true;
    return g;
}

GrowthFunction GrowthFunction::constant(double value) {
    if (!(value > 0.0)) throw PreconditionViolated("constant growth must be positive");
    GrowthFunction g;
    g.form_ = Form::Constant;
    g.scale_ = value;
    g.eval_ = [value](double) { return value; };
    g.descriptor_ = "constant(value=" + fmt(value) + ")";
    g.regularly_varying_ = true;
    return g;
}

GrowthFunction GrowthFunction::custom(std::function<double(double)> f, std::string description,
                                      bool regularly_varying) {
    GrowthFunction g;
    g.form_ = Form::Custom;
    g.eval_ = std::move(f);
    g.descriptor_ = std::move(description);
    g.regularly_varying_ = regularly_varying;
    return g;
}

std::optional<double> GrowthFunction::power_exponent() const {
    if (form_ == Form::Power) return kappa_;
    if (form_ == Form::Constant) return 0.0;
    return std::nullopt;
}

double GrowthFunction::inverse(double r) const {
    if (!(r > 0.0)) throw PreconditionViolated("inverse needs r > 0");
    if ((*this)(1.0) < r) return std::numeric_limits<double>::infinity();
    if (form_ == Form::Power) {
        const double t = std::pow(r / scale_, 1.0 / kappa_);
        if (!(t > 0.0)) throw InverseFailure("f^{-1}(r) underflows to 0 at r=" + fmt(r));
        return std::min(t, 1.0);
    }
    double lo = std::log(1e-300), hi = 0.0;
    if ((*this)(std::exp(lo)) >= r)
        throw InverseFailure("f^{-1}(r) = 0 numerically at r=" + fmt(r));
    // Bisection in log t: f(e^lo) < r <= f(e^hi).
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if ((*this)(std::exp(mid)) >= r) hi = mid; else lo = mid;
    }
    return std::exp(hi);
}

void GrowthFunction::check_monotone() const {
    double prev = 0.0;
    for (int k = 300; k >= 0; --k) {
        const double t = std::pow(10.0, -0.1 * k);
        const double v = (*this)(t);
        if (!(v > 0.0) || !std::isfinite(v))
            throw PreconditionViolated(descriptor_ + " is not positive and finite at t=" + fmt(t));
        if (v < prev * (1.0 - 1e-12))
            throw PreconditionViolated(descriptor_ + " is not non-decreasing near t=" + fmt(t));
        prev = v;
    }
}

}  // namespace levyup
