#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace levyup {

// Candidate upper function f: (0, 1] -> (0, inf), non-decreasing.
class GrowthFunction {
public:
    enum class Form { Power, PowerLog, Constant, Custom };

    // scale * t^kappa
    static GrowthFunction power(double kappa, double scale = 1.0);
    // t^kappa * log(e/t)^lambda
    static GrowthFunction power_log(double kappa, double lambda);
    static GrowthFunction constant(double value);
    static GrowthFunction custom(std::function<double(double)> f, std::string description,
                                 bool regularly_varying = false);

    double operator()(double t) const { return eval_(t); }
    // inf{t in (0,1] : f(t) >= r}; +inf when the set is empty. Throws
    // InverseFailure when the infimum is 0 to machine precision.
    double inverse(double r) const;

    Form form() const { return form_; }
    std::string descriptor() const { return descriptor_; }
    bool regularly_varying() const { return regularly_varying_; }
    std::optional<double> power_exponent() const;
    double kappa() const { return kappa_; }
    double scale() const { return scale_; }
    double lambda() const { return lambda_; }

    // Throws PreconditionViolated if f is not positive and non-decreasing on a
    // log grid of (0, 1].
    void check_monotone() const;

private:
    Form form_ = Form::Custom;
    std::function<double(double)> eval_;
    std::string descriptor_;
    bool regularly_varying_ = false;
    double kappa_ = 0.0, scale_ = 1.0, lambda_ = 0.0;
};

}  // namespace levyup
