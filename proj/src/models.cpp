#include "levyup/models.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "levyup/errors.hpp"

namespace levyup {

namespace {

constexpr double kPi = std::numbers::pi;

double sphere_area(int d) { return 2.0 * std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0); }

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw InvalidModel("alpha must lie in (0,2)");
}

// Radial constant C (density C s^{-1-alpha}) of the symmetric 1-d measure with
// exponent |xi|^alpha.
double unit_radial_constant(double alpha) { return 2.0 * stable_symbol_constant(1, alpha); }

// int (1 - cos(xi y)) e^{-|y|} |y|^{-1-alpha} dy over R.
double tempered_part(double alpha, double xi) {
    const double a = std::abs(xi);
    if (a == 0.0) return 0.0;
    if (alpha == 1.0) return 2.0 * (a * std::atan(a) - 0.5 * std::log1p(a * a));
    const double th = std::atan(a);
    const double c = std::cos(alpha * th);
    const double s = std::sin(0.5 * alpha * th);
    const double bracket = std::expm1(0.5 * alpha * std::log1p(a * a)) * c - 2.0 * s * s;
    return -2.0 * std::tgamma(-alpha) * bracket;
}

class VariableOrderFamily final : public CharacteristicsFamily {
public:
    explicit VariableOrderFamily(VariableOrderParams p) : p_(p) {
        check_alpha(p.base - std::abs(p.slope));
        check_alpha(p.base + std::abs(p.slope));
    }
    std::string name() const override { return "variable-order"; }
    int dim() const override { return 1; }
    Triplet triplet(const Vec& x) const override {
        const double a = variable_order(p_, x[0]);
        Triplet t;
        t.measure = LevyMeasure(std::make_shared<PowerProfile>(a, unit_radial_constant(a)));
        return t;
    }
    Complex symbol(const Vec& x, const Vec& xi) const override {
        return {std::pow(std::abs(xi[0]), variable_order(p_, x[0])), 0.0};
    }
    double tail(const Vec& x, double r) const override {
        const double a = variable_order(p_, x[0]);
        return unit_radial_constant(a) * std::pow(r, -a) / a;
    }
    double trunc2(const Vec& x, double r) const override {
        const double a = variable_order(p_, x[0]);
        return unit_radial_constant(a) * std::pow(r, 2.0 - a) / (2.0 - a);
    }
    std::optional<StableLaw> stable_law(const Vec& x) const override {
        return StableLaw{variable_order(p_, x[0]), 0.0, 1.0, 0.0, 1};
    }
    bool state_independent() const override { return p_.slope == 0.0; }

private:
    VariableOrderParams p_;
};

class StableTypeFamily final : public CharacteristicsFamily {
public:
    explicit StableTypeFamily(StableTypeParams p) : p_(p), c_(stable_symbol_constant(1, p.alpha)) {
        check_alpha(p.alpha);
        if (!(p.amplitude >= 0.0 && p.amplitude < 0.5))
            throw InvalidModel("amplitude must lie in [0,0.5)");
    }
    std::string name() const override { return "stable-type"; }
    int dim() const override { return 1; }
    double weight(double x) const { return p_.amplitude * (1.0 + std::sin(x)); }
    Triplet triplet(const Vec& x) const override {
        Triplet t;
        t.measure = LevyMeasure(std::make_shared<TemperedProfile>(p_.alpha, 2.0 * c_, weight(x[0])));
        return t;
    }
    Complex symbol(const Vec& x, const Vec& xi) const override {
        return {std::pow(std::abs(xi[0]), p_.alpha) - weight(x[0]) * c_ * tempered_part(p_.alpha, xi[0]),
                0.0};
    }
    double tail(const Vec& x, double r) const override {
        return TemperedProfile(p_.alpha, 2.0 * c_, weight(x[0])).tail(r);
    }
    double trunc2(const Vec& x, double r) const override {
        return TemperedProfile(p_.alpha, 2.0 * c_, weight(x[0])).trunc2(r);
    }

private:
    StableTypeParams p_;
    double c_;
};

}  // namespace

double stable_symbol_constant(int d, double alpha) {
    check_alpha(alpha);
    return alpha * std::pow(2.0, alpha - 1.0) * std::tgamma((d + alpha) / 2.0) /
           (std::pow(kPi, d / 2.0) * std::tgamma(1.0 - alpha / 2.0));
}

double variable_order(const VariableOrderParams& p, double z) {
    return p.base - p.slope * std::clamp(z, -1.0, 1.0);
}

ProcessSpec make_stable(const StableParams& p) {
    check_alpha(p.alpha);
    if (p.dim < 1 || p.dim > Vec::kMaxDim) throw InvalidModel("dimension must lie in [1,3]");
    if (!(p.skew >= -1.0 && p.skew <= 1.0)) throw InvalidModel("skew must lie in [-1,1]");
    if (p.skew != 0.0 && (p.dim > 1 || p.alpha == 1.0))
        throw InvalidModel("skewed stable laws need d = 1 and alpha != 1");
    const double a = p.alpha;
    double radial_c = 0.0, scale = 1.0;
    if (p.dim == 1) {
        if (p.norm == StableNorm::Symbol) {
            radial_c = unit_radial_constant(a);
        } else {
            radial_c = 2.0;
            scale = std::pow(radial_c / unit_radial_constant(a), 1.0 / a);
        }
    } else {
        const double unit = stable_symbol_constant(p.dim, a) * sphere_area(p.dim);
        if (p.norm == StableNorm::Symbol) {
            radial_c = unit;
        } else {
            radial_c = sphere_area(p.dim);
            scale = std::pow(radial_c / unit, 1.0 / a);
        }
    }
    const double p_plus = 0.5 * (1.0 + p.skew);
    Triplet t;
    t.drift = Vec(p.dim);
    t.measure = LevyMeasure(std::make_shared<PowerProfile>(a, radial_c), p.dim, p_plus);
    if (p.dim == 1) {
        t.drift[0] = p.drift;
        if (p.skew != 0.0) t.drift[0] += (2.0 * p_plus - 1.0) * radial_c / (1.0 - a);
    }
    const StableLaw law{a, p.skew, scale, p.dim == 1 ? p.drift : 0.0, p.dim};
    auto fam = std::make_shared<LevyFamily>("stable", t, [law](const Vec& xi) { return law.exponent(xi); },
                                            law);
    return ProcessSpec::levy(fam);
}

ProcessSpec make_iterated_log() {
    Triplet t;
    t.measure = LevyMeasure(std::make_shared<IteratedLogProfile>());
    return ProcessSpec::levy(std::make_shared<LevyFamily>("iterated-log", t));
}

ProcessSpec make_log_corrected() {
    Triplet t;
    t.measure = LevyMeasure(std::make_shared<LogCorrectedProfile>());
    return ProcessSpec::levy(std::make_shared<LevyFamily>("log-corrected", t));
}

ProcessSpec make_atom(double mass, double radius) {
    Triplet t;
    t.measure = LevyMeasure(std::make_shared<AtomProfile>(mass, radius));
    auto sym = [mass, radius](const Vec& xi) {
        const double h = std::sin(0.5 * radius * xi[0]);
        return Complex{2.0 * mass * h * h, 0.0};
    };
    return ProcessSpec::levy(std::make_shared<LevyFamily>("atom", t, sym));
}

ProcessSpec make_zero(int dim) {
    Triplet t;
    t.drift = Vec(dim);
    t.measure = LevyMeasure(std::make_shared<ZeroProfile>(), dim);
    return ProcessSpec::levy(std::make_shared<LevyFamily>(
        "zero", t, [](const Vec&) { return Complex{0.0, 0.0}; }, StableLaw{1.0, 0.0, 0.0, 0.0, dim}));
}

ProcessSpec make_levy(const std::string& name, Triplet triplet) {
    return ProcessSpec::levy(std::make_shared<LevyFamily>(name, std::move(triplet)));
}

ProcessSpec make_variable_order(const VariableOrderParams& p) {
    return ProcessSpec::state_dependent(std::make_shared<VariableOrderFamily>(p));
}

ProcessSpec make_stable_type(const StableTypeParams& p) {
    return ProcessSpec::state_dependent(std::make_shared<StableTypeFamily>(p));
}

ProcessSpec make_sde(const ProcessSpec& driver, const SdeParams& p) {
    SdeCoefficient c;
    c.sigma = [p](double x) { return p.s0 + p.s1 * std::sin(p.omega * x); };
    c.bound = std::abs(p.s0) + std::abs(p.s1);
    c.description = "sigma(x) = " + std::to_string(p.s0) + " + " + std::to_string(p.s1) + " sin(" +
                    std::to_string(p.omega) + " x)";
    return ProcessSpec::sde(driver, std::move(c));
}

}  // namespace levyup
