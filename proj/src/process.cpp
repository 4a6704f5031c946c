#include "levyup/process.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "levyup/errors.hpp"
#include "levyup/levy_core.hpp"

namespace levyup {

Complex StableLaw::exponent(const Vec& xi) const {
    const double a = xi.norm();
    if (a == 0.0) return {0.0, 0.0};
    const double shift_part = dim == 1 ? -shift * xi[0] : 0.0;
    const double mag = std::pow(scale * a, alpha);
    if (dim > 1 || skew == 0.0 || alpha == 1.0) return {mag, shift_part};
    const double sgn = xi[0] > 0.0 ? 1.0 : -1.0;
    return {mag, -mag * skew * std::tan(std::numbers::pi * alpha / 2.0) * sgn + shift_part};
}

struct LevyFamily::Table {
    static constexpr double kLo = -8.0, kHi = 16.0, kStep = 1.0 / 16.0;
    boost::math::interpolators::cardinal_cubic_b_spline<double> log_re;
    boost::math::interpolators::cardinal_cubic_b_spline<double> ratio;
};

LevyFamily::LevyFamily(std::string name, Triplet triplet, SymbolFn closed_form,
                       std::optional<StableLaw> law)
    : name_(std::move(name)), triplet_(std::move(triplet)), closed_(std::move(closed_form)),
      law_(law) {
    if (triplet_.measure.dim() != triplet_.dim())
        throw InvalidModel("drift and Lévy measure dimensions differ");
    const auto& prof = triplet_.measure.radial();
    if (closed_ || triplet_.dim() != 1 || triplet_.measure.is_zero() || !prof.has_density() ||
        !prof.atoms().empty())
        return;
    const int n = static_cast<int>(std::lround((Table::kHi - Table::kLo) / Table::kStep)) + 1;
    std::vector<double> lr(n), ratio(n);
    for (int k = 0; k < n; ++k) {
        const double xi = std::pow(10.0, Table::kLo + k * Table::kStep);
        const Complex q = eval_exponent(triplet_, Vec{xi});
        if (!(q.real() > 0.0)) return;  // leave untabulated
        lr[k] = std::log(q.real());
        ratio[k] = q.imag() / q.real();
    }
    auto t = std::make_shared<Table>(Table{
        boost::math::interpolators::cardinal_cubic_b_spline<double>(lr.data(), lr.size(), Table::kLo,
                                                                    Table::kStep),
        boost::math::interpolators::cardinal_cubic_b_spline<double>(ratio.data(), ratio.size(),
                                                                    Table::kLo, Table::kStep)});
    table_ = std::move(t);
}

Complex LevyFamily::exponent(const Vec& xi) const {
    if (closed_) return closed_(xi);
    if (table_) {
        const double a = std::abs(xi[0]);
        if (a == 0.0) return {0.0, 0.0};
        const double l = std::log10(a);
        if (l >= Table::kLo && l <= Table::kHi) {
            const double re = std::exp(table_->log_re(l));
            const double im = table_->ratio(l) * re;
            return {re, xi[0] > 0.0 ? im : -im};
        }
    }
    return eval_exponent(triplet_, xi);
}

std::string to_string(ProcessKind k) {
    switch (k) {
        case ProcessKind::Levy: return "Levy";
        case ProcessKind::StateDependent: return "StateDependent";
        case ProcessKind::SDE: return "SDE";
    }
    return "?";
}

namespace {

class SdeFamily final : public CharacteristicsFamily {
public:
    SdeFamily(std::shared_ptr<const LevyFamily> driver, std::shared_ptr<const SdeCoefficient> coef)
        : driver_(std::move(driver)), coef_(std::move(coef)) {}

    std::string name() const override { return "sde(" + driver_->name() + ")"; }
    int dim() const override { return 1; }

    Complex symbol(const Vec& x, const Vec& xi) const override {
        return driver_->exponent(xi * coef_->sigma(x[0]));
    }
    double tail(const Vec& x, double r) const override {
        const double s = std::abs(coef_->sigma(x[0]));
        return s == 0.0 ? 0.0 : driver_->levy_triplet().measure.tail(r / s);
    }
    double trunc2(const Vec& x, double r) const override {
        const double s = std::abs(coef_->sigma(x[0]));
        return s == 0.0 ? 0.0 : s * s * driver_->levy_triplet().measure.trunc2(r / s);
    }
    Triplet triplet(const Vec& x) const override {
        const Triplet& base = driver_->levy_triplet();
        const double s = coef_->sigma(x[0]);
        Triplet t;
        t.drift = Vec{0.0};
        if (s == 0.0) return t;
        const double k = std::abs(s);
        t.measure = LevyMeasure(std::make_shared<ScaledProfile>(base.measure.radial_ptr(), k), 1,
                                s > 0.0 ? base.measure.p_plus() : 1.0 - base.measure.p_plus());
        t.gauss[0] = s * s * base.gauss[0];
        double b = s * base.drift[0];
        if (k < 1.0) b += s * base.measure.mean_jump(1.0, 1.0 / k)[0];
        if (k > 1.0) b -= s * base.measure.mean_jump(1.0 / k, 1.0)[0];
        t.drift[0] = b;
        return t;
    }
    std::optional<StableLaw> stable_law(const Vec& x) const override {
        auto law = driver_->stable_law(x);
        if (!law) return law;
        const double s = coef_->sigma(x[0]);
        law->scale *= std::abs(s);
        law->shift *= s;
        if (s < 0.0) law->skew = -law->skew;
        return law;
    }

private:
    std::shared_ptr<const LevyFamily> driver_;
    std::shared_ptr<const SdeCoefficient> coef_;
};

}  // namespace

ProcessSpec ProcessSpec::levy(std::shared_ptr<const LevyFamily> family) {
    ProcessSpec p;
    p.kind_ = ProcessKind::Levy;
    p.name_ = family->name();
    p.family_ = std::move(family);
    return p;
}

ProcessSpec ProcessSpec::state_dependent(FamilyPtr family) {
    ProcessSpec p;
    p.kind_ = ProcessKind::StateDependent;
    p.name_ = family->name();
    p.family_ = std::move(family);
    return p;
}

ProcessSpec ProcessSpec::sde(const ProcessSpec& driver, SdeCoefficient coefficient) {
    if (driver.kind() != ProcessKind::Levy || driver.dim() != 1)
        throw InvalidModel("SDE driver must be a one-dimensional Lévy process");
    if (!coefficient.sigma) throw InvalidModel("SDE coefficient missing");
    ProcessSpec p;
    p.kind_ = ProcessKind::SDE;
    auto coef = std::make_shared<const SdeCoefficient>(std::move(coefficient));
    auto lf = std::dynamic_pointer_cast<const LevyFamily>(driver.family_ptr());
    p.family_ = std::make_shared<SdeFamily>(lf, coef);
    p.name_ = p.family_->name();
    p.driver_ = std::make_shared<const ProcessSpec>(driver);
    p.coefficient_ = coef;
    return p;
}

const LevyFamily& ProcessSpec::levy_family() const {
    if (kind_ == ProcessKind::SDE) return driver_->levy_family();
    if (kind_ != ProcessKind::Levy) throw PreconditionViolated("process is not a Lévy process");
    return static_cast<const LevyFamily&>(*family_);
}

const ProcessSpec& ProcessSpec::driver() const {
    if (kind_ != ProcessKind::SDE) throw PreconditionViolated("process is not an SDE");
    return *driver_;
}

double ProcessSpec::sigma(double x) const {
    if (kind_ != ProcessKind::SDE) throw PreconditionViolated("process is not an SDE");
    return coefficient_->sigma(x);
}

}  // namespace levyup
