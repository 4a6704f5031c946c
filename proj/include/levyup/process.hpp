#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "levyup/levy_measure.hpp"
#include "levyup/vec.hpp"

namespace levyup {

// Lévy triplet (b, Q, nu) with truncation 1_{(0,1)}(|y|).
struct Triplet {
    Vec drift = Vec(1);
    std::array<double, 9> gauss{};  // row-major d x d covariance Q
    LevyMeasure measure;

    int dim() const { return drift.dim(); }
    bool has_gauss() const {
        for (double q : gauss)
            if (q != 0.0) return true;
        return false;
    }
    double gauss_at(int i, int j) const { return gauss[i * 3 + j]; }
};

// Law of X_1 for a strictly stable Lévy process in the (scale, skewness)
// parametrisation: exponent scale^alpha |xi|^alpha (1 - i skew tan(pi alpha/2)
// sgn xi) - i shift xi. In d > 1 only the isotropic law (skew = 0) is allowed.
struct StableLaw {
    double alpha = 1.0;
    double skew = 0.0;
    double scale = 1.0;
    double shift = 0.0;
    int dim = 1;

    Complex exponent(const Vec& xi) const;
};

// State-dependent characteristics x -> (b(x), Q(x), nu(x, .)) together with
// the symbol q(x, xi).
class CharacteristicsFamily {
public:
    virtual ~CharacteristicsFamily() = default;

    virtual std::string name() const = 0;
    virtual int dim() const = 0;
    virtual Triplet triplet(const Vec& x) const = 0;
    virtual Complex symbol(const Vec& x, const Vec& xi) const = 0;

    virtual double tail(const Vec& x, double r) const { return triplet(x).measure.tail(r); }
    virtual double trunc2(const Vec& x, double r) const { return triplet(x).measure.trunc2(r); }
    // Exact law of the frozen increment, when it is stable.
    virtual std::optional<StableLaw> stable_law(const Vec&) const { return std::nullopt; }
    virtual bool state_independent() const { return false; }
};

using FamilyPtr = std::shared_ptr<const CharacteristicsFamily>;

// A fixed Lévy triplet. The symbol is either supplied in closed form or
// evaluated from the triplet (tabulated on a log grid when d = 1).
class LevyFamily final : public CharacteristicsFamily {
public:
    using SymbolFn = std::function<Complex(const Vec&)>;

    LevyFamily(std::string name, Triplet triplet, SymbolFn closed_form = {},
               std::optional<StableLaw> law = std::nullopt);

    std::string name() const override { return name_; }
    int dim() const override { return triplet_.dim(); }
    Triplet triplet(const Vec&) const override { return triplet_; }
    Complex symbol(const Vec&, const Vec& xi) const override { return exponent(xi); }
    double tail(const Vec&, double r) const override { return triplet_.measure.tail(r); }
    double trunc2(const Vec&, double r) const override { return triplet_.measure.trunc2(r); }
    std::optional<StableLaw> stable_law(const Vec&) const override { return law_; }
    bool state_independent() const override { return true; }

    Complex exponent(const Vec& xi) const;
    const Triplet& levy_triplet() const { return triplet_; }
    bool closed_form() const { return static_cast<bool>(closed_); }

private:
    struct Table;

    std::string name_;
    Triplet triplet_;
    SymbolFn closed_;
    std::optional<StableLaw> law_;
    std::shared_ptr<const Table> table_;
};

enum class ProcessKind { Levy, StateDependent, SDE };

std::string to_string(ProcessKind k);

// Solution of dX = sigma(X_-) dL for a one-dimensional Lévy driver L.
struct SdeCoefficient {
    std::function<double(double)> sigma;
    double bound = 1.0;  // sup |sigma|
    std::string description;
};

class ProcessSpec {
public:
    static ProcessSpec levy(std::shared_ptr<const LevyFamily> family);
    static ProcessSpec state_dependent(FamilyPtr family);
    static ProcessSpec sde(const ProcessSpec& driver, SdeCoefficient coefficient);

    ProcessKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    int dim() const { return family_->dim(); }
    const CharacteristicsFamily& family() const { return *family_; }
    const FamilyPtr& family_ptr() const { return family_; }

    Complex symbol(const Vec& x, const Vec& xi) const { return family_->symbol(x, xi); }
    double tail(const Vec& x, double r) const { return family_->tail(x, r); }
    double trunc2(const Vec& x, double r) const { return family_->trunc2(x, r); }
    Triplet triplet(const Vec& x) const { return family_->triplet(x); }
    std::optional<StableLaw> stable_law(const Vec& x) const { return family_->stable_law(x); }

    // Levy kind: the triplet. SDE kind: the driver's triplet.
    const LevyFamily& levy_family() const;
    // SDE kind only.
    const ProcessSpec& driver() const;
    double sigma(double x) const;

private:
    ProcessKind kind_ = ProcessKind::Levy;
    std::string name_;
    FamilyPtr family_;
    std::shared_ptr<const ProcessSpec> driver_;
    std::shared_ptr<const SdeCoefficient> coefficient_;
};

}  // namespace levyup
