#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "levyup/rng.hpp"
#include "levyup/vec.hpp"

namespace levyup {

struct RadialAtom {
    double radius;
    double mass;
};

// Distribution of the jump size |y| under a Lévy measure. All quantities
// refer to the full measure, i.e. both half-lines in d = 1.
class RadialProfile {
public:
    virtual ~RadialProfile() = default;

    virtual std::string name() const = 0;
    // Mass of {|y| > r}.
    virtual double tail(double r) const = 0;
    // Integral of |y|^2 over {|y| <= r}.
    virtual double trunc2(double r) const = 0;

    virtual bool has_density() const { return false; }
    // Radial density at s; only meaningful when has_density().
    virtual double density(double /*s*/) const { return 0.0; }
    virtual std::vector<RadialAtom> atoms() const { return {}; }
    virtual double support_max() const { return std::numeric_limits<double>::infinity(); }

    // Integral of |y| over {a < |y| <= b}.
    virtual double moment1(double a, double b) const;
    // Draws |y| conditioned on |y| > delta. Requires tail(delta) > 0.
    virtual double sample_above(double delta, Rng& rng) const = 0;
};

using ProfilePtr = std::shared_ptr<const RadialProfile>;

// C s^{-1-alpha} ds on (0, inf).
class PowerProfile final : public RadialProfile {
public:
    PowerProfile(double alpha, double c);
    std::string name() const override { return "power"; }
    double tail(double r) const override;
    double trunc2(double r) const override;
    bool has_density() const override { return true; }
    double density(double s) const override;
    double moment1(double a, double b) const override;
    double sample_above(double delta, Rng& rng) const override;
    double alpha() const { return alpha_; }
    double constant() const { return c_; }

private:
    double alpha_, c_;
};

// C (1 - b e^{-s}) s^{-1-alpha} ds on (0, inf), b in [0, 1).
class TemperedProfile final : public RadialProfile {
public:
    TemperedProfile(double alpha, double c, double b);
    std::string name() const override { return "tempered"; }
    double tail(double r) const override;
    double trunc2(double r) const override;
    bool has_density() const override { return true; }
    double density(double s) const override;
    double sample_above(double delta, Rng& rng) const override;

private:
    double alpha_, c_, b_;
};

// Density s^{-3} / (L (log L)^2), L = log(1/s), on (0, e^{-e}). Its truncated
// second moment is 1/log log(1/r): the small jumps are barely square
// integrable and the tail dominates nothing.
class IteratedLogProfile final : public RadialProfile {
public:
    std::string name() const override { return "iterated-log"; }
    double tail(double r) const override;
    double trunc2(double r) const override;
    bool has_density() const override { return true; }
    double density(double s) const override;
    double support_max() const override;
    double sample_above(double delta, Rng& rng) const override;
};

// Density 2 / (s log(e/s)^2) on (0, 1). Total mass 2, every positive moment
// finite.
class LogCorrectedProfile final : public RadialProfile {
public:
    std::string name() const override { return "log-corrected"; }
    double tail(double r) const override;
    double trunc2(double r) const override;
    bool has_density() const override { return true; }
    double density(double s) const override;
    double support_max() const override { return 1.0; }
    double sample_above(double delta, Rng& rng) const override;
};

class AtomProfile final : public RadialProfile {
public:
    AtomProfile(double mass, double radius);
    std::string name() const override { return "atom"; }
    double tail(double r) const override;
    double trunc2(double r) const override;
    std::vector<RadialAtom> atoms() const override { return {{radius_, mass_}}; }
    double support_max() const override { return radius_; }
    double moment1(double a, double b) const override;
    double sample_above(double, Rng&) const override { return radius_; }

private:
    double mass_, radius_;
};

class ZeroProfile final : public RadialProfile {
public:
    std::string name() const override { return "zero"; }
    double tail(double) const override { return 0.0; }
    double trunc2(double) const override { return 0.0; }
    double support_max() const override { return 0.0; }
    double moment1(double, double) const override { return 0.0; }
    double sample_above(double, Rng&) const override { return 0.0; }
};

// Image of a profile under y -> factor * y.
class ScaledProfile final : public RadialProfile {
public:
    ScaledProfile(ProfilePtr base, double factor);
    std::string name() const override { return "scaled-" + base_->name(); }
    double tail(double r) const override { return base_->tail(r / k_); }
    double trunc2(double r) const override { return k_ * k_ * base_->trunc2(r / k_); }
    bool has_density() const override { return base_->has_density(); }
    double density(double s) const override { return base_->density(s / k_) / k_; }
    std::vector<RadialAtom> atoms() const override;
    double support_max() const override { return k_ * base_->support_max(); }
    double moment1(double a, double b) const override { return k_ * base_->moment1(a / k_, b / k_); }
    double sample_above(double delta, Rng& rng) const override {
        return k_ * base_->sample_above(delta / k_, rng);
    }

private:
    ProfilePtr base_;
    double k_;
};

// Lévy measure on R^d as a radial profile times a direction law. In d = 1 the
// direction is +1 with probability p_plus; in d > 1 it is uniform on the sphere.
class LevyMeasure {
public:
    LevyMeasure();
    explicit LevyMeasure(ProfilePtr radial, int dim = 1, double p_plus = 0.5);

    double tail(double r) const { return radial_->tail(r); }
    double trunc2(double r) const { return radial_->trunc2(r); }
    int dim() const { return dim_; }
    double p_plus() const { return p_plus_; }
    bool symmetric() const { return dim_ > 1 || p_plus_ == 0.5; }
    bool is_zero() const;
    const RadialProfile& radial() const { return *radial_; }
    const ProfilePtr& radial_ptr() const { return radial_; }

    // Integral of y over {a < |y| <= b}.
    Vec mean_jump(double a, double b) const;
    Vec sample_jump_above(double delta, Rng& rng) const;

    // Checks monotonicity, integrability and density/tail consistency on a
    // fixed grid. Throws InvalidModel.
    void validate() const;

private:
    ProfilePtr radial_;
    int dim_;
    double p_plus_;
};

}  // namespace levyup
