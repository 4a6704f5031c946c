#pragma once

#include <string>

#include "levyup/process.hpp"

namespace levyup {

// Normalisation of the built-in stable measures: `Symbol` makes the exponent
// exactly |xi|^alpha (symmetric case), `Density` makes nu(dy) = |y|^{-d-alpha} dy.
enum class StableNorm { Symbol, Density };

struct StableParams {
    double alpha = 1.0;
    int dim = 1;
    double skew = 0.0;  // in [-1, 1]; 1 means jumps only upwards
    StableNorm norm = StableNorm::Symbol;
    double drift = 0.0;  // extra drift on top of the strictly stable law
};

// Constant c with |xi|^alpha = int (1 - cos(xi.y)) c |y|^{-d-alpha} dy.
double stable_symbol_constant(int dim, double alpha);

ProcessSpec make_stable(const StableParams& p);
// Measure s^{-3}/(L (log L)^2) ds near 0 (see IteratedLogProfile).
ProcessSpec make_iterated_log();
ProcessSpec make_log_corrected();
ProcessSpec make_atom(double mass = 1.0, double radius = 2.0);
ProcessSpec make_zero(int dim = 1);
// Lévy process for an arbitrary triplet; symbol from quadrature.
ProcessSpec make_levy(const std::string& name, Triplet triplet);

struct VariableOrderParams {
    double base = 1.5;   // order at z = 0
    double slope = 0.4;  // order(z) = base - slope * clamp(z, -1, 1)
};

// Symbol |xi|^{order(z)}.
ProcessSpec make_variable_order(const VariableOrderParams& p = {});

struct StableTypeParams {
    double alpha = 1.5;
    double amplitude = 0.25;  // weight(x) = amplitude (1 + sin x)
};

// Kernel c_alpha (1 - weight(x) e^{-|y|}) |y|^{-1-alpha} dy.
ProcessSpec make_stable_type(const StableTypeParams& p = {});

struct SdeParams {
    double s0 = 1.0;
    double s1 = 0.5;
    double omega = 1.0;  // sigma(x) = s0 + s1 sin(omega x)
};

ProcessSpec make_sde(const ProcessSpec& driver, const SdeParams& p = {});

// Order function of the variable-order model.
double variable_order(const VariableOrderParams& p, double z);

}  // namespace levyup
