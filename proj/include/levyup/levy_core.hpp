#pragma once

#include <string>
#include <vector>

#include "levyup/levy_measure.hpp"
#include "levyup/process.hpp"
#include "levyup/vec.hpp"

namespace levyup {

enum class Verdict { Holds, Fails, Indeterminate };

std::string to_string(Verdict v);

struct ConditionReport {
    Verdict verdict = Verdict::Indeterminate;
    double witness = 0.0;
    std::vector<double> grid;
    std::vector<double> values;
    std::string note;
};

struct Concentration {
    double G = 0.0;  // tail mass nu(|y| > r)
    double K = 0.0;  // trunc2(r) / r^2
    double h = 0.0;  // K + G
    double I = 0.0;  // r^2 h
};

Concentration concentration(const LevyMeasure& nu, double r);
Concentration concentration(const ProcessSpec& spec, const Vec& x, double r);

// Lévy-Khintchine exponent of a triplet, evaluated by quadrature.
Complex eval_exponent(const Triplet& triplet, const Vec& xi);

struct GridOptions {
    int directions = 32;       // frequency directions in d > 1
    int radii = 64;            // log-spaced frequency radii
    double inner_ratio = 1e-4; // smallest radius relative to the outer one
    int z_points = 17;         // points across the ball in d = 1
    int refine_steps = 24;     // golden-section steps near the arg max
};

// sup over |xi| <= r of Re q(x, xi).
double psi_star(const ProcessSpec& spec, const Vec& x, double r, const GridOptions& opt = {});

enum class ExtremumMode {
    SupSup,     // sup_z sup_xi Re q
    SupSupAbs,  // sup_z sup_xi |q|
    InfSup,     // inf_z sup_xi |q|
    InfSupRe,   // inf_z sup_xi Re q
    SupInfRe,   // sup_xi inf_z Re q
};

std::string to_string(ExtremumMode m);

// Extremum of the symbol over z in the closed ball B(x, ball_radius) and
// |xi| <= xi_radius.
double symbol_extremum(const ProcessSpec& spec, const Vec& x, double ball_radius,
                       double xi_radius, ExtremumMode mode, const GridOptions& opt = {});

// Log-spaced frequency magnitudes 1e-4 .. 1e6.
std::vector<double> default_xi_grid(int per_decade = 6);

// |Im q| <= C Re q over the ball and the frequency grid (both signs/directions).
ConditionReport sector_check(const ProcessSpec& spec, const Vec& center, double radius,
                             const std::vector<double>& xi_grid, const GridOptions& opt = {});

// Largest |q(x, 2 xi)| - 4 |q(x, xi)| over the given points (should be <= 0).
double doubling_excess(const ProcessSpec& spec, const std::vector<Vec>& xs,
                       const std::vector<double>& xi_magnitudes);

// Smallest c with h(r)/c <= psi*(1/r) <= c h(r) on the grid.
double fit_h_psi_constant(const ProcessSpec& spec, const Vec& x, const std::vector<double>& r_grid,
                          const GridOptions& opt = {});

// Deterministic points of the closed ball B(x, radius) used for z-extrema.
std::vector<Vec> ball_points(const Vec& x, double radius, const GridOptions& opt = {});
// Deterministic unit directions in R^d (one direction in d = 1).
std::vector<Vec> unit_directions(int dim, int count);

}  // namespace levyup
