#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "levyup/criteria.hpp"
#include "levyup/process.hpp"
#include "levyup/rng.hpp"
#include "levyup/stats.hpp"

namespace levyup {

enum class Scheme { CompoundPoissonGauss, ExactStable, EulerSDE, FreezeSymbol };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);
// ExactStable when a stable law is available, otherwise the natural scheme of the kind.
Scheme default_scheme(const ProcessSpec& spec);

struct SimConfig {
    double dt = 1e-3;
    double delta_jump = 0.0;  // 0: clamp(sqrt(dt), 1e-4, 0.1)
    std::size_t n_paths = 1000;
    std::uint64_t seed = 1;
    Scheme scheme = Scheme::CompoundPoissonGauss;
    bool prefer_exact = true;  // use stable draws inside FreezeSymbol / EulerSDE when possible
    unsigned threads = 0;      // 0: hardware concurrency

    double delta_for(double step) const;
    void validate(const ProcessSpec& spec) const;
};

struct PathSample {
    std::vector<double> times;
    std::vector<Vec> values;
    Vec start = Vec(1);
    std::vector<double> runmax;  // includes the pre-jump points inside each step
};

// One draw of X_dt - X_0 for a strictly stable law.
Vec stable_increment(const StableLaw& law, double dt, Rng& rng);

// Compound Poisson jumps above delta plus a Gaussian surrogate for the rest.
Vec sample_increment(const Triplet& triplet, double dt, double delta, Rng& rng);

// Path on an explicit grid starting at 0.
PathSample simulate_on_grid(const ProcessSpec& spec, const Vec& x, const std::vector<double>& times,
                            const SimConfig& config, std::uint64_t path_index);
// Path on the uniform grid of step config.dt over [0, T].
PathSample simulate_path(const ProcessSpec& spec, const Vec& x, double T, const SimConfig& config,
                         std::uint64_t path_index = 0);

// Simulates config.n_paths paths on one grid; use(i, path) may run concurrently.
void for_each_path(const ProcessSpec& spec, const Vec& x, const std::vector<double>& times,
                   const SimConfig& config, const std::function<void(std::size_t, const PathSample&)>& use);

// Uniform grid of step dt on [0, T] merged with the extra times.
std::vector<double> make_grid(double T, double dt, const std::vector<double>& extra = {});

// Runs body(i) for i in [0, n) over the configured number of threads.
void parallel_paths(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

// P(tau_r >= t) = P(runmax(t) < r) for every t of the grid.
std::vector<McEstimate> estimate_exit_survival(const ProcessSpec& spec, const Vec& x, double r,
                                               const std::vector<double>& t_grid, const SimConfig& config);

enum class EventKind { RunmaxAtLeast, AbsAtLeast };

struct Event {
    EventKind kind = EventKind::AbsAtLeast;
    double t = 0.0;
    double r = 0.0;
};

McEstimate mc_event_probability(const ProcessSpec& spec, const Vec& x, const Event& event,
                                const SimConfig& config);
// All events estimated from one set of paths.
std::vector<McEstimate> mc_event_probabilities(const ProcessSpec& spec, const Vec& x,
                                               const std::vector<Event>& events, const SimConfig& config);

// First time runmax reaches r, censored at cap.
std::vector<double> simulate_exit_times(const ProcessSpec& spec, const Vec& x, double r, double cap,
                                        const SimConfig& config);

enum class BoundKind { MaxIneq, ExitSurvival, LowerMaxIneq, ExpectedExit };

std::string to_string(BoundKind b);
BoundKind bound_from_string(const std::string& s);

struct BoundSettings {
    double c_max = 1.0;    // numeric stand-in for the absolute constant of MaxIneq
    double c_lower = 0.5;  // c in the lower maximal inequality
    double exit_cap = 0.0; // 0: 20 / G(x, 2r), at most 10
};

struct BoundRow {
    double t = 0.0;
    double r = 0.0;
    double empirical = 0.0;
    double ci = 0.0;
    double bound = 0.0;
    double margin = 0.0;  // distance to the bound in the admissible direction
    bool applicable = true;
    bool violated = false;
};

std::vector<BoundRow> verify_bound_table(const ProcessSpec& spec, const Vec& x, BoundKind kind,
                                         const std::vector<std::pair<double, double>>& grid,
                                         const SimConfig& config, const BoundSettings& settings = {});

}  // namespace levyup
