#include "levyup/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "levyup/errors.hpp"
#include "levyup/levy_core.hpp"

namespace levyup {

namespace {

constexpr double kPi = std::numbers::pi;

// Standard strictly stable variable with exponent |xi|^a (1 - i b tan(pi a/2) sgn xi).
double stable_standard(double a, double b, Rng& rng) {
    const double v = kPi * (rng.uniform() - 0.5);
    if (a == 1.0) return std::tan(v);
    const double w = rng.exponential();
    const double tn = b * std::tan(0.5 * kPi * a);
    const double shift = std::atan(tn) / a;
    const double scale = std::pow(1.0 + tn * tn, 0.5 / a);
    const double av = a * (v + shift);
    return scale * std::sin(av) / std::pow(std::cos(v), 1.0 / a) *
           std::pow(std::cos(v - av) / w, (1.0 - a) / a);
}

// Positive stable variable with Laplace transform exp(-lambda^a), 0 < a < 1.
double positive_stable(double a, Rng& rng) {
    const double u = kPi * rng.uniform();
    const double w = rng.exponential();
    return std::sin(a * u) / std::pow(std::sin(u), 1.0 / a) * std::pow(std::sin((1.0 - a) * u) / w, (1.0 - a) / a);
}

// Lower-triangular square root of a symmetric positive semidefinite d x d matrix.
std::array<double, 9> cholesky(const std::array<double, 9>& m, int d) {
    std::array<double, 9> l{};
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = m[i * 3 + j];
            for (int k = 0; k < j; ++k) s -= l[i * 3 + k] * l[j * 3 + k];
            if (i == j) {
                l[i * 3 + i] = s > 0.0 ? std::sqrt(s) : 0.0;
            } else {
                l[i * 3 + j] = l[j * 3 + j] > 0.0 ? s / l[j * 3 + j] : 0.0;
            }
        }
    }
    return l;
}

bool same_step(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(a, b); }

// Precomputed pieces of one compound-Poisson + Gaussian increment.
struct IncrementPlan {
    Vec drift = Vec(1);
    std::array<double, 9> root{};
    bool gaussian = false;
    double rate = 0.0;
    double delta = 0.0;
    LevyMeasure measure;

    IncrementPlan(const Triplet& tr, double dt, double delta_in) : delta(delta_in), measure(tr.measure) {
        const int d = tr.dim();
        drift = tr.drift * dt;
        if (measure.is_zero()) {
            rate = 0.0;
        } else {
            rate = measure.tail(delta) * dt;
            if (rate > 1e4) throw RateOverflow("jump rate G(delta) dt exceeds 1e4; use a smaller dt or larger delta");
            if (delta < 1.0) drift -= measure.mean_jump(delta, 1.0) * dt;
        }
        std::array<double, 9> cov{};
        for (int i = 0; i < 9; ++i) cov[i] = tr.gauss[i] * dt;
        const double small = measure.is_zero() ? 0.0 : measure.trunc2(delta) * dt / d;
        for (int i = 0; i < d; ++i) cov[i * 3 + i] += small;
        for (double c : cov)
            if (c != 0.0) gaussian = true;
        if (gaussian) root = cholesky(cov, d);
    }

    Vec continuous(Rng& rng) const {
        Vec out = drift;
        if (!gaussian) return out;
        const int d = drift.dim();
        double z[3] = {0.0, 0.0, 0.0};
        for (int i = 0; i < d; ++i) z[i] = rng.normal();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j <= i; ++j) out[i] += root[i * 3 + j] * z[j];
        return out;
    }

    std::uint64_t jumps(Rng& rng) const { return rate > 0.0 ? rng.poisson(rate) : 0; }
};

// Advances the state by one step and raises `runmax` at the pre-jump and
// post-jump points.
class Stepper {
public:
    Stepper(const ProcessSpec& spec, const SimConfig& cfg) : spec_(spec), cfg_(cfg) {
        cfg.validate(spec);
        if (spec.kind() == ProcessKind::Levy) law_ = spec.stable_law(Vec(spec.dim()));
        if (spec.kind() == ProcessKind::SDE) driver_law_ = spec.driver().stable_law(Vec(1));
    }

    void prepare(const std::vector<double>& steps) {
        if (cfg_.scheme == Scheme::ExactStable || cfg_.scheme == Scheme::FreezeSymbol) return;
        if (cfg_.scheme == Scheme::EulerSDE && driver_law_ && cfg_.prefer_exact) return;
        const Triplet tr = cfg_.scheme == Scheme::EulerSDE ? spec_.driver().triplet(Vec(1))
                                                            : spec_.triplet(Vec(spec_.dim()));
        for (double h : steps) {
            bool have = false;
            for (const auto& p : plans_)
                if (same_step(p.first, h)) have = true;
            if (!have) plans_.emplace_back(h, IncrementPlan(tr, h, cfg_.delta_for(h)));
        }
    }

    void step(Vec& X, double h, Rng& rng, const Vec& start, double& runmax) const {
        switch (cfg_.scheme) {
            case Scheme::ExactStable:
                X += stable_increment(*law_, h, rng);
                break;
            case Scheme::CompoundPoissonGauss:
                if (const IncrementPlan* p = cached(h)) {
                    apply(*p, X, 1.0, rng, start, runmax);
                } else {
                    apply(IncrementPlan(spec_.triplet(X), h, cfg_.delta_for(h)), X, 1.0, rng, start, runmax);
                }
                break;
            case Scheme::FreezeSymbol: {
                const auto law = cfg_.prefer_exact ? spec_.stable_law(X) : std::nullopt;
                if (law) {
                    X += stable_increment(*law, h, rng);
                } else {
                    apply(IncrementPlan(spec_.triplet(X), h, cfg_.delta_for(h)), X, 1.0, rng, start, runmax);
                }
                break;
            }
            case Scheme::EulerSDE: {
                const double s = spec_.sigma(X[0]);
                if (driver_law_ && cfg_.prefer_exact) {
                    X += stable_increment(*driver_law_, h, rng) * s;
                } else if (const IncrementPlan* p = cached(h)) {
                    apply(*p, X, s, rng, start, runmax);
                } else {
                    apply(IncrementPlan(spec_.driver().triplet(Vec(1)), h, cfg_.delta_for(h)), X, s, rng, start,
                          runmax);
                }
                break;
            }
        }
        runmax = std::max(runmax, (X - start).norm());
    }

private:
    const IncrementPlan* cached(double h) const {
        for (const auto& p : plans_)
            if (same_step(p.first, h)) return &p.second;
        return nullptr;
    }

    static void apply(const IncrementPlan& p, Vec& X, double scale, Rng& rng, const Vec& start, double& runmax) {
        X += p.continuous(rng) * scale;
        const std::uint64_t n = p.jumps(rng);
        for (std::uint64_t k = 0; k < n; ++k) {
            runmax = std::max(runmax, (X - start).norm());
            X += p.measure.sample_jump_above(p.delta, rng) * scale;
            runmax = std::max(runmax, (X - start).norm());
        }
    }

    const ProcessSpec& spec_;
    SimConfig cfg_;
    std::optional<StableLaw> law_;
    std::optional<StableLaw> driver_law_;
    std::vector<std::pair<double, IncrementPlan>> plans_;
};

std::vector<double> steps_of(const std::vector<double>& times) {
    std::vector<double> h;
    for (std::size_t k = 1; k < times.size(); ++k) {
        const double d = times[k] - times[k - 1];
        if (std::none_of(h.begin(), h.end(), [&](double e) { return same_step(e, d); })) h.push_back(d);
        if (h.size() > 64) break;
    }
    return h;
}

std::size_t index_of(const std::vector<double>& times, double t) {
    auto it = std::lower_bound(times.begin(), times.end(), t - 1e-12 * std::max(1.0, t));
    return static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - times.begin(), times.size() - 1));
}

PathSample run_path(const Stepper& stepper, const Vec& x, const std::vector<double>& times,
                    const SimConfig& cfg, std::uint64_t idx) {
    PathSample p;
    p.start = x;
    p.times = times;
    p.values.reserve(times.size());
    p.runmax.reserve(times.size());
    Rng rng(cfg.seed, idx);
    Vec X = x;
    double m = 0.0;
    p.values.push_back(X);
    p.runmax.push_back(0.0);
    for (std::size_t k = 1; k < times.size(); ++k) {
        stepper.step(X, times[k] - times[k - 1], rng, x, m);
        p.values.push_back(X);
        p.runmax.push_back(m);
    }
    return p;
}

}  // namespace

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::CompoundPoissonGauss: return "CompoundPoissonGauss";
        case Scheme::ExactStable: return "ExactStable";
        case Scheme::EulerSDE: return "EulerSDE";
        case Scheme::FreezeSymbol: return "FreezeSymbol";
    }
    return "?";
}

Scheme scheme_from_string(const std::string& s) {
    for (Scheme v : {Scheme::CompoundPoissonGauss, Scheme::ExactStable, Scheme::EulerSDE, Scheme::FreezeSymbol})
        if (to_string(v) == s) return v;
    throw PreconditionViolated("unknown scheme '" + s + "'");
}

Scheme default_scheme(const ProcessSpec& spec) {
    switch (spec.kind()) {
        case ProcessKind::Levy:
            return spec.stable_law(Vec(spec.dim())) ? Scheme::ExactStable : Scheme::CompoundPoissonGauss;
        case ProcessKind::StateDependent: return Scheme::FreezeSymbol;
        case ProcessKind::SDE: return Scheme::EulerSDE;
    }
    return Scheme::FreezeSymbol;
}

double SimConfig::delta_for(double step) const {
    return delta_jump > 0.0 ? delta_jump : std::clamp(std::sqrt(step), 1e-4, 0.1);
}

void SimConfig::validate(const ProcessSpec& spec) const {
    if (!(dt > 0.0)) throw PreconditionViolated("dt must be positive");
    if (delta_jump < 0.0 || delta_jump > 1.0) throw PreconditionViolated("delta_jump must lie in (0,1]");
    switch (scheme) {
        case Scheme::ExactStable:
            if (spec.kind() != ProcessKind::Levy || !spec.stable_law(Vec(spec.dim())))
                throw PreconditionViolated("ExactStable needs a Lévy process with a stable law");
            break;
        case Scheme::CompoundPoissonGauss:
            if (spec.kind() != ProcessKind::Levy)
                throw PreconditionViolated("CompoundPoissonGauss needs a Lévy process");
            break;
        case Scheme::EulerSDE:
            if (spec.kind() != ProcessKind::SDE) throw PreconditionViolated("EulerSDE needs an SDE model");
            break;
        case Scheme::FreezeSymbol:
            break;
    }
}

Vec stable_increment(const StableLaw& law, double dt, Rng& rng) {
    Vec out(law.dim);
    if (law.scale == 0.0) {
        if (law.dim == 1) out[0] = law.shift * dt;
        return out;
    }
    const double s = law.scale * std::pow(dt, 1.0 / law.alpha);
    if (law.dim == 1) {
        out[0] = s * stable_standard(law.alpha, law.skew, rng) + law.shift * dt;
        return out;
    }
    const double a = law.alpha < 2.0 ? positive_stable(0.5 * law.alpha, rng) : 1.0;
    const double k = s * std::sqrt(2.0 * a);
    for (int i = 0; i < law.dim; ++i) out[i] = k * rng.normal();
    return out;
}

Vec sample_increment(const Triplet& triplet, double dt, double delta, Rng& rng) {
    if (!(dt > 0.0) || !(delta > 0.0 && delta <= 1.0))
        throw PreconditionViolated("sample_increment needs dt > 0 and delta in (0,1]");
    const IncrementPlan p(triplet, dt, delta);
    Vec X = p.continuous(rng);
    const std::uint64_t n = p.jumps(rng);
    for (std::uint64_t k = 0; k < n; ++k) X += p.measure.sample_jump_above(delta, rng);
    return X;
}

std::vector<double> make_grid(double T, double dt, const std::vector<double>& extra) {
    if (!(T >= 0.0) || !(dt > 0.0)) throw PreconditionViolated("grid needs T >= 0 and dt > 0");
    const auto n = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
    std::vector<double> g;
    g.reserve(n + 1 + extra.size());
    for (std::size_t k = 0; k < n; ++k) g.push_back(k * dt);
    g.push_back(T);
    for (double t : extra)
        if (t >= 0.0 && t <= T) g.push_back(t);
    std::sort(g.begin(), g.end());
    std::vector<double> out;
    for (double t : g)
        if (out.empty() || t - out.back() > 1e-12 * std::max(1.0, t)) out.push_back(t);
    return out;
}

void parallel_paths(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    unsigned k = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    k = static_cast<unsigned>(std::min<std::size_t>(k, std::max<std::size_t>(n, 1)));
    if (k <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(k);
    for (unsigned w = 0; w < k; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += k) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

PathSample simulate_on_grid(const ProcessSpec& spec, const Vec& x, const std::vector<double>& times,
                            const SimConfig& config, std::uint64_t path_index) {
    if (times.empty() || times.front() != 0.0) throw PreconditionViolated("time grid must start at 0");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1])) throw PreconditionViolated("time grid must be strictly increasing");
    Stepper st(spec, config);
    st.prepare(steps_of(times));
    return run_path(st, x, times, config, path_index);
}

PathSample simulate_path(const ProcessSpec& spec, const Vec& x, double T, const SimConfig& config,
                         std::uint64_t path_index) {
    return simulate_on_grid(spec, x, make_grid(T, config.dt), config, path_index);
}

void for_each_path(const ProcessSpec& spec, const Vec& x, const std::vector<double>& times,
                   const SimConfig& config, const std::function<void(std::size_t, const PathSample&)>& use) {
    if (times.empty() || times.front() != 0.0) throw PreconditionViolated("time grid must start at 0");
    Stepper st(spec, config);
    st.prepare(steps_of(times));
    parallel_paths(config.n_paths, config.threads,
                   [&](std::size_t i) { use(i, run_path(st, x, times, config, i)); });
}

std::vector<McEstimate> estimate_exit_survival(const ProcessSpec& spec, const Vec& x, double r,
                                               const std::vector<double>& t_grid, const SimConfig& config) {
    if (!(r > 0.0)) throw PreconditionViolated("exit radius must be positive");
    if (t_grid.empty()) return {};
    const double T = *std::max_element(t_grid.begin(), t_grid.end());
    const auto times = make_grid(T, config.dt, t_grid);
    std::vector<std::size_t> idx;
    for (double t : t_grid) idx.push_back(index_of(times, t));
    std::vector<std::vector<char>> alive(config.n_paths, std::vector<char>(t_grid.size(), 0));
    for_each_path(spec, x, times, config, [&](std::size_t i, const PathSample& p) {
        for (std::size_t j = 0; j < idx.size(); ++j) alive[i][j] = p.runmax[idx[j]] < r;
    });
    std::vector<McEstimate> out;
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
        std::size_t hits = 0;
        for (const auto& a : alive) hits += a[j];
        out.push_back(proportion_estimate(hits, config.n_paths));
    }
    return out;
}

std::vector<McEstimate> mc_event_probabilities(const ProcessSpec& spec, const Vec& x,
                                               const std::vector<Event>& events, const SimConfig& config) {
    if (events.empty()) return {};
    std::vector<double> ts;
    for (const Event& e : events) {
        if (!(e.t > 0.0) || !(e.r > 0.0)) throw PreconditionViolated("event parameters must be positive");
        ts.push_back(e.t);
    }
    const double T = *std::max_element(ts.begin(), ts.end());
    const auto times = make_grid(T, config.dt, ts);
    std::vector<std::size_t> idx;
    for (double t : ts) idx.push_back(index_of(times, t));
    std::vector<std::vector<char>> hit(config.n_paths, std::vector<char>(events.size(), 0));
    for_each_path(spec, x, times, config, [&](std::size_t i, const PathSample& p) {
        for (std::size_t j = 0; j < events.size(); ++j) {
            const double v = events[j].kind == EventKind::RunmaxAtLeast ? p.runmax[idx[j]]
                                                                       : (p.values[idx[j]] - x).norm();
            hit[i][j] = v >= events[j].r;
        }
    });
    std::vector<McEstimate> out;
    for (std::size_t j = 0; j < events.size(); ++j) {
        std::size_t n = 0;
        for (const auto& h : hit) n += h[j];
        out.push_back(proportion_estimate(n, config.n_paths));
    }
    return out;
}

McEstimate mc_event_probability(const ProcessSpec& spec, const Vec& x, const Event& event, const SimConfig& config) {
    return mc_event_probabilities(spec, x, {event}, config).front();
}

std::vector<double> simulate_exit_times(const ProcessSpec& spec, const Vec& x, double r, double cap,
                                        const SimConfig& config) {
    if (!(r > 0.0) || !(cap > 0.0)) throw PreconditionViolated("exit times need r > 0 and cap > 0");
    Stepper st(spec, config);
    st.prepare({config.dt});
    std::vector<double> out(config.n_paths, cap);
    parallel_paths(config.n_paths, config.threads, [&](std::size_t i) {
        Rng rng(config.seed, i);
        Vec X = x;
        double m = 0.0;
        const auto n = static_cast<std::size_t>(std::ceil(cap / config.dt - 1e-9));
        for (std::size_t k = 1; k <= n; ++k) {
            st.step(X, config.dt, rng, x, m);
            if (m >= r) {
                out[i] = std::min(cap, k * config.dt);
                return;
            }
        }
    });
    return out;
}

std::string to_string(BoundKind b) {
    switch (b) {
        case BoundKind::MaxIneq: return "MaxIneq";
        case BoundKind::ExitSurvival: return "ExitSurvival";
        case BoundKind::LowerMaxIneq: return "LowerMaxIneq";
        case BoundKind::ExpectedExit: return "ExpectedExit";
    }
    return "?";
}

BoundKind bound_from_string(const std::string& s) {
    for (BoundKind b : {BoundKind::MaxIneq, BoundKind::ExitSurvival, BoundKind::LowerMaxIneq, BoundKind::ExpectedExit})
        if (to_string(b) == s) return b;
    throw PreconditionViolated("unknown bound '" + s + "'");
}

std::vector<BoundRow> verify_bound_table(const ProcessSpec& spec, const Vec& x, BoundKind kind,
                                         const std::vector<std::pair<double, double>>& grid,
                                         const SimConfig& config, const BoundSettings& settings) {
    std::vector<BoundRow> rows;
    if (grid.empty()) return rows;

    if (kind == BoundKind::ExpectedExit) {
        std::vector<double> radii;
        for (const auto& [t, r] : grid)
            if (std::find(radii.begin(), radii.end(), r) == radii.end()) radii.push_back(r);
        for (double r : radii) {
            const ExitBounds b = exit_bounds(spec, x, 0.0, r, settings.c_lower);
            double cap = settings.exit_cap;
            if (!(cap > 0.0)) cap = std::isfinite(b.expected_exit) ? std::min(10.0, 20.0 * b.expected_exit) : 10.0;
            const auto times = simulate_exit_times(spec, x, r, cap, config);
            const McEstimate m = mean_estimate(times);
            BoundRow row;
            row.t = cap;
            row.r = r;
            row.empirical = m.p_hat;
            row.ci = m.ci_half_width;
            row.bound = b.expected_exit;
            row.margin = row.bound - row.empirical;
            row.violated = row.empirical > row.bound + 3.0 * row.ci;
            rows.push_back(row);
        }
        return rows;
    }

    std::vector<Event> events;
    for (const auto& [t, r] : grid) {
        events.push_back({EventKind::RunmaxAtLeast, t, r});
    }
    const auto est = mc_event_probabilities(spec, x, events, config);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const auto [t, r] = grid[j];
        const ExitBounds b = exit_bounds(spec, x, t, r, settings.c_lower);
        BoundRow row;
        row.t = t;
        row.r = r;
        row.ci = est[j].ci_half_width;
        switch (kind) {
            case BoundKind::ExitSurvival:
                row.empirical = 1.0 - est[j].p_hat;
                row.bound = b.new_bound;
                row.margin = row.bound - row.empirical;
                row.violated = row.empirical > row.bound + 3.0 * row.ci;
                break;
            case BoundKind::MaxIneq:
                row.empirical = est[j].p_hat;
                row.bound = std::min(1.0, settings.c_max * b.schilling);
                row.margin = row.bound - row.empirical;
                row.violated = row.empirical > row.bound + 3.0 * row.ci;
                break;
            case BoundKind::LowerMaxIneq:
                row.empirical = est[j].p_hat;
                row.bound = b.lower;
                row.margin = row.empirical - row.bound;
                row.applicable = row.empirical <= settings.c_lower;
                row.violated = row.applicable && row.empirical < row.bound - 3.0 * row.ci;
                break;
            case BoundKind::ExpectedExit:
                break;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace levyup
