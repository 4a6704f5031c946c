#include "levyup/limsup_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "levyup/errors.hpp"
#include "levyup/models.hpp"
#include "levyup/stats.hpp"

namespace levyup {

std::string to_string(TrendLabel l) {
    switch (l) {
        case TrendLabel::TendsZero: return "TendsZero";
        case TrendLabel::Grows: return "Grows";
        case TrendLabel::Flat: return "Flat";
        case TrendLabel::Noisy: return "Noisy";
    }
    return "?";
}

std::vector<double> dyadic_time_grid(int n_min, int n_max) {
    if (n_min < 0 || n_max < n_min) throw PreconditionViolated("need 0 <= n_min <= n_max");
    if (n_max > 20) throw PreconditionViolated("n_max must not exceed 20");
    std::vector<double> g{0.0};
    const double inner = std::ldexp(1.0, -(n_max + 1));
    for (int k = 1; k <= 256; ++k) g.push_back(inner * k / 256.0);
    for (int n = n_max; n >= n_min; --n) {
        const double a = std::ldexp(1.0, -(n + 1)), h = std::ldexp(1.0, -n) / 256.0;
        for (int k = 1; k <= 128; ++k) g.push_back(a + h * k);
    }
    return g;
}

DyadicStats dyadic_limsup_stats(const ProcessSpec& spec, const Vec& x, const Normaliser& norm, int n_min,
                                int n_max, const SimConfig& config) {
    const auto times = dyadic_time_grid(n_min, n_max);
    DyadicStats st;
    std::vector<std::size_t> idx;
    for (int n = n_min; n <= n_max; ++n) {
        const double t = std::ldexp(1.0, -n);
        st.levels.push_back(n);
        st.t.push_back(t);
        idx.push_back(static_cast<std::size_t>(std::lower_bound(times.begin(), times.end(), t) - times.begin()));
    }
    const std::size_t L = idx.size();
    std::vector<std::vector<double>> m(L, std::vector<double>(config.n_paths, 0.0));
    for_each_path(spec, x, times, config, [&](std::size_t i, const PathSample& p) {
        for (std::size_t j = 0; j < L; ++j) {
            const double run = p.runmax[idx[j]];
            const double d = norm(st.t[j], run);
            m[j][i] = run == 0.0 ? 0.0 : run / d;
        }
    });
    st.n_paths = config.n_paths;
    for (std::size_t j = 0; j < L; ++j) {
        st.q10.push_back(quantile(m[j], 0.1));
        st.median.push_back(quantile(m[j], 0.5));
        st.q90.push_back(quantile(m[j], 0.9));
        double s = 0.0;
        for (double v : m[j]) s += std::log(v);
        st.mean_log.push_back(s / m[j].size());
    }
    return st;
}

DyadicStats dyadic_limsup_stats(const ProcessSpec& spec, const Vec& x, const GrowthFunction& f, int n_min,
                                int n_max, const SimConfig& config) {
    return dyadic_limsup_stats(spec, x, [&f](double t, double) { return f(t); }, n_min, n_max, config);
}

TrendVerdict trend_classify(const DyadicStats& s, const TrendThresholds& th) {
    const std::size_t L = s.levels.size();
    if (L < 6) throw PreconditionViolated("trend classification needs at least six levels");
    TrendVerdict v;
    if (s.median.front() == 0.0 && s.median.back() == 0.0) return v;
    const double lo = s.q10.back(), hi = s.q90.back();
    const bool noisy = hi > 0.0 && (lo <= 0.0 || hi / lo > std::pow(10.0, th.noisy_decades));
    std::vector<double> n, y;
    for (std::size_t j = L / 3; j < L; ++j) {
        n.push_back(s.levels[j]);
        y.push_back(std::log2(std::max(s.median[j], 1e-300)));
    }
    v.slope = fit_line(n, y).slope;
    v.ratio = s.median.front() > 0.0 ? s.median.back() / s.median.front() : INFINITY;
    const bool down = v.slope < -th.slope, up = v.slope > th.slope;
    const bool far_down = v.ratio < 1.0 / th.ratio, far_up = v.ratio > th.ratio;
    if (noisy) {
        v.label = TrendLabel::Noisy;
    } else if (down && far_down) {
        v.label = TrendLabel::TendsZero;
    } else if (up && far_up) {
        v.label = TrendLabel::Grows;
    } else {
        v.label = TrendLabel::Flat;
    }
    v.consistent = (v.slope < 0.0) == (v.ratio < 1.0) || v.slope == 0.0;
    return v;
}

std::string to_string(ExampleName e) {
    switch (e) {
        case ExampleName::StableDichotomy: return "StableDichotomy";
        case ExampleName::Main48: return "Main48";
        case ExampleName::VariableOrder: return "VariableOrder";
        case ExampleName::StableType: return "StableType";
        case ExampleName::SdeCauchy: return "SdeCauchy";
        case ExampleName::SqrtTLaw: return "SqrtTLaw";
    }
    return "?";
}

ExampleName example_from_string(const std::string& s) {
    for (ExampleName e : {ExampleName::StableDichotomy, ExampleName::Main48, ExampleName::VariableOrder,
                          ExampleName::StableType, ExampleName::SdeCauchy, ExampleName::SqrtTLaw})
        if (to_string(e) == s) return e;
    throw PreconditionViolated("unknown example '" + s + "'");
}

bool ExampleReport::agree() const {
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const ExampleRow& r) { return r.agree; });
}

namespace {

bool outcomes_agree(const Classification& c, const TrendVerdict& v) {
    switch (c.outcome) {
        case Outcome::Zero: return v.label == TrendLabel::TendsZero;
        case Outcome::Infinity: return v.label == TrendLabel::Grows;
        case Outcome::LowerBound: return v.label != TrendLabel::TendsZero;
        case Outcome::Indeterminate: return v.label == TrendLabel::Flat || v.label == TrendLabel::Noisy;
    }
    return false;
}

struct Study {
    std::string description;
    ProcessSpec spec;
    Vec x;
    GrowthFunction f;
    std::function<Classification()> analytic;
};

ExampleRow run_study(const Study& s, const ExampleSettings& es) {
    SimConfig cfg;
    cfg.n_paths = es.n_paths;
    cfg.seed = es.seed;
    cfg.threads = es.threads;
    cfg.scheme = default_scheme(s.spec);
    ExampleRow row;
    row.description = s.description;
    row.analytic = s.analytic();
    row.stats = dyadic_limsup_stats(s.spec, s.x, s.f, es.n_min, es.n_max, cfg);
    row.empirical = trend_classify(row.stats);
    row.agree = outcomes_agree(row.analytic, row.empirical);
    return row;
}

std::string power_text(double k) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "t^%.4g", k);
    return buf;
}

}  // namespace

ExampleReport reproduce_example(ExampleName name, const ExampleSettings& es) {
    ExampleReport rep;
    rep.name = name;
    std::vector<Study> studies;
    const Vec o{0.0};
    switch (name) {
        case ExampleName::StableDichotomy: {
            const auto cauchy = make_stable({});
            for (double k : {0.8, 1.25}) {
                const auto f = GrowthFunction::power(k);
                studies.push_back({"Cauchy, f=" + power_text(k), cauchy, o, f,
                                   [=] { return classify_levy(cauchy, f); }});
            }
            break;
        }
        case ExampleName::Main48: {
            const auto spec = make_iterated_log();
            const auto f = GrowthFunction::power(0.5);
            studies.push_back({"iterated-log measure, f=t^0.5", spec, o, f, [=] { return classify_levy(spec, f); }});
            break;
        }
        case ExampleName::VariableOrder: {
            const auto spec = make_variable_order();
            const auto up = GrowthFunction::power(0.6);
            const auto down = GrowthFunction::power(0.9);
            studies.push_back({"variable order, f=t^0.6", spec, o, up,
                               [=] { return classify_ltp_upper(spec, o, up); }});
            studies.push_back({"variable order, f=t^0.9", spec, o, down,
                               [=] { return classify_ltp_lower(spec, o, down); }});
            break;
        }
        case ExampleName::StableType: {
            const StableTypeParams p;
            const auto spec = make_stable_type(p);
            const auto up = GrowthFunction::power(1.0 / p.alpha - 0.2);
            const auto down = GrowthFunction::power(1.0 / p.alpha + 0.2);
            studies.push_back({"stable-type, f=" + power_text(1.0 / p.alpha - 0.2), spec, o, up,
                               [=] { return classify_ltp_upper(spec, o, up); }});
            studies.push_back({"stable-type, f=" + power_text(1.0 / p.alpha + 0.2), spec, o, down,
                               [=] { return classify_ltp_lower(spec, o, down); }});
            break;
        }
        case ExampleName::SdeCauchy: {
            const auto driver = make_stable({});
            const auto spec = make_sde(driver);
            const auto f = GrowthFunction::power(0.8);
            studies.push_back({"Cauchy-driven SDE, f=t^0.8", spec, o, f,
                               [=] { return classify_ltp_upper(spec, o, f); }});
            studies.push_back({"Cauchy driver, f=t^0.8", driver, o, f,
                               [=] { return classify_ltp_upper(driver, o, f); }});
            break;
        }
        case ExampleName::SqrtTLaw: {
            const auto cauchy = make_stable({});
            const auto f = GrowthFunction::power(0.5);
            studies.push_back({"Cauchy, f=t^0.5", cauchy, o, f, [=] { return classify_power(cauchy, 0.5); }});
            const auto g = GrowthFunction::power(0.4);
            studies.push_back({"Cauchy, f=t^0.4", cauchy, o, g, [=] { return classify_power(cauchy, 0.4); }});
            break;
        }
    }
    for (const Study& s : studies) {
        ExampleRow row = run_study(s, es);
        if (name == ExampleName::Main48) {
            const double m = row.stats.median.back();
            row.agree = row.agree && row.empirical.label == TrendLabel::Flat && m >= std::sqrt(2.0) / 2.0 &&
                        m <= 2.0 * std::sqrt(2.0);
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

double appendix_series_max(int terms, int grid_points) {
    if (terms < 1 || grid_points < 2) throw PreconditionViolated("appendix check needs terms >= 1 and two points");
    const double lo = std::log(1e-6), hi = std::log(0.999);
    double best = 0.0;
    for (int k = 0; k < grid_points; ++k) {
        const double lt = lo + (hi - lo) * k / (grid_points - 1);
        const double L = -lt;
        double s = 0.0;
        for (int n = terms; n >= 1; --n) s += std::exp(lt / n) / (static_cast<double>(n) * n);
        best = std::max(best, s * L);
    }
    return best;
}

}  // namespace levyup
