#include "levyup/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "levyup/models.hpp"

namespace levyup {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

struct Reader {
    int line;
    std::string key;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line, key, what); }

    double real(const std::string& s) const {
        double v = 0.0;
        auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc() || r.ptr != s.data() + s.size()) fail("expected a number, got '" + s + "'");
        return v;
    }
    template <class Int>
    Int integer(const std::string& s) const {
        Int v = 0;
        auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc() || r.ptr != s.data() + s.size()) fail("expected an integer, got '" + s + "'");
        return v;
    }
    bool boolean(const std::string& s) const {
        if (s == "true" || s == "1") return true;
        if (s == "false" || s == "0") return false;
        fail("expected true or false, got '" + s + "'");
    }
    std::vector<double> list(const std::string& s) const {
        std::vector<double> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(real(trim(item)));
        if (out.empty()) fail("expected a comma-separated list");
        return out;
    }
};

struct Field {
    const char* section;
    const char* key;
    std::function<void(RunConfig&, const std::string&, const Reader&)> read;
    std::function<std::string(const RunConfig&)> write;
};

#define REAL(sec, name, member)                                                              \
    Field{sec, name, [](RunConfig& c, const std::string& v, const Reader& r) { c.member = r.real(v); }, \
          [](const RunConfig& c) { return fmt(c.member); }}
#define INT(sec, name, member)                                                                  \
    Field{sec, name,                                                                            \
          [](RunConfig& c, const std::string& v, const Reader& r) {                             \
              c.member = r.integer<decltype(c.member)>(v);                                      \
          },                                                                                    \
          [](const RunConfig& c) { return std::to_string(c.member); }}
#define TEXT(sec, name, member)                                                                  \
    Field{sec, name, [](RunConfig& c, const std::string& v, const Reader&) { c.member = v; }, \
          [](const RunConfig& c) { return c.member; }}
#define FLAG(sec, name, member)                                                                    \
    Field{sec, name, [](RunConfig& c, const std::string& v, const Reader& r) { c.member = r.boolean(v); }, \
          [](const RunConfig& c) { return std::string(c.member ? "true" : "false"); }}
#define LIST(sec, name, member)                                                                 \
    Field{sec, name, [](RunConfig& c, const std::string& v, const Reader& r) { c.member = r.list(v); }, \
          [](const RunConfig& c) {                                                              \
              std::string s;                                                                    \
              for (double x : c.member) s += (s.empty() ? "" : ", ") + fmt(x);                  \
              return s;                                                                         \
          }}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        TEXT("process", "kind", process.kind),
        REAL("process", "alpha", process.alpha),
        INT("process", "d", process.d),
        REAL("process", "skew", process.skew),
        TEXT("process", "norm", process.norm),
        REAL("process", "drift", process.drift),
        REAL("process", "mass", process.mass),
        REAL("process", "radius", process.radius),
        REAL("process", "order_base", process.order_base),
        REAL("process", "order_slope", process.order_slope),
        REAL("process", "amplitude", process.amplitude),
        REAL("process", "sigma0", process.sigma0),
        REAL("process", "sigma1", process.sigma1),
        REAL("process", "omega", process.omega),
        REAL("process", "driver_alpha", process.driver_alpha),
        REAL("process", "x", process.x),
        TEXT("growth", "form", growth.form),
        REAL("growth", "kappa", growth.kappa),
        REAL("growth", "scale", growth.scale),
        REAL("growth", "lambda", growth.lambda),
        TEXT("run", "criterion", run.criterion),
        INT("run", "n_paths", run.n_paths),
        INT("run", "seed", run.seed),
        REAL("run", "dt", run.dt),
        REAL("run", "horizon", run.horizon),
        TEXT("run", "scheme", run.scheme),
        INT("run", "threads", run.threads),
        INT("run", "n_min", run.n_min),
        INT("run", "n_max", run.n_max),
        INT("run", "dyadic_levels", run.dyadic_levels),
        REAL("run", "eps", run.eps),
        REAL("run", "ball_radius", run.ball_radius),
        REAL("run", "bg_tol", run.bg_tol),
        FLAG("run", "check_majorization", run.check_majorization),
        TEXT("run", "bound", run.bound),
        LIST("run", "t_grid", run.t_grid),
        LIST("run", "r_grid", run.r_grid),
        REAL("run", "c_max", run.c_max),
        REAL("run", "c_lower", run.c_lower),
        TEXT("run", "example", run.example),
        TEXT("output", "dir", output.dir),
        FLAG("output", "svg", output.svg),
    };
    return table;
}

#undef REAL
#undef INT
#undef TEXT
#undef FLAG
#undef LIST

const std::vector<std::string> kKinds = {"stable", "iterated_log", "log_corrected", "atom",
                                         "zero",   "variable_order", "stable_type", "sde"};
const std::vector<std::string> kCriteria = {"auto", "levy", "power", "ltp_upper", "ltp_lower"};

bool one_of(const std::string& v, const std::vector<std::string>& options) {
    return std::find(options.begin(), options.end(), v) != options.end();
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
}

std::string joined(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ParseError(line, "", "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "process" && section != "growth" && section != "run" && section != "output")
                throw ParseError(line, "", "unknown section [" + section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError(line, "", "expected key = value");
        const std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
        if (section.empty()) throw ParseError(line, key, "key outside of a section");
        const auto& table = fields();
        auto it = std::find_if(table.begin(), table.end(),
                               [&](const Field& f) { return section == f.section && key == f.key; });
        if (it == table.end()) throw ParseError(line, key, "unknown key in [" + section + "]");
        it->read(c, value, Reader{line, key});
    }
    validate_config(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    std::string out, section;
    for (const Field& f : fields()) {
        if (section != f.section) {
            section = f.section;
            out += (out.empty() ? "[" : "\n[") + section + "]\n";
        }
        out += std::string(f.key) + " = " + f.write(c) + "\n";
    }
    return out;
}

void validate_config(const RunConfig& c) {
    const ProcessConfig& p = c.process;
    require(one_of(p.kind, kKinds), "kind must be one of " + joined(kKinds));
    require(p.alpha > 0.0 && p.alpha < 2.0, "alpha must lie in (0,2)");
    require(p.d >= 1 && p.d <= 3, "d must lie in {1,2,3}");
    require(p.skew >= -1.0 && p.skew <= 1.0, "skew must lie in [-1,1]");
    require(p.norm == "symbol" || p.norm == "density", "norm must be symbol or density");
    require(p.mass >= 0.0, "mass must be non-negative");
    require(p.radius > 0.0, "radius must be positive");
    require(p.order_slope >= 0.0 && p.order_base - p.order_slope > 0.0 && p.order_base + p.order_slope < 2.0,
            "order_base -/+ order_slope must lie in (0,2)");
    require(p.amplitude >= 0.0 && p.amplitude < 0.5, "amplitude must lie in [0,0.5)");
    require(p.sigma0 > std::abs(p.sigma1), "sigma0 must exceed |sigma1|");
    require(p.driver_alpha > 0.0 && p.driver_alpha < 2.0, "driver_alpha must lie in (0,2)");
    require(p.d == 1 || p.kind == "stable" || p.kind == "zero", "d > 1 is only available for stable and zero");
    require(std::isfinite(p.x), "x must be finite");

    const GrowthConfig& g = c.growth;
    require(g.form == "power" || g.form == "power_log", "form must be power or power_log");
    require(g.kappa > 0.0 && g.kappa <= 4.0, "kappa must lie in (0,4]");
    require(g.scale > 0.0, "scale must be positive");
    require(std::isfinite(g.lambda), "lambda must be finite");

    const RunSettings& r = c.run;
    require(one_of(r.criterion, kCriteria), "criterion must be one of " + joined(kCriteria));
    require(r.n_paths >= 1 && r.n_paths <= 10'000'000, "n_paths must lie in [1,1e7]");
    require(r.dt > 0.0 && r.dt <= 0.1, "dt must lie in (0,0.1]");
    require(r.horizon > 0.0 && r.horizon <= 10.0, "horizon must lie in (0,10]");
    if (r.scheme != "auto") {
        try {
            scheme_from_string(r.scheme);
        } catch (const Error&) {
            throw ValidationError("scheme must be auto, CompoundPoissonGauss, ExactStable, EulerSDE or FreezeSymbol");
        }
    }
    require(r.n_min >= 0 && r.n_max <= 20 && r.n_max - r.n_min >= 5,
            "n_min, n_max must satisfy 0 <= n_min, n_max <= 20, n_max - n_min >= 5");
    require(r.dyadic_levels >= 8 && r.dyadic_levels <= 200, "dyadic_levels must lie in [8,200]");
    require(r.eps > 0.0, "eps must be positive");
    require(r.ball_radius > 0.0, "ball_radius must be positive");
    require(r.bg_tol > 0.0 && r.bg_tol < 1.0, "bg_tol must lie in (0,1)");
    try {
        bound_from_string(r.bound);
    } catch (const Error&) {
        throw ValidationError("bound must be MaxIneq, ExitSurvival, LowerMaxIneq or ExpectedExit");
    }
    auto positive = [](const std::vector<double>& v) {
        return !v.empty() && std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0 && std::isfinite(x); });
    };
    require(positive(r.t_grid), "t_grid entries must be positive");
    require(positive(r.r_grid), "r_grid entries must be positive");
    require(r.c_max > 0.0, "c_max must be positive");
    require(r.c_lower > 0.0 && r.c_lower < 1.0, "c_lower must lie in (0,1)");
    try {
        example_from_string(r.example);
    } catch (const Error&) {
        throw ValidationError("example must name a built-in example");
    }
    require(!c.output.dir.empty(), "dir must not be empty");
}

ProcessSpec build_process(const ProcessConfig& p) {
    if (p.kind == "stable") {
        StableParams s;
        s.alpha = p.alpha;
        s.dim = p.d;
        s.skew = p.skew;
        s.norm = p.norm == "density" ? StableNorm::Density : StableNorm::Symbol;
        s.drift = p.drift;
        return make_stable(s);
    }
    if (p.kind == "iterated_log") return make_iterated_log();
    if (p.kind == "log_corrected") return make_log_corrected();
    if (p.kind == "atom") return make_atom(p.mass, p.radius);
    if (p.kind == "zero") return make_zero(p.d);
    if (p.kind == "variable_order") return make_variable_order({p.order_base, p.order_slope});
    if (p.kind == "stable_type") return make_stable_type({p.alpha, p.amplitude});
    if (p.kind == "sde") {
        StableParams s;
        s.alpha = p.driver_alpha;
        return make_sde(make_stable(s), {p.sigma0, p.sigma1, p.omega});
    }
    throw ValidationError("kind must be one of " + joined(kKinds));
}

GrowthFunction build_growth(const GrowthConfig& g) {
    if (g.form == "power_log") return GrowthFunction::power_log(g.kappa, g.lambda);
    return GrowthFunction::power(g.kappa, g.scale);
}

Vec start_point(const RunConfig& c) {
    return Vec::filled(c.process.d, c.process.x);
}

SimConfig sim_config(const RunConfig& c, const ProcessSpec& spec) {
    SimConfig s;
    s.dt = c.run.dt;
    s.n_paths = c.run.n_paths;
    s.seed = c.run.seed;
    s.threads = c.run.threads;
    s.scheme = c.run.scheme == "auto" ? default_scheme(spec) : scheme_from_string(c.run.scheme);
    s.validate(spec);
    return s;
}

ClassifySettings classify_settings(const RunConfig& c) {
    ClassifySettings s;
    s.dyadic.n_max = c.run.dyadic_levels;
    s.eps = c.run.eps;
    s.ball_radius = c.run.ball_radius;
    s.bg_tol = c.run.bg_tol;
    s.check_majorization = c.run.check_majorization;
    return s;
}

}  // namespace levyup
