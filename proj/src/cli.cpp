#include "levyup/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace levyup {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string quoted(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

class Csv {
public:
    Csv(const fs::path& path, const std::vector<std::string>& header) : path_(path), out_(path, std::ios::binary) {
        if (!out_) throw PreconditionViolated("cannot write " + path.string());
        row(header);
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << quoted(cells[i]);
        out_ << '\n';
    }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
    std::ofstream out_;
};

struct Context {
    const RunConfig& config;
    std::ostream& out;
    bool quiet;
    fs::path dir;

    void wrote(const fs::path& p) const {
        if (!quiet) out << "wrote " << p.string() << '\n';
    }
    void write_text(const std::string& name, const std::string& text) const {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw PreconditionViolated("cannot write " + (dir / name).string());
        f << text;
        wrote(dir / name);
    }
};

void integral_rows(Csv& csv, const Classification& c) {
    for (const IntegralEvidence& e : c.integrals)
        csv.row({e.criterion, num(e.parameter), to_string(e.verdict.state), num(e.verdict.value),
                 std::to_string(e.verdict.n_max)});
}

int cmd_classify(const Context& ctx) {
    const RunConfig& c = ctx.config;
    const ProcessSpec spec = build_process(c.process);
    const GrowthFunction f = build_growth(c.growth);
    const Vec x = start_point(c);
    const ClassifySettings s = classify_settings(c);
    std::string criterion = c.run.criterion;
    if (criterion == "auto") criterion = spec.kind() == ProcessKind::Levy ? "levy" : "ltp_upper";
    std::vector<Classification> runs;
    if (criterion == "levy") {
        runs.push_back(classify_levy(spec, f, s));
    } else if (criterion == "power") {
        if (c.growth.form != "power" || c.growth.scale != 1.0)
            throw PreconditionViolated("the power criterion needs form = power with scale = 1");
        runs.push_back(classify_power(spec, c.growth.kappa, s));
    } else if (criterion == "ltp_upper") {
        runs.push_back(classify_ltp_upper(spec, x, f, s));
        if (!runs.back().definite() && c.run.criterion == "auto") runs.push_back(classify_ltp_lower(spec, x, f, s));
    } else {
        runs.push_back(classify_ltp_lower(spec, x, f, s));
    }
    Csv csv(ctx.dir / "classify.csv", {"criterion", "c_or_eps", "verdict", "value", "n_levels"});
    for (const auto& r : runs) integral_rows(csv, r);
    ctx.wrote(csv.path());
    const Classification& result = runs.back();
    ctx.out << result.label() << '\n';
    return result.definite() ? kExitDefinite : kExitIndeterminate;
}

int cmd_conditions(const Context& ctx) {
    const RunConfig& c = ctx.config;
    const ProcessSpec spec = build_process(c.process);
    const GrowthFunction f = build_growth(c.growth);
    const Vec x = start_point(c);
    std::vector<std::pair<std::string, ConditionReport>> reports;
    reports.emplace_back("Sector", sector_check(spec, x, 0.0, default_xi_grid()));
    if (spec.kind() == ProcessKind::Levy) {
        reports.emplace_back("A1", check_A1(spec, x, std::nullopt));
    } else {
        reports.emplace_back("Sector(ball)", sector_check(spec, x, c.run.ball_radius, default_xi_grid()));
        reports.emplace_back("A1'", check_A1(spec, x, c.run.ball_radius));
    }
    reports.emplace_back("A2", check_A2(f));
    Csv csv(ctx.dir / "conditions.csv", {"condition", "verdict", "witness", "note"});
    std::string line;
    bool open = false;
    for (const auto& [name, r] : reports) {
        csv.row({name, to_string(r.verdict), num(r.witness), r.note});
        line += (line.empty() ? "" : " ") + name + "=" + to_string(r.verdict);
        open = open || r.verdict == Verdict::Indeterminate;
    }
    ctx.wrote(csv.path());
    ctx.out << line << '\n';
    return open ? kExitIndeterminate : kExitDefinite;
}

int cmd_bg_index(const Context& ctx) {
    const ProcessSpec spec = build_process(ctx.config.process);
    if (spec.kind() != ProcessKind::Levy) throw PreconditionViolated("bg-index needs a Lévy process");
    const LevyMeasure& nu = spec.levy_family().levy_triplet().measure;
    Csv csv(ctx.dir / "bg_index.csv", {"beta", "tol"});
    try {
        const double beta = bg_index(nu, ctx.config.run.bg_tol);
        csv.row({num(beta), num(ctx.config.run.bg_tol)});
        ctx.wrote(csv.path());
        char buf[64];
        std::snprintf(buf, sizeof buf, "beta=%.4f", beta);
        ctx.out << buf << '\n';
        return kExitDefinite;
    } catch (const IndeterminateBracket& e) {
        ctx.wrote(csv.path());
        ctx.out << "Indeterminate (" << e.what() << ")\n";
        return kExitIndeterminate;
    }
}

int cmd_bounds(const Context& ctx) {
    const RunConfig& c = ctx.config;
    const ProcessSpec spec = build_process(c.process);
    const SimConfig sim = sim_config(c, spec);
    std::vector<std::pair<double, double>> grid;
    for (double t : c.run.t_grid)
        for (double r : c.run.r_grid) grid.emplace_back(t, r);
    BoundSettings bs;
    bs.c_max = c.run.c_max;
    bs.c_lower = c.run.c_lower;
    const auto rows = verify_bound_table(spec, start_point(c), bound_from_string(c.run.bound), grid, sim, bs);
    Csv csv(ctx.dir / "bounds.csv", {"t", "r", "empirical", "ci", "bound", "violated"});
    std::size_t violations = 0;
    for (const BoundRow& r : rows) {
        if (!r.applicable) continue;
        csv.row({num(r.t), num(r.r), num(r.empirical), num(r.ci), num(r.bound), r.violated ? "1" : "0"});
        violations += r.violated ? 1 : 0;
    }
    ctx.wrote(csv.path());
    ctx.out << c.run.bound << " violations=" << violations << '\n';
    return kExitDefinite;
}

int cmd_simulate(const Context& ctx) {
    const RunConfig& c = ctx.config;
    const ProcessSpec spec = build_process(c.process);
    const SimConfig sim = sim_config(c, spec);
    const auto times = make_grid(c.run.horizon, c.run.dt);
    std::vector<PathSample> paths(sim.n_paths);
    for_each_path(spec, start_point(c), times, sim, [&](std::size_t i, const PathSample& p) { paths[i] = p; });
    std::vector<std::string> header{"path", "t"};
    for (int k = 0; k < spec.dim(); ++k) header.push_back("x" + std::to_string(k + 1));
    header.push_back("runmax");
    Csv csv(ctx.dir / "paths.csv", header);
    double worst = 0.0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const PathSample& p = paths[i];
        for (std::size_t j = 0; j < p.times.size(); ++j) {
            std::vector<std::string> cells{std::to_string(i), num(p.times[j])};
            for (int k = 0; k < spec.dim(); ++k) cells.push_back(num(p.values[j][k]));
            cells.push_back(num(p.runmax[j]));
            csv.row(cells);
        }
        worst = std::max(worst, p.runmax.back());
    }
    ctx.wrote(csv.path());
    ctx.out << "paths=" << paths.size() << " scheme=" << to_string(sim.scheme) << " max_runmax=" << num(worst)
            << '\n';
    return kExitDefinite;
}

void write_limsup(const Context& ctx, const std::string& stem, const DyadicStats& s, const std::string& title) {
    Csv csv(ctx.dir / (stem + ".csv"), {"n", "t_n", "q10", "median", "q90"});
    for (std::size_t j = 0; j < s.levels.size(); ++j)
        csv.row({std::to_string(s.levels[j]), num(s.t[j]), num(s.q10[j]), num(s.median[j]), num(s.q90[j])});
    ctx.wrote(csv.path());
    if (ctx.config.output.svg) {
        std::vector<double> n(s.levels.begin(), s.levels.end());
        ctx.write_text(stem + ".svg", svg_line_chart(n, s.median, title, "n", "median M_n"));
    }
}

int trend_exit(TrendLabel l) {
    return l == TrendLabel::TendsZero || l == TrendLabel::Grows ? kExitDefinite : kExitIndeterminate;
}

int cmd_limsup(const Context& ctx) {
    const RunConfig& c = ctx.config;
    const ProcessSpec spec = build_process(c.process);
    const GrowthFunction f = build_growth(c.growth);
    const SimConfig sim = sim_config(c, spec);
    const DyadicStats s = dyadic_limsup_stats(spec, start_point(c), f, c.run.n_min, c.run.n_max, sim);
    const TrendVerdict v = trend_classify(s);
    write_limsup(ctx, "limsup", s, spec.name() + ", f=" + f.descriptor());
    ctx.out << to_string(v.label) << " slope=" << num(v.slope) << " ratio=" << num(v.ratio) << '\n';
    return trend_exit(v.label);
}

int cmd_reproduce(const Context& ctx) {
    const RunConfig& c = ctx.config;
    ExampleSettings es;
    es.n_paths = c.run.n_paths;
    es.seed = c.run.seed;
    es.n_min = c.run.n_min;
    es.n_max = c.run.n_max;
    es.threads = c.run.threads;
    const ExampleReport rep = reproduce_example(example_from_string(c.run.example), es);
    Csv csv(ctx.dir / "reproduce.csv",
            {"row", "description", "analytic", "empirical", "slope", "ratio", "consistent", "agree"});
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const ExampleRow& r = rep.rows[i];
        csv.row({std::to_string(i), r.description, r.analytic.label(), to_string(r.empirical.label),
                 num(r.empirical.slope), num(r.empirical.ratio), r.empirical.consistent ? "1" : "0",
                 r.agree ? "1" : "0"});
        write_limsup(ctx, "limsup_" + std::to_string(i), r.stats, r.description);
        if (!ctx.quiet)
            ctx.out << "  " << r.description << ": " << r.analytic.label() << " / " << to_string(r.empirical.label)
                    << '\n';
    }
    ctx.wrote(csv.path());
    ctx.out << to_string(rep.name) << (rep.agree() ? " agree" : " disagree") << '\n';
    return rep.agree() ? kExitDefinite : kExitIndeterminate;
}

nlohmann::json error_record(const std::exception& e) {
    nlohmann::json j;
    j["error"] = "Error";
    j["message"] = e.what();
    if (auto* le = dynamic_cast<const Error*>(&e)) j["error"] = le->kind();
    if (auto* pe = dynamic_cast<const ParseError*>(&e)) {
        j["line"] = pe->line();
        j["key"] = pe->key();
    }
    return j;
}

}  // namespace

const std::vector<std::string>& cli_commands() {
    static const std::vector<std::string> c = {"classify", "conditions",   "bg-index", "bounds",
                                               "simulate", "limsup-study", "reproduce"};
    return c;
}

int run_command(const std::string& command, const RunConfig& config, std::ostream& out, bool quiet) {
    validate_config(config);
    const Context ctx{config, out, quiet, fs::path(config.output.dir)};
    fs::create_directories(ctx.dir);
    ctx.write_text("config.used.ini", serialize_config(config));
    if (command == "classify") return cmd_classify(ctx);
    if (command == "conditions") return cmd_conditions(ctx);
    if (command == "bg-index") return cmd_bg_index(ctx);
    if (command == "bounds") return cmd_bounds(ctx);
    if (command == "simulate") return cmd_simulate(ctx);
    if (command == "limsup-study") return cmd_limsup(ctx);
    if (command == "reproduce") return cmd_reproduce(ctx);
    throw PreconditionViolated("unknown command '" + command + "'");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Small-time upper functions of Lévy and Lévy-type processes"};
    std::string command, config_path, out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::optional<int> depth;
    bool quiet = false;
    app.add_option("command", command, "classify | conditions | bg-index | bounds | simulate | limsup-study | reproduce")
        ->required();
    app.add_option("--config", config_path, "key = value config file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--paths", paths, "number of Monte Carlo paths");
    app.add_option("--depth", depth, "deepest dyadic level n_max");
    app.add_flag("--quiet", quiet, "only print the verdict line");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitDefinite;
    } catch (const CLI::ParseError& e) {
        err << nlohmann::json{{"error", "UsageError"}, {"message", e.what()}}.dump() << '\n';
        return kExitError;
    }
    try {
        if (std::find(cli_commands().begin(), cli_commands().end(), command) == cli_commands().end())
            throw PreconditionViolated("unknown command '" + command + "'");
        RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (!out_dir.empty()) config.output.dir = out_dir;
        if (seed) config.run.seed = *seed;
        if (paths) config.run.n_paths = *paths;
        if (depth) config.run.n_max = *depth;
        return run_command(command, config, out, quiet);
    } catch (const std::exception& e) {
        err << error_record(e).dump() << '\n';
        return kExitError;
    }
}

std::string svg_line_chart(const std::vector<double>& x, const std::vector<double>& y, const std::string& title,
                           const std::string& x_label, const std::string& y_label) {
    const double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i)
        if (std::isfinite(x[i]) && std::isfinite(y[i])) pts.emplace_back(x[i], y[i]);
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!pts.empty()) {
        x0 = x1 = pts[0].first;
        y0 = y1 = pts[0].second;
        for (auto [a, b] : pts) {
            x0 = std::min(x0, a), x1 = std::max(x1, a);
            y0 = std::min(y0, b), y1 = std::max(y1, b);
        }
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    auto px = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };
    auto esc = [](const std::string& s) {
        std::string o;
        for (char c : s) {
            if (c == '<') o += "&lt;";
            else if (c == '>') o += "&gt;";
            else if (c == '&') o += "&amp;";
            else o += c;
        }
        return o;
    };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << esc(title) << "</text>\n"
      << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"12\">"
      << esc(x_label) << "</text>\n"
      << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 "
      << (T + H - B) / 2 << ")\" text-anchor=\"middle\">" << esc(y_label) << "</text>\n"
      << "<text x=\"" << L - 6 << "\" y=\"" << py(y0) << "\" text-anchor=\"end\" font-size=\"10\">" << num(y0)
      << "</text>\n"
      << "<text x=\"" << L - 6 << "\" y=\"" << py(y1) + 10 << "\" text-anchor=\"end\" font-size=\"10\">" << num(y1)
      << "</text>\n"
      << "<text x=\"" << px(x0) << "\" y=\"" << H - B + 14 << "\" text-anchor=\"middle\" font-size=\"10\">"
      << num(x0) << "</text>\n"
      << "<text x=\"" << px(x1) << "\" y=\"" << H - B + 14 << "\" text-anchor=\"middle\" font-size=\"10\">"
      << num(x1) << "</text>\n"
      << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (auto [a, b] : pts) s << px(a) << ',' << py(b) << ' ';
    s << "\"/>\n</svg>\n";
    return s.str();
}

}  // namespace levyup
