#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "levyup/cli.hpp"
#include "levyup/config.hpp"

using namespace levyup;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("levyup_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string l;
    std::getline(in, l);
    return l;
}

int cli(const std::vector<std::string>& args, std::string& out, std::string& err) {
    std::vector<const char*> argv{"levyup"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
    out = o.str();
    err = e.str();
    return code;
}

const char* kMinimal = "[process]\nkind = stable\nalpha = 1.0\nd = 1\n[growth]\nform = power\nkappa = 0.8\n";

}  // namespace

TEST(Config, MinimalStableIsValid) {
    const auto c = parse_config(kMinimal);
    EXPECT_EQ(c.process.kind, "stable");
    EXPECT_EQ(c.growth.kappa, 0.8);
    EXPECT_EQ(c.run.n_paths, RunSettings{}.n_paths);
}

TEST(Config, AlphaOutOfRange) {
    try {
        parse_config("[process]\nalpha = 2.5\n");
        FAIL() << "no error";
    } catch (const ValidationError& e) {
        EXPECT_EQ(std::string(e.what()), "alpha must lie in (0,2)");
    }
}

TEST(Config, UnknownKeyCarriesLineAndKey) {
    try {
        parse_config("[process]\nkind = stable\ngamma = 1\n");
        FAIL() << "no error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
        EXPECT_EQ(e.key(), "gamma");
    }
    EXPECT_THROW(parse_config("kind = stable\n"), ParseError);
    EXPECT_THROW(parse_config("[nowhere]\n"), ParseError);
    EXPECT_THROW(parse_config("[run]\nn_paths = many\n"), ParseError);
    EXPECT_THROW(parse_config("[run]\nt_grid = 0.1, x\n"), ParseError);
}

TEST(Config, RoundTrip) {
    RunConfig c;
    c.process.kind = "sde";
    c.process.sigma1 = 1.0 / 3.0;
    c.process.x = -0.1;
    c.growth.kappa = 0.1 + 0.2;
    c.run.dt = 1e-7;
    c.run.t_grid = {0.01, 1.0 / 7.0};
    c.run.check_majorization = true;
    c.output.dir = "some dir/out";
    const auto text = serialize_config(c);
    const auto back = parse_config(text);
    EXPECT_EQ(back, c);
    EXPECT_EQ(serialize_config(back), text);
    EXPECT_EQ(parse_config(serialize_config(parse_config(kMinimal))), parse_config(kMinimal));
}

TEST(Config, BuildsEveryKind) {
    for (const char* k : {"stable", "iterated_log", "log_corrected", "atom", "zero", "variable_order",
                          "stable_type", "sde"}) {
        ProcessConfig p;
        p.kind = k;
        EXPECT_NO_THROW(build_process(p)) << k;
    }
}

TEST(Command, ClassifyCauchyIsZero) {
    auto c = parse_config(kMinimal);
    c.output.dir = scratch("classify").string();
    std::ostringstream out;
    EXPECT_EQ(run_command("classify", c, out, true), 0);
    EXPECT_EQ(out.str(), "Zero\n");
    EXPECT_EQ(first_line(fs::path(c.output.dir) / "classify.csv"), "criterion,c_or_eps,verdict,value,n_levels");
    EXPECT_EQ(parse_config(slurp(fs::path(c.output.dir) / "config.used.ini")), c);
}

TEST(Command, ClassifyIteratedLogIsIndeterminate) {
    RunConfig c;
    c.process.kind = "iterated_log";
    c.growth.kappa = 0.5;
    c.output.dir = scratch("main").string();
    std::ostringstream out;
    EXPECT_EQ(run_command("classify", c, out, true), 2);
    EXPECT_EQ(out.str(), "Indeterminate (A1, A2 fail)\n");
}

TEST(Command, BoundsOnCauchyHaveNoViolations) {
    RunConfig c;
    c.process.norm = "density";
    c.run.n_paths = 2000;
    c.output.dir = scratch("bounds").string();
    std::ostringstream out;
    EXPECT_EQ(run_command("bounds", c, out, true), 0);
    const auto path = fs::path(c.output.dir) / "bounds.csv";
    EXPECT_EQ(first_line(path), "t,r,empirical,ci,bound,violated");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(line.back(), '0') << line;
    }
    EXPECT_EQ(rows, 9);
    EXPECT_EQ(out.str(), "ExitSurvival violations=0\n");
}

TEST(Command, LimsupStudyWritesCsvAndSvg) {
    RunConfig c;
    c.growth.kappa = 1.25;
    c.run.n_paths = 200;
    c.run.n_max = 12;
    c.output.svg = true;
    c.output.dir = scratch("limsup").string();
    std::ostringstream out;
    EXPECT_EQ(run_command("limsup-study", c, out, true), 0);
    EXPECT_EQ(out.str().rfind("Grows", 0), 0u);
    EXPECT_EQ(first_line(fs::path(c.output.dir) / "limsup.csv"), "n,t_n,q10,median,q90");
    EXPECT_NE(slurp(fs::path(c.output.dir) / "limsup.svg").find("<polyline"), std::string::npos);
}

TEST(Command, OtherCommands) {
    RunConfig c;
    c.run.n_paths = 5;
    c.run.horizon = 0.01;
    c.output.dir = scratch("misc").string();
    std::ostringstream out;
    EXPECT_EQ(run_command("conditions", c, out, true), 0);
    EXPECT_EQ(run_command("bg-index", c, out, true), 0);
    EXPECT_EQ(run_command("simulate", c, out, true), 0);
    EXPECT_EQ(first_line(fs::path(c.output.dir) / "paths.csv"), "path,t,x1,runmax");
    EXPECT_THROW(run_command("dance", c, out, true), PreconditionViolated);
}

TEST(Cli, FlagsOverrideConfig) {
    const auto dir = scratch("flags");
    fs::create_directories(dir);
    std::ofstream(dir / "c.ini") << kMinimal;
    std::string out, err;
    EXPECT_EQ(cli({"classify", "--config", (dir / "c.ini").string(), "--out", (dir / "o").string(), "--seed", "7",
                   "--paths", "11", "--depth", "12", "--quiet"},
                  out, err),
              0);
    EXPECT_EQ(out, "Zero\n");
    const auto used = parse_config(slurp(dir / "o" / "config.used.ini"));
    EXPECT_EQ(used.run.seed, 7u);
    EXPECT_EQ(used.run.n_paths, 11u);
    EXPECT_EQ(used.run.n_max, 12);
}

TEST(Cli, ErrorsBecomeJsonRecords) {
    const auto dir = scratch("errors");
    fs::create_directories(dir);
    std::ofstream(dir / "bad.ini") << "[process]\ngamma = 1\n";
    std::string out, err;
    EXPECT_EQ(cli({"classify", "--config", (dir / "bad.ini").string()}, out, err), 1);
    const auto j = nlohmann::json::parse(err);
    EXPECT_EQ(j["error"], "ParseError");
    EXPECT_EQ(j["line"], 2);
    EXPECT_EQ(j["key"], "gamma");
    EXPECT_EQ(cli({"fly"}, out, err), 1);
    EXPECT_EQ(nlohmann::json::parse(err)["error"], "PreconditionViolated");
    EXPECT_EQ(cli({}, out, err), 1);
    EXPECT_EQ(nlohmann::json::parse(err)["error"], "UsageError");
}
