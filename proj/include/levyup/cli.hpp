#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "levyup/config.hpp"

namespace levyup {

enum ExitCode { kExitDefinite = 0, kExitError = 1, kExitIndeterminate = 2 };

const std::vector<std::string>& cli_commands();

// Runs one command on a validated config, writing CSV artifacts into
// config.output.dir and a one-line verdict to out.
int run_command(const std::string& command, const RunConfig& config, std::ostream& out, bool quiet = false);

// Full command line: `levyup <command> [--config PATH] [--out DIR] [--seed N]
// [--paths N] [--depth N] [--quiet]`. Errors become a JSON record on err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Single-series SVG line chart.
std::string svg_line_chart(const std::vector<double>& x, const std::vector<double>& y, const std::string& title,
                           const std::string& x_label, const std::string& y_label);

}  // namespace levyup
