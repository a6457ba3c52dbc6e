#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace courant::cli {

enum class Command { constants, mu, epsilon, bounds, remainder, fractal, eigen, verify, plot };

struct RunConfig {
  Command command = Command::constants;
  std::optional<std::string> domain_path;
  std::optional<std::string> output_path;
  std::optional<std::string> spectrum_path;
  std::uint64_t seed = 1;

  int dim = 2;                   // constants
  double eps_max = 0.0;          // mu
  int steps = 100;               // mu
  double lambda = 0.0;           // remainder
  std::optional<double> eps;     // remainder
  bool analytic = false;         // bounds
  bool paper_check = false;      // bounds, fractal, verify
  std::string fractal_kind;      // snowflake | cubes
  int generations = 0;           // fractal
  double s = 1.0 / 3.0;          // fractal cubes
  std::optional<double> raster;  // fractal: emit a raster at this h
  int k = 15;                    // eigen, verify
  std::optional<double> h;       // eigen, verify
  std::string plot_kind = "nodal";
  int n = 1;                     // plot
};

/// Parses argv into a config. Throws courant::Error(validation) on bad input;
/// returns nullopt when help was requested and printed.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

/// Runs one command. Exit codes: 0 success, 1 failed --paper-check,
/// 2 validation error, 3 numeric failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with the error-to-exit-code mapping.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Two-space indented JSON with every float printed to 15 significant digits.
std::string to_json_text(const nlohmann::json& doc);

}  // namespace courant::cli
