#pragma once

// Run configuration for the batch front end. The text form is line based:
//
//     # comment
//     command = scan
//     [physics]
//     n = 2
//     rho_range = 0.9 1.1 201
//     [numerics]
//     tolerance = 1e-10
//     [output]
//     format = json
//
// See docs/config.md for every key. Unknown sections or keys, duplicates and
// malformed values are errors that name the offending line.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oscimedia::cli {

enum class Command { chart, scan, evolve, photons, compare };
enum class OutputFormat { csv, json };

[[nodiscard]] std::string_view to_string(Command c) noexcept;
[[nodiscard]] std::string_view to_string(OutputFormat f) noexcept;
// Throw validation_error on unknown names.
[[nodiscard]] Command parse_command(std::string_view name);
[[nodiscard]] OutputFormat parse_format(std::string_view name);

struct RhoSweep {
  double lo = 0.9;
  double hi = 1.1;
  int count = 201;

  [[nodiscard]] std::vector<double> points() const;
};

struct RunConfig {
  std::optional<Command> command;
  std::optional<std::string> preset;

  // physics
  double n = 2.0;
  double b = 0.3;
  double theta = 1.5707963267948966;
  std::optional<double> rho;
  std::optional<RhoSweep> rho_range;
  // Unset: 100 periods (50 for compare).
  std::optional<int> periods;
  // Set: scan also locates the resonance of this order.
  std::optional<int> order;

  // numerics
  double tolerance = 1e-10;
  int samples_per_period = 64;
  int resolution = 256;
  double a_lo = 0.0;
  double a_hi = 5.0;
  double q_lo = -1.0;
  double q_hi = 1.0;

  // output
  std::string path;  // empty: standard output
  OutputFormat format = OutputFormat::csv;

  // Throws validation_error (or physics_domain_error) naming the first
  // violated precondition.
  void validate() const;

  // Canonical key/value listing, in a fixed order, for provenance headers.
  // Numbers are printed with 17 significant digits.
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> echo() const;
};

// Parses configuration text on top of `base` (defaults if omitted). Does not
// call validate(); callers do so once every override has been applied.
[[nodiscard]] RunConfig parse_config(std::string_view text, std::string_view source = "<config>",
                                     RunConfig base = {});

// Reads a file; throws io_error if it cannot be opened.
[[nodiscard]] RunConfig load_config_file(const std::string& path, RunConfig base = {});

// "%.17g"
[[nodiscard]] std::string format_number(double v);

}  // namespace oscimedia::cli
