// oscimedia <command> [options]
//
// Exit codes: 0 success, 1 validation or physics-domain error, 2 numerical
// failure, 3 I/O error.

#include "CLI11.hpp"

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "oscimedia/cli/config.hpp"
#include "oscimedia/cli/presets.hpp"
#include "oscimedia/cli/table.hpp"
#include "oscimedia/errors.hpp"

namespace {

enum exit_code { ok = 0, invalid = 1, numerical = 2, io = 3 };

int report(const char* kind, const std::exception& e, int code) {
  std::cerr << "oscimedia: " << kind << ": " << e.what() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace oscimedia;

  CLI::App app{"Mode evolution, parametric resonance and photon production in an oscillating "
               "medium"};
  app.set_version_flag("--version", std::string(cli::tool_version()));

  std::string command;
  std::string config_path;
  std::string preset;
  std::string out_path;
  std::string format;
  std::optional<double> n, b, theta, rho, tolerance;
  std::vector<double> rho_range;
  std::optional<int> periods;

  app.add_option("command", command, "chart | scan | evolve | photons | compare")->required();
  app.add_option("--config", config_path, "Configuration file (see docs/config.md)");
  app.add_option("--preset", preset, "fig1 | fig2 | fig3 | fig4 | fig5 | fig6b | fig6c");
  app.add_option("--out", out_path, "Output path; several tables get a _<name> suffix");
  app.add_option("--format", format, "csv | json");
  app.add_option("--n", n, "Refractive index");
  app.add_option("--b", b, "Peak velocity in units of c");
  app.add_option("--theta", theta, "Angle between wave vector and motion, radians");
  auto* rho_opt = app.add_option("--rho", rho, "omega / Omega");
  auto* range_opt = app.add_option("--rho-range", rho_range, "LO HI COUNT")->expected(3);
  rho_opt->excludes(range_opt);
  app.add_option("--periods", periods, "Oscillation periods N");
  app.add_option("--tolerance", tolerance, "Integrator tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : invalid;
  }

  try {
    cli::RunConfig cfg;
    if (!config_path.empty()) cfg = cli::load_config_file(config_path);
    cfg.command = cli::parse_command(command);
    if (!preset.empty()) cfg.preset = preset;
    if (!out_path.empty()) cfg.path = out_path;
    if (!format.empty()) cfg.format = cli::parse_format(format);
    if (n) cfg.n = *n;
    if (b) cfg.b = *b;
    if (theta) cfg.theta = *theta;
    if (rho) {
      cfg.rho = *rho;
      cfg.rho_range.reset();
    }
    if (!rho_range.empty()) {
      const double count = rho_range[2];
      if (count != std::floor(count) || count < 1 || count > 1e7) {
        throw validation_error("--rho-range COUNT must be a positive integer");
      }
      cfg.rho_range = cli::RhoSweep{rho_range[0], rho_range[1], static_cast<int>(count)};
      cfg.rho.reset();
    }
    if (periods) cfg.periods = *periods;
    if (tolerance) cfg.tolerance = *tolerance;

    const auto tables = cli::run(cfg);
    const auto written = cli::emit_tables(tables, cfg.format, cfg.path, std::cout);
    for (const auto& p : written) std::cerr << "wrote " << p << '\n';
    return ok;
  } catch (const validation_error& e) {
    return report("invalid input", e, invalid);
  } catch (const physics_domain_error& e) {
    return report("outside the physical domain", e, invalid);
  } catch (const io_error& e) {
    return report("I/O error", e, io);
  } catch (const numerical_error& e) {
    return report("numerical failure", e, numerical);
  } catch (const std::exception& e) {
    return report("numerical failure", e, numerical);
  }
}
