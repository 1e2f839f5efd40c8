#include "oscimedia/cli/presets.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "oscimedia/errors.hpp"
#include "oscimedia/floquet.hpp"
#include "oscimedia/mathieu.hpp"
#include "oscimedia/photons.hpp"
#include "oscimedia/propagation.hpp"

#ifndef OSCIMEDIA_VERSION
#define OSCIMEDIA_VERSION "unknown"
#endif

namespace oscimedia::cli {

namespace {

constexpr double default_rho = 1.016;
constexpr int default_periods = 100;
constexpr int default_compare_periods = 50;

struct PresetInfo {
  std::string_view name;
  Command command;
};

constexpr PresetInfo presets[] = {
    {"fig1", Command::chart},   {"fig2", Command::compare}, {"fig3", Command::scan},
    {"fig4", Command::scan},    {"fig5", Command::scan},    {"fig6b", Command::photons},
    {"fig6c", Command::photons},
};

// Config with every optional resolved, as actually used by the run.
RunConfig effective(RunConfig cfg) {
  const Command c = *cfg.command;
  if (!cfg.periods) {
    cfg.periods = c == Command::compare ? default_compare_periods : default_periods;
  }
  if ((c == Command::evolve || c == Command::photons || c == Command::compare) && !cfg.rho &&
      !cfg.rho_range) {
    cfg.rho = default_rho;
  }
  if (c == Command::scan && !cfg.rho && !cfg.rho_range) cfg.rho_range = RhoSweep{};
  return cfg;
}

ResultTable make_table(const RunConfig& cfg, std::string name, std::vector<std::string> columns) {
  ResultTable t;
  t.name = std::move(name);
  t.columns = std::move(columns);
  t.provenance.emplace_back("tool", "oscimedia " + std::string(tool_version()));
  t.provenance.emplace_back("table", t.name);
  for (auto& kv : cfg.echo()) t.provenance.push_back(std::move(kv));
  return t;
}

ode::IntegratorOptions integrator(const RunConfig& cfg) {
  ode::IntegratorOptions o;
  o.tolerance = cfg.tolerance;
  return o;
}

EvolutionOptions evolution(const RunConfig& cfg) {
  EvolutionOptions o;
  o.integrator = integrator(cfg);
  o.samples_per_period = cfg.samples_per_period;
  return o;
}

std::vector<ResultTable> chart_tables(const RunConfig& cfg, const std::string& prefix) {
  const MediumSpec medium{cfg.n};
  const auto chart = stability_chart({cfg.a_lo, cfg.a_hi, cfg.resolution},
                                     {cfg.q_lo, cfg.q_hi, cfg.resolution}, cfg.tolerance);
  auto grid = make_table(cfg, prefix + "chart", {"a", "q", "stable", "half_trace"});
  grid.rows.reserve(chart.cells.size());
  for (std::size_t ia = 0; ia < chart.a_grid.size(); ++ia) {
    for (std::size_t iq = 0; iq < chart.q_grid.size(); ++iq) {
      const CellClass c = chart.cell(ia, iq);
      const double flag = c == CellClass::stable ? 1.0 : (c == CellClass::unstable ? 0.0 : -1.0);
      grid.rows.push_back({chart.a_grid[ia], chart.q_grid[iq], flag, chart.trace_at(ia, iq)});
    }
  }
  std::vector<ResultTable> out{std::move(grid)};
  if (cfg.b > 0.0 && cfg.n > 1.0) {
    const auto line = resonance_line(medium, cfg.theta, cfg.b);
    auto t = make_table(cfg, prefix + "line", {"q", "a"});
    for (double q : chart.q_grid) t.rows.push_back({q, line.at(q)});
    out.push_back(std::move(t));
  }
  return out;
}

ResultTable scan_table(const RunConfig& cfg, const std::string& name, const RhoSweep& sweep) {
  const MediumSpec medium{cfg.n};
  auto t = make_table(cfg, name, {"rho", "re_nu", "im_nu", "half_trace", "stable"});
  if (sweep.count == 1) {
    const ModeSpec mode{sweep.lo, cfg.theta};
    const double sigma = sigma_reference(medium, mode, cfg.b);
    const auto m = monodromy(medium, mode, cfg.b, sigma, cfg.tolerance);
    const auto nu = isolated_exponent(medium, mode, cfg.b, cfg.tolerance);
    t.rows.push_back({sweep.lo, nu.re, nu.im, m.half_trace.real(), nu.stable ? 1.0 : 0.0});
    return t;
  }
  for (const auto& p :
       exponent_scan(medium, cfg.b, cfg.theta, {sweep.lo, sweep.hi}, sweep.count, cfg.tolerance)) {
    t.rows.push_back(
        {p.rho, p.exponent.re, p.exponent.im, p.half_trace, p.exponent.stable ? 1.0 : 0.0});
  }
  return t;
}

ResultTable region_table(const RunConfig& cfg, const std::string& name,
                         const std::vector<std::pair<double, ResonanceRegion>>& regions) {
  auto t = make_table(cfg, name,
                      {"b", "order", "rho_lo", "rho_hi", "rho_peak", "im_nu_peak", "width"});
  for (const auto& [b, r] : regions) {
    t.rows.push_back({b, static_cast<double>(r.order), r.rho_lo, r.rho_hi, r.rho_peak,
                      r.im_nu_peak, r.width()});
  }
  return t;
}

ResonanceSearch search(const RunConfig& cfg) {
  ResonanceSearch s;
  s.tolerance = cfg.tolerance;
  return s;
}

std::vector<ResultTable> scan_tables(const RunConfig& cfg, const std::string& prefix) {
  const RhoSweep sweep = cfg.rho_range ? *cfg.rho_range : RhoSweep{*cfg.rho, *cfg.rho, 1};
  std::vector<ResultTable> out{scan_table(cfg, prefix + "scan", sweep)};
  if (cfg.order) {
    const auto r = resonance_region(MediumSpec{cfg.n}, cfg.b, cfg.theta, *cfg.order, search(cfg));
    out.push_back(region_table(cfg, prefix + "resonance", {{cfg.b, r}}));
  }
  return out;
}

std::vector<ResultTable> evolve_tables(const RunConfig& cfg, const std::string& prefix) {
  if (cfg.rho_range) throw validation_error("evolve takes a single rho, not rho_range");
  const MediumSpec medium{cfg.n};
  const ModeSpec mode{*cfg.rho, cfg.theta};
  const auto traj = evolve_f12(medium, mode, MotionProfile::harmonic(cfg.b),
                               AmplitudePair::linear(1.0, 0.0), {0.0, two_pi * *cfg.periods},
                               evolution(cfg));
  auto t = make_table(cfg, prefix + "evolve", {"tau", "f1_re", "f1_im", "f2_re", "f2_im", "f1_abs"});
  t.rows.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& s = traj.states[i];
    t.rows.push_back({traj.taus[i], s.first.real(), s.first.imag(), s.second.real(),
                      s.second.imag(), std::abs(s.first)});
  }
  return {t};
}

std::vector<ResultTable> photon_tables(const RunConfig& cfg, const std::string& prefix) {
  const MediumSpec medium{cfg.n};
  if (cfg.rho_range) {
    auto t = make_table(cfg, prefix + "photons", {"rho", "density", "alpha_abs", "beta_abs"});
    for (double rho : cfg.rho_range->points()) {
      const auto c = bogoliubov_evolution(medium, {rho, cfg.theta}, cfg.b, *cfg.periods,
                                          integrator(cfg));
      t.rows.push_back({rho, c.density(), std::abs(c.alpha_coeff), std::abs(c.beta_coeff)});
    }
    return {t};
  }
  const auto series = photon_density_series(medium, {*cfg.rho, cfg.theta}, cfg.b, *cfg.periods,
                                            cfg.samples_per_period, integrator(cfg));
  auto t = make_table(cfg, prefix + "photons", {"tau", "density"});
  t.rows.reserve(series.taus.size());
  for (std::size_t i = 0; i < series.taus.size(); ++i) {
    t.rows.push_back({series.taus[i], series.density[i]});
  }
  return {t};
}

std::vector<ResultTable> compare_tables(const RunConfig& cfg, const std::string& prefix) {
  if (cfg.rho_range) throw validation_error("compare takes a single rho, not rho_range");
  const MediumSpec medium{cfg.n};
  const auto c = mathieu_vs_full_comparison(medium, {*cfg.rho, cfg.theta}, cfg.b, *cfg.periods,
                                            evolution(cfg));
  auto series = make_table(cfg, prefix + "compare",
                           {"tau", "f1_abs", "f1_mathieu_abs", "f1_mathieu_small_b_abs"});
  series.rows.reserve(c.full.size());
  for (std::size_t i = 0; i < c.full.size(); ++i) {
    series.rows.push_back({c.full.taus[i], std::abs(c.full.states[i].first),
                           std::abs(c.mathieu_projected.states[i].first),
                           std::abs(c.mathieu_small_b.states[i].first)});
  }
  auto summary = make_table(
      cfg, prefix + "summary",
      {"a", "q", "growth_rate_full", "growth_rate_mathieu", "growth_rate_relative_difference",
       "max_amplitude_deviation", "small_b"});
  for (const auto* r : {&c.projected, &c.small_b}) {
    summary.rows.push_back({r->params.a, r->params.q, r->growth_rate_full, r->growth_rate_mathieu,
                            r->growth_rate_relative_difference, r->max_amplitude_deviation,
                            r == &c.small_b ? 1.0 : 0.0});
  }
  return {series, summary};
}

std::vector<ResultTable> run_command(const RunConfig& cfg, const std::string& prefix) {
  switch (*cfg.command) {
    case Command::chart: return chart_tables(cfg, prefix);
    case Command::scan: return scan_tables(cfg, prefix);
    case Command::evolve: return evolve_tables(cfg, prefix);
    case Command::photons: return photon_tables(cfg, prefix);
    case Command::compare: return compare_tables(cfg, prefix);
  }
  throw validation_error("no command given");
}

RhoSweep around(const ResonanceRegion& r, double margin, int count) {
  return {r.rho_lo - margin * r.width(), r.rho_hi + margin * r.width(), count};
}

}  // namespace

std::string_view tool_version() noexcept { return OSCIMEDIA_VERSION; }

Command preset_command(std::string_view name) {
  for (const auto& p : presets) {
    if (p.name == name) return p.command;
  }
  throw validation_error("unknown preset '" + std::string(name) +
                         "' (expected fig1, fig2, fig3, fig4, fig5, fig6b or fig6c)");
}

std::vector<std::string_view> preset_names() {
  std::vector<std::string_view> out;
  for (const auto& p : presets) out.push_back(p.name);
  return out;
}

namespace {

std::vector<ResultTable> preset_pipeline(std::string_view name, const RunConfig& config) {
  RunConfig cfg = config;
  cfg.command = preset_command(name);
  cfg.preset = std::string(name);
  cfg.n = 2.0;
  cfg.b = 0.3;
  cfg.theta = std::numbers::pi / 2.0;
  cfg.rho.reset();
  cfg.rho_range.reset();
  cfg.order.reset();
  const std::string prefix = std::string(name) + "_";

  if (name == "fig1") {
    cfg.a_lo = 0.0;
    cfg.a_hi = 5.0;
    cfg.q_lo = -1.0;
    cfg.q_hi = 1.0;
    cfg.validate();
    return chart_tables(effective(cfg), prefix);
  }
  if (name == "fig2") {
    cfg.rho = 1.016;
    cfg.validate();
    return compare_tables(effective(cfg), prefix);
  }
  if (name == "fig3") {
    cfg.rho_range = RhoSweep{0.1, 2.5, 481};
    cfg.validate();
    return {scan_table(effective(cfg), prefix + "scan", *cfg.rho_range)};
  }
  if (name == "fig4") {
    cfg.validate();
    const MediumSpec medium{cfg.n};
    const auto first = resonance_region(medium, cfg.b, cfg.theta, 1, search(cfg));
    const auto second = resonance_region(medium, cfg.b, cfg.theta, 2, search(cfg));
    std::vector<ResultTable> out;
    RunConfig c1 = cfg;
    c1.rho_range = around(first, 1.0, 201);
    out.push_back(scan_table(effective(c1), prefix + "first", *c1.rho_range));
    RunConfig c2 = cfg;
    c2.rho_range = around(second, 1.0, 201);
    out.push_back(scan_table(effective(c2), prefix + "second", *c2.rho_range));
    out.push_back(region_table(effective(cfg), prefix + "regions", {{cfg.b, first}, {cfg.b, second}}));
    return out;
  }
  if (name == "fig5") {
    cfg.validate();
    const MediumSpec medium{cfg.n};
    auto curves = make_table(effective(cfg), prefix + "curves", {"b", "rho", "re_nu", "im_nu"});
    std::vector<std::pair<double, ResonanceRegion>> peaks;
    for (int i = 4; i <= 9; ++i) {
      const double b = i / 10.0;
      const auto r = resonance_region(medium, b, cfg.theta, 1, search(cfg));
      peaks.emplace_back(b, r);
      const RhoSweep s = around(r, 0.25, 201);
      for (const auto& p : exponent_scan(medium, b, cfg.theta, {s.lo, s.hi}, s.count,
                                         cfg.tolerance)) {
        curves.rows.push_back({b, p.rho, p.exponent.re, p.exponent.im});
      }
    }
    return {curves, region_table(effective(cfg), prefix + "peaks", peaks)};
  }
  if (name == "fig6b" || name == "fig6c") {
    cfg.rho = name == "fig6b" ? 1.55 : 1.016;
    cfg.validate();
    return photon_tables(effective(cfg), prefix);
  }
  throw validation_error("unknown preset '" + std::string(name) + "'");
}

}  // namespace

std::vector<ResultTable> run_preset(std::string_view name, const RunConfig& config) {
  (void)preset_command(name);
  const std::string where = "preset " + std::string(name) + ": ";
  // Same exception types, with the preset named in front.
  try {
    return preset_pipeline(name, config);
  } catch (const validation_error& e) {
    throw validation_error(where + e.what());
  } catch (const physics_domain_error& e) {
    throw physics_domain_error(where + e.what());
  } catch (const resonance_not_found& e) {
    throw resonance_not_found(where + e.what(), e.tau());
  } catch (const numerical_error& e) {
    throw numerical_error(where + e.what(), e.tau());
  }
}

std::vector<ResultTable> run(const RunConfig& config) {
  config.validate();
  if (config.preset) {
    const Command expected = preset_command(*config.preset);
    if (config.command && *config.command != expected) {
      throw validation_error("preset " + *config.preset + " runs the '" +
                             std::string(to_string(expected)) + "' command, not '" +
                             std::string(to_string(*config.command)) + "'");
    }
    const RunConfig defaults;
    if (config.n != defaults.n || config.b != defaults.b || config.theta != defaults.theta ||
        config.rho || config.rho_range || config.order) {
      throw validation_error("preset " + *config.preset +
                             " fixes n, b, theta, rho and order; remove those settings");
    }
    return run_preset(*config.preset, config);
  }
  if (!config.command) throw validation_error("no command given");
  return run_command(effective(config), "");
}

}  // namespace oscimedia::cli
