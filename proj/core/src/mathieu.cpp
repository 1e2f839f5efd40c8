#include "oscimedia/mathieu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "oscimedia/errors.hpp"

namespace oscimedia {

namespace {

constexpr double pi = std::numbers::pi;

struct Reduction {
  double k;       // (n^2 - 1) / n^2
  double spread;  // 1 + cos^2 theta
};

Reduction reduction(const MediumSpec& medium, const ModeSpec& mode, double b) {
  medium.validate();
  mode.validate();
  require_subluminal(medium, b);
  const double n2 = medium.refractive_index * medium.refractive_index;
  const double c = std::cos(mode.theta);
  return {(n2 - 1.0) / n2, 1.0 + c * c};
}

ode::Generator oscillator_generator(Potential potential) {
  return [v = std::move(potential)](double tau) {
    ode::Matrix2c a;
    a << 0.0, 1.0, -v(tau), 0.0;
    return a;
  };
}

DeviationReport compare(const Trajectory& full, const Trajectory& reduced,
                        const MathieuParams& params) {
  std::vector<double> mag_full(full.size());
  std::vector<double> mag_red(full.size());
  double peak = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < full.size(); ++i) {
    mag_full[i] = std::abs(full.states[i].first);
    mag_red[i] = std::abs(reduced.states[i].first);
    peak = std::max(peak, mag_full[i]);
    worst = std::max(worst, std::abs(mag_full[i] - mag_red[i]));
  }
  DeviationReport r;
  r.params = params;
  r.growth_rate_full = fitted_growth_rate(full.taus, mag_full);
  r.growth_rate_mathieu = fitted_growth_rate(reduced.taus, mag_red);
  r.growth_rate_difference = r.growth_rate_mathieu - r.growth_rate_full;
  r.growth_rate_relative_difference =
      std::abs(r.growth_rate_full) > 1e-12
          ? std::abs(r.growth_rate_difference) / std::abs(r.growth_rate_full)
          : std::abs(r.growth_rate_difference);
  r.max_amplitude_deviation = peak > 0.0 ? worst / peak : worst;
  return r;
}

}  // namespace

MathieuParams mathieu_parameters(const MediumSpec& medium, const ModeSpec& mode, double b) {
  const auto [k, spread] = reduction(medium, mode, b);
  const double rho2 = mode.rho * mode.rho;
  const double b2 = b * b;
  return {rho2 * (1.0 - 0.5 * b2 * k * spread), rho2 * 0.25 * b2 * k * spread - 0.5 * b2 * k};
}

double hill_potential(const MediumSpec& medium, const ModeSpec& mode, double b, double tau) {
  const AlphaJet alpha = harmonic_alpha(medium, b, tau);
  const double n2 = medium.refractive_index * medium.refractive_index;
  const double c = b * b * std::cos(tau) * std::cos(tau);
  const double cos_t = std::cos(mode.theta);
  const double kappa = 1.0 - cos_t * cos_t * (n2 - 1.0) * c / (n2 - c);
  const double a1 = alpha.first / alpha.value;
  return mode.rho * mode.rho * alpha.value * kappa -
         (0.75 * a1 * a1 - 0.5 * alpha.second / alpha.value);
}

double HillCoefficients::potential(double tau) const {
  double h = theta0;
  for (std::size_t l = 0; l < theta_l.size(); ++l) {
    h += 2.0 * theta_l[l] * std::cos(2.0 * static_cast<double>(l + 1) * tau);
  }
  return h;
}

HillCoefficients hill_coefficients(const MediumSpec& medium, const ModeSpec& mode, double b,
                                   int L, int grid) {
  if (L < 1) throw validation_error("Hill truncation L must be >= 1");
  if (grid < 4 * L + 4) throw validation_error("Hill quadrature grid too coarse for L");
  (void)reduction(medium, mode, b);

  std::vector<double> h(static_cast<std::size_t>(grid));
  for (int j = 0; j < grid; ++j) {
    h[static_cast<std::size_t>(j)] = hill_potential(medium, mode, b, pi * j / grid);
  }
  HillCoefficients out;
  double sum = 0.0;
  for (double v : h) sum += v;
  out.theta0 = sum / grid;
  out.theta_l.resize(static_cast<std::size_t>(L));
  for (int l = 1; l <= L; ++l) {
    double s = 0.0;
    for (int j = 0; j < grid; ++j) {
      s += h[static_cast<std::size_t>(j)] * std::cos(2.0 * l * pi * j / grid);
    }
    out.theta_l[static_cast<std::size_t>(l - 1)] = s / grid;
  }
  return out;
}

MathieuParams projected_mathieu_parameters(const MediumSpec& medium, const ModeSpec& mode,
                                           double b) {
  const auto c = hill_coefficients(medium, mode, b, 1);
  return {c.theta0, -c.theta_l.front()};
}

OscillatorStability oscillator_stability(const Potential& potential, double tolerance) {
  const auto generator = oscillator_generator(potential);
  ode::IntegratorOptions options;
  options.tolerance = tolerance;
  const ode::State<2> y =
      ode::integrate<2>(generator, ode::State<2>::Identity(), 0.0, pi, options);
  OscillatorStability s;
  s.half_trace = 0.5 * (y(0, 0).real() + y(1, 1).real());
  if (!std::isfinite(s.half_trace)) throw numerical_error("non-finite monodromy trace", pi);
  s.exponent = exponent_near(s.half_trace,
                             winding_estimate(generator, FloquetNorm::oscillator, tolerance));
  return s;
}

OscillatorStability mathieu_stability(const MathieuParams& params, double tolerance) {
  if (!std::isfinite(params.a) || !std::isfinite(params.q)) {
    throw validation_error("Mathieu parameters must be finite");
  }
  return oscillator_stability(
      [a = params.a, q = params.q](double tau) { return a - 2.0 * q * std::cos(2.0 * tau); },
      tolerance);
}

OscillatorStability hill_stability(const HillCoefficients& coefficients, double tolerance) {
  return oscillator_stability([c = coefficients](double tau) { return c.potential(tau); },
                              tolerance);
}

ResonanceLine resonance_line(const MediumSpec& medium, double theta, double b) {
  const auto [k, spread] = reduction(medium, ModeSpec{1.0, theta}, b);
  const double drive = 0.25 * b * b * k * spread;
  if (!(drive > 0.0)) {
    throw physics_domain_error("resonance line is undefined for b = 0 or n = 1");
  }
  const double slope = (1.0 - 0.5 * b * b * k * spread) / drive;
  return {slope, slope * 0.5 * b * b * k};
}

std::vector<double> ChartAxis::points() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
    throw validation_error("chart axis needs finite lo < hi");
  }
  if (count < 16) throw validation_error("chart resolution must be >= 16");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  }
  out.back() = hi;
  return out;
}

StabilityChart stability_chart(const ChartAxis& a_axis, const ChartAxis& q_axis,
                               double tolerance) {
  StabilityChart chart;
  chart.a_grid = a_axis.points();
  chart.q_grid = q_axis.points();
  const std::size_t cells = chart.a_grid.size() * chart.q_grid.size();
  chart.cells.resize(cells, CellClass::unknown);
  chart.half_trace.resize(cells, std::numeric_limits<double>::quiet_NaN());

  ode::IntegratorOptions options;
  options.tolerance = tolerance;
  for (std::size_t ia = 0; ia < chart.a_grid.size(); ++ia) {
    for (std::size_t iq = 0; iq < chart.q_grid.size(); ++iq) {
      const double a = chart.a_grid[ia];
      const double q = chart.q_grid[iq];
      const std::size_t idx = ia * chart.q_grid.size() + iq;
      try {
        const auto gen = oscillator_generator(
            [a, q](double tau) { return a - 2.0 * q * std::cos(2.0 * tau); });
        const auto y = ode::integrate<2>(gen, ode::State<2>::Identity(), 0.0, pi, options);
        const double h = 0.5 * (y(0, 0).real() + y(1, 1).real());
        if (!std::isfinite(h)) continue;
        chart.half_trace[idx] = h;
        chart.cells[idx] = std::abs(h) <= 1.0 + 1e-9 ? CellClass::stable : CellClass::unstable;
      } catch (const numerical_error&) {
        // left as unknown
      }
    }
  }
  return chart;
}

QTrajectory evolve_oscillator(const Potential& potential, double q0, double dq0, TauSpan span,
                              const EvolutionOptions& options) {
  const auto samples = ode::uniform_samples(span.begin, span.end, options.samples_per_period);
  QTrajectory out;
  out.taus.reserve(samples.size());
  out.q.reserve(samples.size());
  out.dq.reserve(samples.size());
  ode::State<1> y;
  y << q0, dq0;
  ode::integrate<1>(oscillator_generator(potential), y, span.begin, span.end, samples,
                    options.integrator, &out.diagnostics,
                    [&](double t, const ode::State<1>& s) {
                      out.taus.push_back(t);
                      out.q.push_back(s(0).real());
                      out.dq.push_back(s(1).real());
                    });
  return out;
}

QInitial q_initial_from_f12(const MediumSpec& medium, const ModeSpec& mode, double b, double tau,
                            double f1, double f2) {
  (void)reduction(medium, mode, b);
  const AlphaJet alpha = harmonic_alpha(medium, b, tau);
  const double root = std::sqrt(alpha.value);
  QInitial init;
  init.q = f1 / (mode.rho * root);
  init.dq = root * (f2 - alpha.first * init.q / (2.0 * alpha.value * root));
  return init;
}

Trajectory q_reconstruction(const MediumSpec& medium, const ModeSpec& mode, double b,
                            const QTrajectory& q) {
  (void)reduction(medium, mode, b);
  if (q.taus.size() != q.q.size() || q.taus.size() != q.dq.size()) {
    throw validation_error("Q trajectory needs matching tau, Q and Q' samples");
  }
  Trajectory out;
  out.diagnostics = q.diagnostics;
  out.taus = q.taus;
  out.states.reserve(q.taus.size());
  for (std::size_t i = 0; i < q.taus.size(); ++i) {
    const AlphaJet alpha = harmonic_alpha(medium, b, q.taus[i]);
    if (!(alpha.value > 0.0)) {
      throw physics_domain_error("alpha must stay positive along the Q trajectory");
    }
    const double root = std::sqrt(alpha.value);
    const double f1 = mode.rho * root * q.q[i];
    const double f2 = q.dq[i] / root + alpha.first * q.q[i] / (2.0 * alpha.value * root);
    out.states.push_back(AmplitudePair::linear(f1, f2));
  }
  return out;
}

double fitted_growth_rate(const std::vector<double>& taus, const std::vector<double>& magnitudes) {
  if (taus.size() != magnitudes.size() || taus.size() < 2) {
    throw validation_error("growth fit needs matching samples");
  }
  const double start = taus.front();
  const auto periods =
      static_cast<long>(std::floor((taus.back() - start) / two_pi + 1e-9));
  if (periods < 2) throw validation_error("growth fit needs at least two full periods");
  std::vector<double> peak(static_cast<std::size_t>(periods), 0.0);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const auto p = static_cast<long>(std::floor((taus[i] - start) / two_pi + 1e-9));
    if (p >= periods) continue;
    peak[static_cast<std::size_t>(p)] = std::max(peak[static_cast<std::size_t>(p)], magnitudes[i]);
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (long p = 0; p < periods; ++p) {
    const double x = start + two_pi * static_cast<double>(p);
    const double y = std::log(peak[static_cast<std::size_t>(p)]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(periods);
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

MathieuComparison mathieu_vs_full_comparison(const MediumSpec& medium, const ModeSpec& mode,
                                             double b, int periods,
                                             const EvolutionOptions& options) {
  if (periods < 2) throw validation_error("comparison needs at least two periods");
  (void)reduction(medium, mode, b);
  const TauSpan span{0.0, two_pi * periods};

  MathieuComparison out;
  out.full = evolve_f12(medium, mode, MotionProfile::harmonic(b), AmplitudePair::linear(1.0, 0.0),
                        span, options);

  const QInitial init = q_initial_from_f12(medium, mode, b, 0.0, 1.0, 0.0);
  auto reduced = [&](const MathieuParams& p) {
    const auto q = evolve_oscillator(
        [a = p.a, qq = p.q](double tau) { return a - 2.0 * qq * std::cos(2.0 * tau); }, init.q,
        init.dq, span, options);
    return q_reconstruction(medium, mode, b, q);
  };

  const MathieuParams projected = projected_mathieu_parameters(medium, mode, b);
  const MathieuParams small_b = mathieu_parameters(medium, mode, b);
  out.mathieu_projected = reduced(projected);
  out.mathieu_small_b = reduced(small_b);
  out.projected = compare(out.full, out.mathieu_projected, projected);
  out.small_b = compare(out.full, out.mathieu_small_b, small_b);
  return out;
}

}  // namespace oscimedia
