#pragma once

// Reduction of the (f1, f2) system to a parametrically driven oscillator.
// With f1 = rho sqrt(alpha) Q and f2 = alpha^{-1} d/dtau (sqrt(alpha) Q),
//
//     Q'' + H(tau) Q = 0,   H = rho^2 alpha kappa - sqrt(alpha) (alpha^{-1/2})''
//
// H has period pi. Its Fourier series H = theta0 + 2 sum_l theta_l cos(2 l tau)
// makes this a Hill equation; keeping l = 1 gives Mathieu's equation
// Q'' + (a - 2 q cos 2tau) Q = 0.

#include <functional>
#include <vector>

#include "oscimedia/floquet.hpp"
#include "oscimedia/integrator.hpp"
#include "oscimedia/medium.hpp"
#include "oscimedia/propagation.hpp"

namespace oscimedia {

struct MathieuParams {
  double a = 0.0;
  double q = 0.0;
};

// Leading order in b^2:
//   a = rho^2 (1 - (b^2/2) K (1 + cos^2 theta))
//   q = rho^2 (b^2/4) K (1 + cos^2 theta) - (b^2/2) K,      K = (n^2 - 1) / n^2
[[nodiscard]] MathieuParams mathieu_parameters(const MediumSpec& medium, const ModeSpec& mode,
                                               double b);

// H(tau) for beta = b cos(tau), from the analytic derivatives of alpha.
[[nodiscard]] double hill_potential(const MediumSpec& medium, const ModeSpec& mode, double b,
                                    double tau);

struct HillCoefficients {
  double theta0 = 0.0;
  std::vector<double> theta_l;  // l = 1..L

  [[nodiscard]] double potential(double tau) const;
};

// Projection of H on cos(2 l tau) by the periodic trapezoid rule over
// `grid` points in [0, pi).
[[nodiscard]] HillCoefficients hill_coefficients(const MediumSpec& medium, const ModeSpec& mode,
                                                 double b, int L = 8, int grid = 4096);

// (a, q) = (theta0, -theta1): the Mathieu equation with the exact first
// harmonic of H instead of its small-b expansion.
[[nodiscard]] MathieuParams projected_mathieu_parameters(const MediumSpec& medium,
                                                         const ModeSpec& mode, double b);

struct OscillatorStability {
  double half_trace = 1.0;
  CharacteristicExponent exponent;
};

using Potential = std::function<double(double)>;

// Monodromy over [0, pi] of Q'' + V(tau) Q = 0 for a pi-periodic V. The branch
// of Re nu comes from winding_estimate.
[[nodiscard]] OscillatorStability oscillator_stability(const Potential& potential,
                                                       double tolerance = ode::default_tolerance);
[[nodiscard]] OscillatorStability mathieu_stability(const MathieuParams& params,
                                                    double tolerance = ode::default_tolerance);
[[nodiscard]] OscillatorStability hill_stability(const HillCoefficients& coefficients,
                                                 double tolerance = ode::default_tolerance);

// The straight line traced by (q(rho), a(rho)) of mathieu_parameters as rho
// varies. Throws physics_domain_error for b = 0, where the line is undefined.
struct ResonanceLine {
  double slope = 0.0;
  double intercept = 0.0;

  [[nodiscard]] double at(double q) const noexcept { return slope * q + intercept; }
};

[[nodiscard]] ResonanceLine resonance_line(const MediumSpec& medium, double theta, double b);

struct ChartAxis {
  double lo = 0.0;
  double hi = 1.0;
  int count = 256;

  [[nodiscard]] std::vector<double> points() const;
};

enum class CellClass { stable, unstable, unknown };

struct StabilityChart {
  std::vector<double> a_grid;
  std::vector<double> q_grid;
  // Row-major: index = ia * q_grid.size() + iq.
  std::vector<CellClass> cells;
  std::vector<double> half_trace;  // NaN for unknown cells

  [[nodiscard]] CellClass cell(std::size_t ia, std::size_t iq) const {
    return cells[ia * q_grid.size() + iq];
  }
  [[nodiscard]] double trace_at(std::size_t ia, std::size_t iq) const {
    return half_trace[ia * q_grid.size() + iq];
  }
};

// |half_trace| <= 1 + 1e-9 counts as stable. Cells whose integration fails are
// marked unknown rather than aborting the chart. Each axis needs >= 16 points.
[[nodiscard]] StabilityChart stability_chart(const ChartAxis& a_axis, const ChartAxis& q_axis,
                                             double tolerance = ode::default_tolerance);

// Samples of Q and Q' on a uniform grid.
struct QTrajectory {
  std::vector<double> taus;
  std::vector<double> q;
  std::vector<double> dq;
  ode::IntegrationStats diagnostics;
};

[[nodiscard]] QTrajectory evolve_oscillator(const Potential& potential, double q0, double dq0,
                                            TauSpan span, const EvolutionOptions& options = {});

// Initial (Q, Q') that reproduce a linear-basis pair (f1, f2) at tau = span start.
struct QInitial {
  double q = 0.0;
  double dq = 0.0;
};

[[nodiscard]] QInitial q_initial_from_f12(const MediumSpec& medium, const ModeSpec& mode, double b,
                                          double tau, double f1, double f2);

// Inverse substitution back to (f1, f2) for beta = b cos(tau):
//     f1 = rho sqrt(alpha) Q,   f2 = Q' / sqrt(alpha) + alpha' Q / (2 alpha^{3/2}).
[[nodiscard]] Trajectory q_reconstruction(const MediumSpec& medium, const ModeSpec& mode, double b,
                                          const QTrajectory& q);

struct DeviationReport {
  MathieuParams params;
  double growth_rate_full = 0.0;     // fitted d log|f1| / dtau
  double growth_rate_mathieu = 0.0;
  double growth_rate_difference = 0.0;           // absolute
  double growth_rate_relative_difference = 0.0;  // |difference| / |growth_rate_full|
  // max_tau | |f1_full| - |f1_mathieu| |  divided by max_tau |f1_full|.
  double max_amplitude_deviation = 0.0;
};

struct MathieuComparison {
  // Mathieu equation with the first harmonic of H.
  DeviationReport projected;
  // Mathieu equation with the leading-order (a, q) of mathieu_parameters.
  DeviationReport small_b;
  Trajectory full;
  Trajectory mathieu_projected;
  Trajectory mathieu_small_b;
};

// Both solutions start from (f1, f2) = (1, 0). Growth rates are slopes of a
// least-squares line through log max|f1| per 2 pi period against the period start.
[[nodiscard]] MathieuComparison mathieu_vs_full_comparison(const MediumSpec& medium,
                                                           const ModeSpec& mode, double b,
                                                           int periods,
                                                           const EvolutionOptions& options = {});

// Least-squares slope of log(max |x| over each full 2 pi period) against the
// period start. Needs at least two full periods; a partial last period is
// ignored.
[[nodiscard]] double fitted_growth_rate(const std::vector<double>& taus,
                                        const std::vector<double>& magnitudes);

}  // namespace oscimedia
