#pragma once

// Floquet analysis of the (f+, f-) system for harmonic motion. The
// coefficients depend on cos^2(tau), so the period in tau is pi and the
// monodromy eigenvalues are exp(+- i nu pi).

#include <complex>
#include <optional>
#include <vector>

#include "oscimedia/integrator.hpp"
#include "oscimedia/medium.hpp"

namespace oscimedia {

// Rows are the fundamental solutions at tau = pi:
//     [ f1+(pi)  f1-(pi) ]      f1 starts at (1, 0)
//     [ f2+(pi)  f2-(pi) ]      f2 starts at (0, 1)
struct MonodromyResult {
  std::complex<double> m11{1.0, 0.0};
  std::complex<double> m12{};
  std::complex<double> m21{};
  std::complex<double> m22{1.0, 0.0};
  std::complex<double> determinant{1.0, 0.0};
  std::complex<double> half_trace{1.0, 0.0};
  ode::IntegrationStats diagnostics;
};

struct CharacteristicExponent {
  double re = 0.0;
  double im = 0.0;  // >= 0
  bool stable = true;
};

[[nodiscard]] MonodromyResult monodromy(const MediumSpec& medium, const ModeSpec& mode, double b,
                                        double sigma, double tolerance = ode::default_tolerance);

// Solves cos(pi nu) = Re(half_trace); |half_trace| within 1e-12 of 1 counts
// as stable. Without a hint the principal value (re in [0, 1]) is returned.
// With a hint the branch 2k +- re0 is the
// candidate nearest hint.re among those not below it (ties go up), which keeps
// Re nu continuous and non-decreasing along an ascending rho scan.
[[nodiscard]] CharacteristicExponent characteristic_exponent(
    const MonodromyResult& m, std::optional<CharacteristicExponent> branch_hint = std::nullopt);

[[nodiscard]] CharacteristicExponent exponent_from_half_trace(
    double half_trace, std::optional<double> branch_hint = std::nullopt);

// Branch closest to a continuous estimate of Re nu (see winding_estimate);
// ties go to the smaller candidate.
[[nodiscard]] CharacteristicExponent exponent_near(double half_trace, double estimate);

// Conserved form that singles out the Floquet solution followed by
// winding_estimate: |f+|^2 - |f-|^2 for the (f+, f-) system, Im(conj(Q) Q')
// for (Q, Q') with Q'' + V Q = 0.
enum class FloquetNorm { polarization, oscillator };

// Re nu from the phase winding over [0, pi] of the Floquet solution with the
// larger conserved norm: -delta arg f+ / pi, or +delta arg(Q - i Q') / pi.
// Neither quantity vanishes along that solution, so the unwrapped phase is
// well defined; its change equals pi times one of the branches 2k +- re0, so
// the estimate pins the branch of isolated queries. `samples` must resolve
// the phase (steps below pi).
[[nodiscard]] double winding_estimate(const ode::Generator& generator, FloquetNorm norm,
                                      double tolerance = ode::default_tolerance,
                                      int samples = 512);

// Exponent at a single (rho, theta) with the branch fixed by winding_estimate.
[[nodiscard]] CharacteristicExponent isolated_exponent(const MediumSpec& medium,
                                                       const ModeSpec& mode, double b,
                                                       double tolerance = ode::default_tolerance);

struct RhoRange {
  double lo = 0.9;
  double hi = 1.1;
};

struct ScanPoint {
  double rho = 0.0;
  double half_trace = 1.0;
  CharacteristicExponent exponent;
};

// Ascending rho scan (linspace, endpoints included). The first point's branch
// comes from winding_estimate, later points are threaded by continuity.
[[nodiscard]] std::vector<ScanPoint> exponent_scan(const MediumSpec& medium, double b, double theta,
                                                   RhoRange range, int sample_count,
                                                   double tolerance = ode::default_tolerance);

struct ResonanceRegion {
  int order = 1;
  double rho_lo = 0.0;
  double rho_hi = 0.0;
  double rho_peak = 0.0;
  double im_nu_peak = 0.0;

  [[nodiscard]] double width() const noexcept { return rho_hi - rho_lo; }
};

struct ResonanceSearch {
  double tolerance = ode::default_tolerance;
  // Bisection and golden-section resolution in rho.
  double rho_resolution = 1e-6;
  // Coarse samples across the search window.
  int coarse_samples = 400;
};

// The order-m unstable interval (Re nu = m, Im nu > 0). Throws
// resonance_not_found when |half_trace| never exceeds 1 near rho ~ m.
[[nodiscard]] ResonanceRegion resonance_region(const MediumSpec& medium, double b, double theta,
                                               int order, const ResonanceSearch& search = {});

}  // namespace oscimedia
