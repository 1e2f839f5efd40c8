#pragma once

// Photon pairs produced by a window of N oscillation periods. The medium moves
// with constant velocity b before and after the window, so in and out modes
// are defined with sigma taken at beta = b. Starting from the fundamental
// solution f1 = (1, 0) the Bogoliubov coefficients after the window are
//
//     alpha = e^{-i phi} f1+(2 pi N),   beta = e^{-i phi} f1-(2 pi N)
//
// and |f1-|^2 is the mean number of photons of one type per phase-space cell.
// Units: hbar = 1, so a phase-space cell has volume h^3 = (2 pi)^3.

#include <complex>
#include <vector>

#include "oscimedia/integrator.hpp"
#include "oscimedia/medium.hpp"
#include "oscimedia/propagation.hpp"

namespace oscimedia {

struct SplitDiagnostic {
  bool valid = true;
  double omega0 = 0.0;  // n rho gamma b |cos theta|
  double omega1 = 0.0;  // rho sqrt(alpha kappa)
};

// The in/out split needs omega1 > |omega0| at beta = b.
[[nodiscard]] SplitDiagnostic validate_in_out_split(const MediumSpec& medium, const ModeSpec& mode,
                                                    double b);

struct BogoliubovCoefficients {
  std::complex<double> alpha_coeff{1.0, 0.0};
  std::complex<double> beta_coeff{};
  int window_periods = 0;
  double global_phase = 0.0;
  double sigma = 1.0;
  ode::IntegrationStats diagnostics;

  [[nodiscard]] double density() const { return std::norm(beta_coeff); }
};

// Throws physics_domain_error if the in/out split is invalid.
[[nodiscard]] BogoliubovCoefficients bogoliubov_evolution(
    const MediumSpec& medium, const ModeSpec& mode, double b, int periods,
    const ode::IntegratorOptions& options = {});

struct PhotonSeries {
  std::vector<double> taus;
  std::vector<double> density;
  // max_tau | |f1-|^2 - |f2+|^2 | / max(1, |f1-|^2)
  double max_symmetry_defect = 0.0;
  ode::IntegrationStats diagnostics;
};

// n(tau) = |f1-(tau)|^2 on a uniform grid over [0, 2 pi N]. The pair symmetry
// |f1-|^2 = |f2+|^2 is checked at every sample; a defect above 1e-10 raises
// numerical_error.
[[nodiscard]] PhotonSeries photon_density_series(const MediumSpec& medium, const ModeSpec& mode,
                                                 double b, int periods, int samples_per_period,
                                                 const ode::IntegratorOptions& options = {});

struct PhaseSpaceNode {
  double rho = 1.0;
  double theta = 1.5707963267948966;
  double weight = 1.0;  // measure of the wave-vector cell, in rho units
};

struct PhaseSpaceRegion {
  double volume = 1.0;
  std::vector<PhaseSpaceNode> nodes;

  void validate() const;
};

// 2 V sum_i w_i n(k_i, 2 pi N) / (2 pi)^3, summed in node order. The factor 2
// counts both photon types. A failing node aborts with its index in the message.
[[nodiscard]] double phase_space_photon_count(const PhaseSpaceRegion& region,
                                              const MediumSpec& medium, double b, int periods,
                                              const ode::IntegratorOptions& options = {});

}  // namespace oscimedia
