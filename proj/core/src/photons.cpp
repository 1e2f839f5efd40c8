#include "oscimedia/photons.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oscimedia/errors.hpp"

namespace oscimedia {

namespace {

void check_window(int periods) {
  if (periods < 1) throw validation_error("window needs at least one period");
}

void require_split(const MediumSpec& medium, const ModeSpec& mode, double b) {
  const auto split = validate_in_out_split(medium, mode, b);
  if (!split.valid) {
    throw physics_domain_error("in/out split invalid: omega1 = " + std::to_string(split.omega1) +
                               " <= |omega0| = " + std::to_string(split.omega0));
  }
}

}  // namespace

SplitDiagnostic validate_in_out_split(const MediumSpec& medium, const ModeSpec& mode, double b) {
  SplitDiagnostic d;
  const double n2 = medium.refractive_index * medium.refractive_index;
  if (!(std::abs(b) < std::min(1.0, medium.refractive_index)) || !(mode.rho > 0.0)) {
    d.valid = false;
    return d;
  }
  const double gamma = (n2 - 1.0) / (n2 - b * b);
  const double c = std::cos(mode.theta);
  const double alpha = 1.0 - gamma * b * b;
  const double kappa = 1.0 - c * c * gamma * b * b;
  d.omega0 = medium.refractive_index * mode.rho * gamma * std::abs(b) * std::abs(c);
  d.omega1 = mode.rho * std::sqrt(alpha * kappa);
  d.valid = d.omega1 > d.omega0;
  return d;
}

BogoliubovCoefficients bogoliubov_evolution(const MediumSpec& medium, const ModeSpec& mode,
                                            double b, int periods,
                                            const ode::IntegratorOptions& options) {
  check_window(periods);
  mode.validate();
  require_subluminal(medium, b);
  require_split(medium, mode, b);

  const auto profile = MotionProfile::windowed(b, periods);
  BogoliubovCoefficients out;
  out.window_periods = periods;
  out.sigma = sigma_reference(medium, mode, b);
  const auto generator = polarization_generator(medium, mode, profile, out.sigma);
  ode::State<1> y;
  y << 1.0, 0.0;
  y = ode::integrate<1>(generator, y, 0.0, profile.window_end(), options, &out.diagnostics);
  out.global_phase = accumulated_phase(medium, mode, profile, profile.window_end());
  const std::complex<double> phase = std::polar(1.0, -out.global_phase);
  out.alpha_coeff = phase * y(0);
  out.beta_coeff = phase * y(1);
  return out;
}

PhotonSeries photon_density_series(const MediumSpec& medium, const ModeSpec& mode, double b,
                                   int periods, int samples_per_period,
                                   const ode::IntegratorOptions& options) {
  check_window(periods);
  mode.validate();
  require_subluminal(medium, b);
  require_split(medium, mode, b);

  const auto profile = MotionProfile::windowed(b, periods);
  const double sigma = sigma_reference(medium, mode, b);
  const auto generator = polarization_generator(medium, mode, profile, sigma);
  const auto samples = ode::uniform_samples(0.0, profile.window_end(), samples_per_period);

  PhotonSeries out;
  out.taus.reserve(samples.size());
  out.density.reserve(samples.size());
  ode::integrate<2>(generator, ode::State<2>::Identity(), 0.0, profile.window_end(), samples,
                    options, &out.diagnostics, [&](double t, const ode::State<2>& s) {
                      // Column 0 is f1 = (f1+, f1-), column 1 is f2.
                      const double n1 = std::norm(s(1, 0));
                      const double n2 = std::norm(s(0, 1));
                      out.taus.push_back(t);
                      out.density.push_back(n1);
                      out.max_symmetry_defect = std::max(
                          out.max_symmetry_defect, std::abs(n1 - n2) / std::max(1.0, n1));
                    });
  if (out.max_symmetry_defect > 1e-10) {
    throw numerical_error("pair symmetry violated: defect " +
                              std::to_string(out.max_symmetry_defect),
                          profile.window_end());
  }
  return out;
}

void PhaseSpaceRegion::validate() const {
  if (!(volume > 0.0) || !std::isfinite(volume)) {
    throw validation_error("phase-space region volume must be positive");
  }
  if (nodes.empty()) throw validation_error("phase-space region has no nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i].weight > 0.0) || !std::isfinite(nodes[i].weight)) {
      throw validation_error("phase-space node " + std::to_string(i) +
                             ": weight must be positive");
    }
  }
}

double phase_space_photon_count(const PhaseSpaceRegion& region, const MediumSpec& medium,
                                double b, int periods, const ode::IntegratorOptions& options) {
  region.validate();
  const double cell = two_pi * two_pi * two_pi;
  double sum = 0.0;
  for (std::size_t i = 0; i < region.nodes.size(); ++i) {
    const auto& node = region.nodes[i];
    const std::string where = "phase-space node " + std::to_string(i) + ": ";
    try {
      const auto c =
          bogoliubov_evolution(medium, ModeSpec{node.rho, node.theta}, b, periods, options);
      sum += node.weight * c.density();
    } catch (const validation_error& e) {
      throw validation_error(where + e.what());
    } catch (const physics_domain_error& e) {
      throw physics_domain_error(where + e.what());
    } catch (const numerical_error& e) {
      throw numerical_error(where + e.what(), e.tau());
    }
  }
  return 2.0 * region.volume * sum / cell;
}

}  // namespace oscimedia
