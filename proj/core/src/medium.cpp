#include "oscimedia/medium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "oscimedia/errors.hpp"

namespace oscimedia {

namespace {

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (got " << value << ")";
  return os.str();
}

// Harmonic-segment phase, n rho cos(theta) (n^2-1)/s * atan(b sin(tau)/s), s = sqrt(n^2-b^2).
double harmonic_phase(double n, double b, double scale, double tau) {
  const double s = std::sqrt(n * n - b * b);
  return scale * (n * n - 1.0) / s * std::atan(b * std::sin(tau) / s);
}

}  // namespace

void MediumSpec::validate() const {
  if (!std::isfinite(refractive_index) || refractive_index < 1.0) {
    throw validation_error(describe("refractive index must satisfy n >= 1", refractive_index));
  }
}

MotionProfile::MotionProfile(ProfileKind kind, double b, int periods)
    : kind_(kind), b_(b), periods_(periods) {
  if (!std::isfinite(b) || b < 0.0 || b >= 1.0) {
    throw validation_error(describe("velocity amplitude must satisfy 0 <= b < 1", b));
  }
  if (kind == ProfileKind::windowed && periods < 1) {
    throw validation_error(describe("windowed profile needs N >= 1 periods", periods));
  }
}

MotionProfile MotionProfile::constant(double b) { return {ProfileKind::constant, b, 0}; }

MotionProfile MotionProfile::harmonic(double b) { return {ProfileKind::harmonic, b, 0}; }

MotionProfile MotionProfile::windowed(double b, int periods) {
  return {ProfileKind::windowed, b, periods};
}

double MotionProfile::beta(double tau) const noexcept {
  switch (kind_) {
    case ProfileKind::constant:
      return b_;
    case ProfileKind::harmonic:
      return b_ * std::cos(tau);
    case ProfileKind::windowed:
      if (tau <= 0.0 || tau >= window_end()) return b_;
      return b_ * std::cos(tau);
  }
  return b_;
}

double beta_at(const MotionProfile& profile, double tau) noexcept { return profile.beta(tau); }

void ModeSpec::validate() const {
  if (!std::isfinite(rho) || rho <= 0.0) {
    throw validation_error(describe("mode frequency ratio must satisfy rho > 0", rho));
  }
  if (!std::isfinite(theta) || theta < 0.0 || theta > std::numbers::pi) {
    throw validation_error(describe("propagation angle must lie in [0, pi]", theta));
  }
}

void require_subluminal(const MediumSpec& medium, double beta) {
  medium.validate();
  const double n = medium.refractive_index;
  const double limit = std::min(1.0, n);
  if (!std::isfinite(beta) || std::abs(beta) >= limit) {
    throw physics_domain_error(describe("medium velocity must satisfy |beta| < min(1, n)", beta));
  }
  if (n * n - beta * beta <= 0.0) {
    throw physics_domain_error(describe("n^2 - beta^2 must be positive", beta));
  }
}

KinematicCoefficients coefficients(const MediumSpec& medium, const ModeSpec& mode, double beta,
                                   double sigma) {
  require_subluminal(medium, beta);
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw validation_error(describe("sigma must be positive", sigma));
  }
  const double n2 = medium.refractive_index * medium.refractive_index;
  const double beta2 = beta * beta;
  const double cos_theta = std::cos(mode.theta);

  KinematicCoefficients k;
  k.gamma = (n2 - 1.0) / (n2 - beta2);
  k.alpha = 1.0 - k.gamma * beta2;
  k.kappa = 1.0 - cos_theta * cos_theta * k.gamma * beta2;
  k.sigma = sigma;
  const double s2 = sigma * sigma;
  k.eta_plus = 0.5 * (k.alpha / s2 + k.kappa * s2);
  k.eta_minus = 0.5 * (k.alpha / s2 - k.kappa * s2);
  return k;
}

double sigma_reference(const MediumSpec& medium, const ModeSpec& mode, double beta_ref) {
  const auto k = coefficients(medium, mode, beta_ref, 1.0);
  return std::sqrt(std::sqrt(k.alpha / k.kappa));
}

double accumulated_phase(const MediumSpec& medium, const ModeSpec& mode,
                         const MotionProfile& profile, double tau) {
  const double b = profile.amplitude();
  require_subluminal(medium, b);
  const double n = medium.refractive_index;
  const double scale = n * mode.rho * std::cos(mode.theta);
  const double gamma_b = (n * n - 1.0) / (n * n - b * b);

  switch (profile.kind()) {
    case ProfileKind::constant:
      return scale * gamma_b * b * tau;
    case ProfileKind::harmonic:
      return harmonic_phase(n, b, scale, tau);
    case ProfileKind::windowed:
      if (tau < 0.0) return scale * gamma_b * b * tau;
      if (tau > profile.window_end()) {
        return harmonic_phase(n, b, scale, profile.window_end()) +
               scale * gamma_b * b * (tau - profile.window_end());
      }
      return harmonic_phase(n, b, scale, tau);
  }
  return 0.0;
}

AlphaJet harmonic_alpha(const MediumSpec& medium, double b, double tau) noexcept {
  const double n2 = medium.refractive_index * medium.refractive_index;
  const double b2 = b * b;
  const double cos_t = std::cos(tau);
  const double c = b2 * cos_t * cos_t;
  const double dc = -b2 * std::sin(2.0 * tau);
  const double ddc = -2.0 * b2 * std::cos(2.0 * tau);

  const double denom = n2 - c;
  const double da_dc = n2 * (1.0 - n2) / (denom * denom);
  const double d2a_dc2 = 2.0 * n2 * (1.0 - n2) / (denom * denom * denom);

  AlphaJet jet;
  jet.value = n2 * (1.0 - c) / denom;
  jet.first = da_dc * dc;
  jet.second = d2a_dc2 * dc * dc + da_dc * ddc;
  return jet;
}

}  // namespace oscimedia
