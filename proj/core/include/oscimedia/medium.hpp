#pragma once

// Kinematics of a homogeneous, dispersion-free medium whose velocity has a
// fixed direction and a time-dependent magnitude. Everything is expressed in
// dimensionless variables: tau = Omega t, rho = omega / Omega with
// omega = c k / n, and beta = v / c.

#include <numbers>

namespace oscimedia {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct MediumSpec {
  double refractive_index = 2.0;

  // Throws validation_error unless n is finite and n >= 1.
  void validate() const;
};

enum class ProfileKind { constant, harmonic, windowed };

// Medium velocity beta(tau).
//
//   constant:  beta = b
//   harmonic:  beta = b cos(tau)
//   windowed:  b for tau < 0, b cos(tau) on [0, 2 pi N], b for tau > 2 pi N
//
// The window joins sit on cosine maxima, so beta and d beta / d tau are both
// continuous there.
class MotionProfile {
 public:
  static MotionProfile constant(double b);
  static MotionProfile harmonic(double b);
  static MotionProfile windowed(double b, int periods);

  [[nodiscard]] ProfileKind kind() const noexcept { return kind_; }
  [[nodiscard]] double amplitude() const noexcept { return b_; }
  [[nodiscard]] int periods() const noexcept { return periods_; }
  // End of the oscillating segment, 2 pi N (windowed profiles only).
  [[nodiscard]] double window_end() const noexcept { return two_pi * periods_; }

  [[nodiscard]] double beta(double tau) const noexcept;

 private:
  MotionProfile(ProfileKind kind, double b, int periods);

  ProfileKind kind_;
  double b_;
  int periods_;
};

// Fourier mode: rho = omega / Omega and the angle theta between the wave
// vector and the direction of motion.
struct ModeSpec {
  double rho = 1.0;
  double theta = std::numbers::pi / 2.0;

  void validate() const;
};

struct KinematicCoefficients {
  double gamma = 0.0;
  double alpha = 1.0;
  double kappa = 1.0;
  double sigma = 1.0;
  double eta_plus = 1.0;
  double eta_minus = 0.0;
};

[[nodiscard]] double beta_at(const MotionProfile& profile, double tau) noexcept;

// Throws physics_domain_error unless |beta| < min(1, n).
void require_subluminal(const MediumSpec& medium, double beta);

// gamma = (n^2 - 1) / (n^2 - beta^2), alpha = 1 - gamma beta^2,
// kappa = 1 - cos^2(theta) gamma beta^2, eta_pm = (alpha / sigma^2 +- kappa sigma^2) / 2.
[[nodiscard]] KinematicCoefficients coefficients(const MediumSpec& medium, const ModeSpec& mode,
                                                 double beta, double sigma);

// sigma = (alpha / kappa)^(1/4) at beta_ref; makes eta_minus vanish there.
[[nodiscard]] double sigma_reference(const MediumSpec& medium, const ModeSpec& mode,
                                     double beta_ref);

// Phase phi(tau) = n rho cos(theta) * integral_0^tau gamma beta dtau' removed from
// the mode amplitude. Closed forms for every profile kind.
[[nodiscard]] double accumulated_phase(const MediumSpec& medium, const ModeSpec& mode,
                                       const MotionProfile& profile, double tau);

// alpha(tau) and its first two tau-derivatives for beta = b cos(tau).
struct AlphaJet {
  double value = 1.0;
  double first = 0.0;
  double second = 0.0;
};

[[nodiscard]] AlphaJet harmonic_alpha(const MediumSpec& medium, double b, double tau) noexcept;

}  // namespace oscimedia
