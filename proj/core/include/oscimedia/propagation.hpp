#pragma once

// Evolution of a single Fourier mode of the field in the oscillating medium.
//
// Linear basis (f1, f2) along n1, n2:
//     d f1/dtau =  rho alpha(tau) f2
//     d f2/dtau = -rho kappa(tau) f1
//
// Polarization basis (f+, f-) along e, e*:
//     d f+/dtau = -i rho (eta+ f+ - eta- f-)
//     d f-/dtau = +i rho (eta+ f- - eta- f+)

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "oscimedia/integrator.hpp"
#include "oscimedia/medium.hpp"

namespace oscimedia {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;

// Orthonormal triad (n1, n2, khat) built from the wave vector and the
// direction of motion m, plus the complex polarization vector
// e = (sigma n1 - i n2 / sigma) / sqrt(2).
struct ModeBasis {
  Vec3 n1;
  Vec3 n2;
  Vec3 khat;
  CVec3 e;
  double sigma = 1.0;
  // Angle between k and m.
  double theta = 0.0;
};

// Throws physics_domain_error when k and m are (nearly) parallel, i.e.
// |k x m| < 1e-12 |k| |m|; that geometry is handled by collinear_evolution.
[[nodiscard]] ModeBasis mode_basis(const Vec3& k_direction, const Vec3& m_direction, double sigma);

enum class AmplitudeBasis { linear, polarization };

// (f1, f2) in the linear basis or (f+, f-) in the polarization basis.
struct AmplitudePair {
  Complex first{};
  Complex second{};
  AmplitudeBasis basis = AmplitudeBasis::linear;

  static AmplitudePair linear(Complex f1, Complex f2) {
    return {f1, f2, AmplitudeBasis::linear};
  }
  static AmplitudePair polarization(Complex f_plus, Complex f_minus) {
    return {f_plus, f_minus, AmplitudeBasis::polarization};
  }
};

// f+- = (f1 / sigma +- i sigma f2) / sqrt(2) and its inverse.
[[nodiscard]] AmplitudePair to_polarization(const AmplitudePair& pair, double sigma);
[[nodiscard]] AmplitudePair to_linear(const AmplitudePair& pair, double sigma);

struct Trajectory {
  std::vector<double> taus;
  std::vector<AmplitudePair> states;
  ode::IntegrationStats diagnostics;

  [[nodiscard]] const AmplitudePair& final_state() const { return states.back(); }
  [[nodiscard]] std::size_t size() const noexcept { return taus.size(); }
};

struct TauSpan {
  double begin = 0.0;
  double end = two_pi;
};

struct EvolutionOptions {
  ode::IntegratorOptions integrator;
  int samples_per_period = 64;
};

// Generators of the two first-order systems. The profile's amplitude is
// checked against min(1, n) up front.
[[nodiscard]] ode::Generator linear_generator(const MediumSpec& medium, const ModeSpec& mode,
                                              const MotionProfile& profile);
[[nodiscard]] ode::Generator polarization_generator(const MediumSpec& medium,
                                                    const ModeSpec& mode,
                                                    const MotionProfile& profile, double sigma);

[[nodiscard]] Trajectory evolve_f12(const MediumSpec& medium, const ModeSpec& mode,
                                    const MotionProfile& profile, const AmplitudePair& init,
                                    TauSpan span, const EvolutionOptions& options = {});

[[nodiscard]] Trajectory evolve_fpm(const MediumSpec& medium, const ModeSpec& mode,
                                    const MotionProfile& profile, double sigma,
                                    const AmplitudePair& init, TauSpan span,
                                    const EvolutionOptions& options = {});

// Precession angle psi(tau) = rho * integral_0^tau alpha(beta(u)) du.
[[nodiscard]] double precession_angle(const MediumSpec& medium, const MotionProfile& profile,
                                      double rho, double tau);

// Closed-form evolution when k is parallel to the velocity:
//     f(tau) = f(0) cos psi + (khat x f(0)) sin psi.
// Throws validation_error if init is not transverse to khat.
[[nodiscard]] CVec3 collinear_evolution(const MediumSpec& medium, const MotionProfile& profile,
                                        double rho, const Vec3& khat, const CVec3& init,
                                        double tau);

// Steady motion: with sigma = (alpha/kappa)^(1/4) the polarization amplitudes
// decouple into f+ e^{-i omega1 tau} and f- e^{+i omega1 tau}; the overall
// phase advances as omega0 tau.
struct ConstantVelocitySolution {
  double omega0 = 0.0;  // n rho gamma beta cos(theta), in units of Omega
  double omega1 = 0.0;  // rho sqrt(alpha kappa)
  double sigma = 1.0;
  // omega1 > |omega0|: positive and negative frequency parts separate.
  bool frequency_split_valid = true;
  AmplitudePair initial;

  // (f+, f-) at tau, without the overall phase factor.
  [[nodiscard]] AmplitudePair at(double tau) const;
};

// `init` may be given in either basis; it is converted with this sigma.
[[nodiscard]] ConstantVelocitySolution constant_velocity_solution(const MediumSpec& medium,
                                                                  const ModeSpec& mode, double beta,
                                                                  const AmplitudePair& init);

}  // namespace oscimedia
