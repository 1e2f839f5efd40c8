#include "oscimedia/propagation.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oscimedia/errors.hpp"

namespace oscimedia {

namespace {

constexpr Complex I{0.0, 1.0};

// alpha and kappa along a profile, with the invariant parts precomputed.
struct CoefficientField {
  double n2_minus_1;
  double n2;
  double cos2_theta;
  MotionProfile profile;

  CoefficientField(const MediumSpec& medium, const ModeSpec& mode, const MotionProfile& p)
      : n2_minus_1(medium.refractive_index * medium.refractive_index - 1.0),
        n2(medium.refractive_index * medium.refractive_index),
        cos2_theta(std::cos(mode.theta) * std::cos(mode.theta)),
        profile(p) {}

  void at(double tau, double& alpha, double& kappa) const {
    const double beta = profile.beta(tau);
    const double gb2 = n2_minus_1 / (n2 - beta * beta) * beta * beta;
    alpha = 1.0 - gb2;
    kappa = 1.0 - cos2_theta * gb2;
  }
};

void check_inputs(const MediumSpec& medium, const ModeSpec& mode, const MotionProfile& profile) {
  mode.validate();
  require_subluminal(medium, profile.amplitude());
}

Trajectory run(const ode::Generator& generator, const AmplitudePair& init, TauSpan span,
               const EvolutionOptions& options) {
  if (!(span.end > span.begin)) {
    throw validation_error("evolution span must satisfy end > begin");
  }
  const auto samples = ode::uniform_samples(span.begin, span.end, options.samples_per_period);
  Trajectory traj;
  traj.taus.reserve(samples.size());
  traj.states.reserve(samples.size());
  ode::State<1> y;
  y << init.first, init.second;
  ode::integrate<1>(generator, y, span.begin, span.end, samples, options.integrator,
                    &traj.diagnostics, [&](double t, const ode::State<1>& s) {
                      traj.taus.push_back(t);
                      traj.states.push_back({s(0), s(1), init.basis});
                    });
  return traj;
}

}  // namespace

ModeBasis mode_basis(const Vec3& k_direction, const Vec3& m_direction, double sigma) {
  const double k_norm = k_direction.norm();
  const double m_norm = m_direction.norm();
  if (!(k_norm > 0.0) || !(m_norm > 0.0)) {
    throw validation_error("wave vector and velocity direction must be nonzero");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw validation_error("sigma must be positive");
  }
  const Vec3 k_cross_m = k_direction.cross(m_direction);
  if (k_cross_m.norm() < 1e-12 * k_norm * m_norm) {
    throw physics_domain_error(
        "wave vector is parallel to the velocity direction; use collinear_evolution");
  }
  ModeBasis basis;
  basis.khat = k_direction / k_norm;
  const Vec3 mhat = m_direction / m_norm;
  const Vec3 perp = basis.khat.cross(mhat);
  const double k_perp = perp.norm();
  basis.n1 = basis.khat.cross(perp) / k_perp;
  basis.n2 = perp / k_perp;
  basis.sigma = sigma;
  basis.e = (sigma * basis.n1.cast<Complex>() - (I / sigma) * basis.n2.cast<Complex>()) /
            std::numbers::sqrt2;
  basis.theta = std::atan2(k_cross_m.norm(), k_direction.dot(m_direction));
  return basis;
}

AmplitudePair to_polarization(const AmplitudePair& pair, double sigma) {
  if (pair.basis == AmplitudeBasis::polarization) return pair;
  const Complex a = pair.first / sigma;
  const Complex b = I * sigma * pair.second;
  return AmplitudePair::polarization((a + b) / std::numbers::sqrt2,
                                     (a - b) / std::numbers::sqrt2);
}

AmplitudePair to_linear(const AmplitudePair& pair, double sigma) {
  if (pair.basis == AmplitudeBasis::linear) return pair;
  const Complex sum = (pair.first + pair.second) / std::numbers::sqrt2;
  const Complex diff = (pair.first - pair.second) / std::numbers::sqrt2;
  return AmplitudePair::linear(sigma * sum, diff / (I * sigma));
}

ode::Generator linear_generator(const MediumSpec& medium, const ModeSpec& mode,
                                const MotionProfile& profile) {
  check_inputs(medium, mode, profile);
  return [field = CoefficientField(medium, mode, profile), rho = mode.rho](double tau) {
    double alpha, kappa;
    field.at(tau, alpha, kappa);
    ode::Matrix2c a;
    a << 0.0, rho * alpha, -rho * kappa, 0.0;
    return a;
  };
}

ode::Generator polarization_generator(const MediumSpec& medium, const ModeSpec& mode,
                                      const MotionProfile& profile, double sigma) {
  check_inputs(medium, mode, profile);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw validation_error("sigma must be positive");
  }
  return [field = CoefficientField(medium, mode, profile), rho = mode.rho,
          s2 = sigma * sigma](double tau) {
    double alpha, kappa;
    field.at(tau, alpha, kappa);
    const double eta_plus = 0.5 * (alpha / s2 + kappa * s2);
    const double eta_minus = 0.5 * (alpha / s2 - kappa * s2);
    ode::Matrix2c a;
    a << Complex(0.0, -rho * eta_plus), Complex(0.0, rho * eta_minus),
        Complex(0.0, -rho * eta_minus), Complex(0.0, rho * eta_plus);
    return a;
  };
}

Trajectory evolve_f12(const MediumSpec& medium, const ModeSpec& mode,
                      const MotionProfile& profile, const AmplitudePair& init, TauSpan span,
                      const EvolutionOptions& options) {
  if (init.basis != AmplitudeBasis::linear) {
    throw validation_error("evolve_f12 expects an initial pair in the linear basis");
  }
  return run(linear_generator(medium, mode, profile), init, span, options);
}

Trajectory evolve_fpm(const MediumSpec& medium, const ModeSpec& mode,
                      const MotionProfile& profile, double sigma, const AmplitudePair& init,
                      TauSpan span, const EvolutionOptions& options) {
  if (init.basis != AmplitudeBasis::polarization) {
    throw validation_error("evolve_fpm expects an initial pair in the polarization basis");
  }
  return run(polarization_generator(medium, mode, profile, sigma), init, span, options);
}

double precession_angle(const MediumSpec& medium, const MotionProfile& profile, double rho,
                        double tau) {
  require_subluminal(medium, profile.amplitude());
  const double n2 = medium.refractive_index * medium.refractive_index;
  auto alpha = [&](double u) {
    const double beta = profile.beta(u);
    return n2 * (1.0 - beta * beta) / (n2 - beta * beta);
  };
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;

  // Panels of at most pi/2 keep every panel free of window kinks, since the
  // joins sit at multiples of 2 pi.
  const double lo = std::min(0.0, tau);
  const double hi = std::max(0.0, tau);
  const double panel = std::numbers::pi / 2.0;
  double total = 0.0;
  for (double a = lo; a < hi;) {
    const double b = std::min(hi, (std::floor(a / panel + 1e-12) + 1.0) * panel);
    total += Quadrature::integrate(alpha, a, b, 10, 1e-15);
    a = b;
  }
  return rho * (tau >= 0.0 ? total : -total);
}

CVec3 collinear_evolution(const MediumSpec& medium, const MotionProfile& profile, double rho,
                          const Vec3& khat, const CVec3& init, double tau) {
  if (!(rho > 0.0)) throw validation_error("rho must be positive");
  const double k_norm = khat.norm();
  if (!(k_norm > 0.0)) throw validation_error("wave direction must be nonzero");
  const CVec3 k = (khat / k_norm).cast<Complex>();
  if (std::abs(k.dot(init)) > 1e-12 * std::max(1.0, init.norm())) {
    throw validation_error("initial amplitude must be transverse to the wave vector");
  }
  const double psi = precession_angle(medium, profile, rho, tau);
  return init * std::cos(psi) + k.cross(init) * std::sin(psi);
}

AmplitudePair ConstantVelocitySolution::at(double tau) const {
  return AmplitudePair::polarization(initial.first * std::exp(-I * omega1 * tau),
                                     initial.second * std::exp(I * omega1 * tau));
}

ConstantVelocitySolution constant_velocity_solution(const MediumSpec& medium,
                                                    const ModeSpec& mode, double beta,
                                                    const AmplitudePair& init) {
  mode.validate();
  const double sigma = sigma_reference(medium, mode, beta);
  const auto k = coefficients(medium, mode, beta, sigma);
  ConstantVelocitySolution s;
  s.sigma = sigma;
  s.omega0 = medium.refractive_index * mode.rho * k.gamma * beta * std::cos(mode.theta);
  s.omega1 = mode.rho * std::sqrt(k.alpha * k.kappa);
  s.frequency_split_valid = s.omega1 > std::abs(s.omega0);
  s.initial = to_polarization(init, sigma);
  return s;
}

}  // namespace oscimedia
