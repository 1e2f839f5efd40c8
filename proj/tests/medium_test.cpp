#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oscimedia/errors.hpp"
#include "oscimedia/medium.hpp"
#include "support/oracles.hpp"

using namespace oscimedia;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(Medium, BetaProfiles) {
  EXPECT_DOUBLE_EQ(MotionProfile::harmonic(0.3).beta(0.0), 0.3);
  EXPECT_NEAR(MotionProfile::harmonic(0.3).beta(pi / 2), 0.0, 1e-16);
  EXPECT_DOUBLE_EQ(MotionProfile::constant(0.3).beta(17.0), 0.3);
  const auto w = MotionProfile::windowed(0.3, 2);
  EXPECT_DOUBLE_EQ(w.beta(-1.0), 0.3);
  EXPECT_DOUBLE_EQ(w.beta(4 * pi + 1.0), 0.3);
  EXPECT_DOUBLE_EQ(w.beta(pi), -0.3);
  EXPECT_DOUBLE_EQ(beta_at(w, 1.0), 0.3 * std::cos(1.0));
}

TEST(Medium, WindowJoinsAreSmooth) {
  const auto w = MotionProfile::windowed(0.5, 3);
  const double h = 1e-6;
  for (double join : {0.0, w.window_end()}) {
    EXPECT_NEAR(w.beta(join - h), w.beta(join + h), 1e-11);
    const double left = (w.beta(join) - w.beta(join - h)) / h;
    const double right = (w.beta(join + h) - w.beta(join)) / h;
    EXPECT_NEAR(left, right, 1e-6);
  }
}

TEST(Medium, RejectsInvalidInputs) {
  EXPECT_THROW(MotionProfile::harmonic(1.0), validation_error);
  EXPECT_THROW(MotionProfile::harmonic(-0.1), validation_error);
  EXPECT_THROW(MotionProfile::windowed(0.3, 0), validation_error);
  EXPECT_THROW((ModeSpec{0.0, 1.0}.validate()), validation_error);
  EXPECT_THROW((ModeSpec{1.0, 4.0}.validate()), validation_error);
  EXPECT_THROW(MediumSpec{0.9}.validate(), validation_error);
  EXPECT_NO_THROW(MediumSpec{1.0}.validate());
  EXPECT_THROW(require_subluminal(MediumSpec{2.0}, 1.0), physics_domain_error);
  EXPECT_THROW(require_subluminal(MediumSpec{1.0}, 1.0), physics_domain_error);
  EXPECT_THROW((void)coefficients(MediumSpec{2.0}, ModeSpec{}, 1.2, 1.0), physics_domain_error);
}

TEST(Medium, CoefficientValues) {
  const MediumSpec m{2.0};
  for (double theta : {0.0, 0.7, pi / 2}) {
    const auto c = coefficients(m, ModeSpec{1.0, theta}, 0.0, 1.0);
    EXPECT_DOUBLE_EQ(c.gamma, 0.75);
    EXPECT_DOUBLE_EQ(c.alpha, 1.0);
    EXPECT_DOUBLE_EQ(c.kappa, 1.0);
  }
  // gamma = 3 / 3.91, alpha = 1 - 0.09 gamma, by hand.
  const auto c = coefficients(m, ModeSpec{1.0, pi / 2}, 0.3, 1.0);
  EXPECT_NEAR(c.gamma, 3.0 / 3.91, 1e-15);
  EXPECT_NEAR(c.gamma, 0.7672634, 5e-8);
  EXPECT_NEAR(c.alpha, 0.9309463, 5e-8);
  EXPECT_EQ(c.kappa, 1.0);

  const double sigma = 0.98227;
  const auto e = coefficients(m, ModeSpec{1.0, pi / 2}, 0.0, sigma);
  EXPECT_NEAR(e.eta_plus, 1.000640, 5e-7);
  EXPECT_NEAR(e.eta_minus, 0.035786, 5e-7);
}

TEST(Medium, SigmaReference) {
  const MediumSpec m{2.0};
  EXPECT_DOUBLE_EQ(sigma_reference(m, ModeSpec{1.0, pi / 2}, 0.0), 1.0);
  EXPECT_NEAR(sigma_reference(m, ModeSpec{1.0, pi / 2}, 0.3), 0.982271, 5e-7);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> un(1.0, 3.0), ub(0.0, 0.95), ut(0.0, pi);
  for (int i = 0; i < 50; ++i) {
    const MediumSpec med{un(rng)};
    const double b = std::min(ub(rng), 0.95 * med.refractive_index);
    const ModeSpec mode{1.0, ut(rng)};
    const double s = sigma_reference(med, mode, b);
    EXPECT_NEAR(coefficients(med, mode, b, s).eta_minus, 0.0, 1e-14);
  }
}

// Exact identities of the coefficients and the closed form of alpha.
TEST(Medium, AlgebraicIdentitiesOnRandomDraws) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> un(1.0, 3.0), ub(0.0, 0.99), ut(0.0, pi),
      us(0.5, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double n = un(rng);
    const double beta = std::min(ub(rng), 0.99);
    const double theta = ut(rng);
    const double sigma = us(rng);
    const auto c = coefficients(MediumSpec{n}, ModeSpec{1.0, theta}, beta, sigma);
    EXPECT_NEAR(c.alpha, 1.0 - c.gamma * beta * beta, 1e-14);
    EXPECT_NEAR(c.kappa, 1.0 - std::cos(theta) * std::cos(theta) * c.gamma * beta * beta, 1e-14);
    EXPECT_NEAR(c.eta_plus, 0.5 * (c.alpha / (sigma * sigma) + c.kappa * sigma * sigma), 1e-14);
    EXPECT_NEAR(c.eta_minus, 0.5 * (c.alpha / (sigma * sigma) - c.kappa * sigma * sigma), 1e-14);
    const double closed = n * n * (1.0 - beta * beta) / (n * n - beta * beta);
    EXPECT_NEAR(c.alpha, closed, 1e-13 * closed);
  }
  const auto c = coefficients(MediumSpec{2.0}, ModeSpec{1.0, pi / 2}, 0.7, 1.3);
  EXPECT_EQ(c.kappa, 1.0);
}

TEST(Medium, GammaIncreasesWithBeta) {
  for (double n : {1.1, 1.5, 2.0, 3.0}) {
    double prev = -1.0;
    for (int i = 0; i < 100; ++i) {
      const double beta = 0.99 * i / 99.0;
      const double g = coefficients(MediumSpec{n}, ModeSpec{}, beta, 1.0).gamma;
      EXPECT_GT(g, prev);
      prev = g;
    }
  }
}

TEST(Medium, PhaseClosedForms) {
  const MediumSpec m{2.0};
  const auto h = MotionProfile::harmonic(0.3);
  EXPECT_NEAR(accumulated_phase(m, ModeSpec{1.3, pi / 2}, h, 5.0), 0.0, 1e-15);
  EXPECT_NEAR(accumulated_phase(m, ModeSpec{1.0, 0.0}, h, pi / 2), 0.456874, 5e-7);
  EXPECT_NEAR(accumulated_phase(m, ModeSpec{1.0, 0.0}, h, 2 * pi), 0.0, 1e-15);
  const auto c = MotionProfile::constant(0.3);
  const double gamma = 3.0 / 3.91;
  EXPECT_NEAR(accumulated_phase(m, ModeSpec{1.5, 0.4}, c, 7.0),
              2.0 * 1.5 * gamma * 0.3 * std::cos(0.4) * 7.0, 1e-13);
}

// Closed form against Simpson quadrature of n rho cos(theta) gamma beta.
TEST(Medium, PhaseMatchesQuadrature) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> un(1.0001, 3.0), ub(0.0, 0.9), ut(0.0, pi),
      ur(0.01, 5.0), utau(0.0, 20 * pi);
  for (int i = 0; i < 100; ++i) {
    const double n = un(rng), b = ub(rng), theta = ut(rng), rho = ur(rng), tau = utau(rng);
    const auto profile = MotionProfile::harmonic(b);
    const double closed = accumulated_phase(MediumSpec{n}, ModeSpec{rho, theta}, profile, tau);
    const auto integrand = [&](double u) {
      const double beta = b * std::cos(u);
      return n * rho * std::cos(theta) * oracle::coeffs(n, beta, theta).gamma * beta;
    };
    const double quad = oracle::simpson(integrand, 0.0, tau, 20000);
    EXPECT_NEAR(closed, quad, 1e-9) << "draw " << i;
    const double next = accumulated_phase(MediumSpec{n}, ModeSpec{rho, theta}, profile, tau + 2 * pi);
    EXPECT_NEAR(next, closed, 1e-12);
  }
}

TEST(Medium, WindowedPhaseIsContinuous) {
  const MediumSpec m{2.0};
  const ModeSpec mode{1.0, 0.3};
  const auto w = MotionProfile::windowed(0.4, 2);
  const double end = w.window_end();
  EXPECT_NEAR(accumulated_phase(m, mode, w, end), 0.0, 1e-14);
  EXPECT_NEAR(accumulated_phase(m, mode, w, end + 1e-9), accumulated_phase(m, mode, w, end), 1e-8);
  EXPECT_NEAR(accumulated_phase(m, mode, w, -1e-9), 0.0, 1e-8);
}

TEST(Medium, AlphaJetMatchesFiniteDifferences) {
  const MediumSpec m{2.0};
  for (double b : {0.1, 0.5, 0.9}) {
    for (double tau : {0.0, 0.3, 1.1, 2.5}) {
      const auto j = harmonic_alpha(m, b, tau);
      const double h = 1e-4;
      const auto a = [&](double t) { return oracle::alpha_harmonic(2.0, b, t); };
      EXPECT_NEAR(j.value, a(tau), 1e-15);
      EXPECT_NEAR(j.first, (a(tau + h) - a(tau - h)) / (2 * h), 1e-7);
      EXPECT_NEAR(j.second, (a(tau + h) - 2 * a(tau) + a(tau - h)) / (h * h), 1e-6);
    }
  }
}
