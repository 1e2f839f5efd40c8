#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "oscimedia/errors.hpp"
#include "oscimedia/propagation.hpp"
#include "support/oracles.hpp"

using namespace oscimedia;

namespace {

constexpr double pi = std::numbers::pi;
constexpr Complex I{0.0, 1.0};
const MediumSpec medium{2.0};

double max_abs(const Trajectory& t, double from = 0.0, double to = 1e300) {
  double m = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.taus[i] >= from && t.taus[i] <= to) m = std::max(m, std::abs(t.states[i].first));
  }
  return m;
}

}  // namespace

TEST(ModeBasis, OrthogonalAxes) {
  const auto b = mode_basis(Vec3::UnitZ(), Vec3::UnitX(), 1.0);
  EXPECT_NEAR((b.n1 + Vec3::UnitX()).norm(), 0.0, 1e-15);
  EXPECT_NEAR((b.n2 - Vec3::UnitY()).norm(), 0.0, 1e-15);
  EXPECT_NEAR(b.theta, pi / 2, 1e-15);
}

TEST(ModeBasis, TripleProductsOnRandomDirections) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int i = 0; i < 100; ++i) {
    const Vec3 k(g(rng), g(rng), g(rng));
    const Vec3 m(g(rng), g(rng), g(rng));
    const double sigma = 0.5 + std::abs(g(rng));
    const auto b = mode_basis(k, m, sigma);
    EXPECT_NEAR(b.n1.norm(), 1.0, 1e-14);
    EXPECT_NEAR(b.n2.norm(), 1.0, 1e-14);
    EXPECT_NEAR(b.n1.dot(b.n2), 0.0, 1e-14);
    EXPECT_NEAR((b.n1.cross(b.khat) - b.n2).norm(), 0.0, 1e-14);
    EXPECT_NEAR((b.khat.cross(b.n2) - b.n1).norm(), 0.0, 1e-14);
    EXPECT_NEAR((b.n2.cross(b.n1) - b.khat).norm(), 0.0, 1e-14);
    const CVec3 e = (sigma * b.n1.cast<Complex>() - (I / sigma) * b.n2.cast<Complex>()) /
                    std::sqrt(2.0);
    EXPECT_NEAR((b.e - e).norm(), 0.0, 1e-15);
    EXPECT_NEAR(b.theta, std::acos(k.normalized().dot(m.normalized())), 1e-7);
  }
}

TEST(ModeBasis, DegenerateAndInvalid) {
  EXPECT_THROW(mode_basis(Vec3::UnitZ(), Vec3::UnitZ(), 1.0), physics_domain_error);
  EXPECT_THROW(mode_basis(Vec3::UnitZ(), -2.0 * Vec3::UnitZ(), 1.0), physics_domain_error);
  EXPECT_THROW(mode_basis(Vec3::Zero(), Vec3::UnitZ(), 1.0), validation_error);
  EXPECT_THROW(mode_basis(Vec3::UnitX(), Vec3::UnitZ(), 0.0), validation_error);
}

TEST(AmplitudePair, BasisChangeRoundTrip) {
  const auto lin = AmplitudePair::linear({0.3, -1.2}, {2.0, 0.7});
  for (double sigma : {0.5, 0.98, 1.7}) {
    const auto pol = to_polarization(lin, sigma);
    EXPECT_EQ(pol.basis, AmplitudeBasis::polarization);
    EXPECT_NEAR(std::abs(pol.first - (lin.first / sigma + I * sigma * lin.second) / std::sqrt(2.0)),
                0.0, 1e-15);
    EXPECT_NEAR(std::abs(pol.second - (lin.first / sigma - I * sigma * lin.second) / std::sqrt(2.0)),
                0.0, 1e-15);
    const auto back = to_linear(pol, sigma);
    EXPECT_NEAR(std::abs(back.first - lin.first), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(back.second - lin.second), 0.0, 1e-14);
  }
}

TEST(EvolveF12, RestFrameIsHarmonic) {
  const auto t = evolve_f12(medium, ModeSpec{1.0, pi / 2}, MotionProfile::harmonic(0.0),
                            AmplitudePair::linear(1.0, 0.0), TauSpan{0.0, 2 * pi});
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_NEAR(std::abs(t.states[i].first - std::cos(t.taus[i])), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(t.states[i].second + std::sin(t.taus[i])), 0.0, 1e-9);
  }
  EXPECT_EQ(t.taus.back(), 2 * pi);
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_GT(t.taus[i], t.taus[i - 1]);
}

TEST(EvolveF12, MatchesRk4Oracle) {
  for (double theta : {0.4, pi / 2}) {
    const ModeSpec mode{1.3, theta};
    const double b = 0.6;
    const Complex f1{0.2, 1.0}, f2{-0.5, 0.3};
    const auto t = evolve_f12(medium, mode, MotionProfile::harmonic(b),
                              AmplitudePair::linear(f1, f2), TauSpan{0.0, 6 * pi});
    const auto ref = oracle::f12(2.0, 1.3, theta, [&](double u) { return b * std::cos(u); }, f1,
                                 f2, 6 * pi, 60000);
    EXPECT_NEAR(std::abs(t.final_state().first - ref[0]), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(t.final_state().second - ref[1]), 0.0, 1e-9);
  }
}

TEST(EvolveF12, ResonantGrowthAndStableBoundedness) {
  const auto grow = evolve_f12(medium, ModeSpec{1.016, pi / 2}, MotionProfile::harmonic(0.3),
                               AmplitudePair::linear(1.0, 0.0), TauSpan{0.0, 200 * pi});
  EXPECT_GT(std::abs(grow.final_state().first), 1.0);
  EXPECT_GT(max_abs(grow, 180 * pi), 20.0 * max_abs(grow, 0.0, 20 * pi));

  const auto calm = evolve_f12(medium, ModeSpec{1.55, pi / 2}, MotionProfile::harmonic(0.3),
                               AmplitudePair::linear(1.0, 0.0), TauSpan{0.0, 200 * pi});
  EXPECT_LT(max_abs(calm), 2.0);
  EXPECT_LT(max_abs(calm, 100 * pi), 1.1 * max_abs(calm));
}

TEST(EvolveF12, RejectsWrongBasisAndSpan) {
  EXPECT_THROW((void)evolve_f12(medium, ModeSpec{}, MotionProfile::harmonic(0.3),
                                AmplitudePair::polarization(1.0, 0.0), TauSpan{}),
               validation_error);
  EXPECT_THROW((void)evolve_f12(medium, ModeSpec{}, MotionProfile::harmonic(0.3),
                                AmplitudePair::linear(1.0, 0.0), TauSpan{1.0, 0.0}),
               validation_error);
  EXPECT_THROW((void)evolve_f12(MediumSpec{0.5}, ModeSpec{}, MotionProfile::harmonic(0.3),
                                AmplitudePair::linear(1.0, 0.0), TauSpan{}),
               validation_error);
}

TEST(EvolveFpm, RestFrameRotates) {
  const auto t = evolve_fpm(medium, ModeSpec{1.0, pi / 2}, MotionProfile::harmonic(0.0), 1.0,
                            AmplitudePair::polarization(1.0, 0.0), TauSpan{0.0, 2 * pi});
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_NEAR(std::abs(t.states[i].first - std::exp(-I * t.taus[i])), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(t.states[i].second), 0.0, 1e-12);
  }
}

TEST(EvolveFpm, ConjugateSwapSymmetry) {
  const auto profile = MotionProfile::windowed(0.4, 5);
  const ModeSpec mode{1.1, 1.0};
  const double sigma = sigma_reference(medium, mode, 0.4);
  const TauSpan span{0.0, profile.window_end()};
  const auto a = evolve_fpm(medium, mode, profile, sigma, AmplitudePair::polarization(1.0, 0.0), span);
  const auto b = evolve_fpm(medium, mode, profile, sigma, AmplitudePair::polarization(0.0, 1.0), span);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(std::abs(b.states[i].first - std::conj(a.states[i].second)), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(b.states[i].second - std::conj(a.states[i].first)), 0.0, 1e-10);
  }
}

TEST(EvolveFpm, AgreesWithF12AfterBasisChange) {
  const ModeSpec mode{0.8, 0.6};
  const auto profile = MotionProfile::harmonic(0.5);
  const double sigma = 1.1;
  const auto init = AmplitudePair::linear({0.4, 0.1}, {-0.2, 0.9});
  const TauSpan span{0.0, 8 * pi};
  const auto lin = evolve_f12(medium, mode, profile, init, span);
  const auto pol = evolve_fpm(medium, mode, profile, sigma, to_polarization(init, sigma), span);
  for (std::size_t i = 0; i < lin.size(); ++i) {
    const auto conv = to_polarization(lin.states[i], sigma);
    EXPECT_NEAR(std::abs(conv.first - pol.states[i].first), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(conv.second - pol.states[i].second), 0.0, 1e-9);
  }
}

TEST(EvolveFpm, FixedStepModeIsReproducible) {
  EvolutionOptions o;
  o.integrator = ode::IntegratorOptions::fixed();
  const auto run = [&] {
    return evolve_fpm(medium, ModeSpec{1.016, pi / 2}, MotionProfile::harmonic(0.3), 0.98,
                      AmplitudePair::polarization(1.0, 0.0), TauSpan{0.0, 20 * pi}, o);
  };
  const auto a = run();
  const auto b = run();
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.states[i].first, b.states[i].first);
    EXPECT_EQ(a.states[i].second, b.states[i].second);
  }
  // 2000 steps per period, plus the extra landings on the 64 samples per period.
  EXPECT_GE(a.diagnostics.accepted_steps, 20000u);
  EXPECT_LE(a.diagnostics.accepted_steps, 20000u + 640u);
}

TEST(Collinear, FullPrecessionAtRest) {
  const CVec3 f0(Complex{1.0, 0.5}, Complex{-0.3, 0.0}, 0.0);
  const auto f = collinear_evolution(medium, MotionProfile::harmonic(0.0), 1.0, Vec3::UnitZ(), f0,
                                     2 * pi);
  EXPECT_NEAR((f - f0).norm(), 0.0, 1e-12);
}

TEST(Collinear, PrecessionAngleTwoRules) {
  const double psi = precession_angle(medium, MotionProfile::harmonic(0.3), 1.0, 2 * pi);
  const auto integrand = [](double u) {
    const double c = 0.09 * std::cos(u) * std::cos(u);
    return 4.0 * (1.0 - c) / (4.0 - c);
  };
  EXPECT_NEAR(psi, oracle::simpson(integrand, 0.0, 2 * pi, 4000), 1e-10);
  // The periodic trapezoid rule is spectrally accurate here.
  double trap = 0.0;
  for (int i = 0; i < 256; ++i) trap += integrand(2 * pi * i / 256);
  EXPECT_NEAR(psi, trap * 2 * pi / 256, 1e-10);
}

TEST(Collinear, NormAndTransversality) {
  const CVec3 f0(Complex{1.0, 0.5}, Complex{-0.3, 0.2}, 0.0);
  for (double tau : {0.1, 3.0, 17.5, 100.0}) {
    const auto f = collinear_evolution(medium, MotionProfile::harmonic(0.7), 1.3, Vec3::UnitZ(),
                                       f0, tau);
    EXPECT_NEAR(f.norm(), f0.norm(), 1e-12);
    EXPECT_NEAR(std::abs(f(2)), 0.0, 1e-15);
  }
  EXPECT_THROW((void)collinear_evolution(medium, MotionProfile::harmonic(0.3), 1.0, Vec3::UnitZ(),
                                         CVec3(0.0, 0.0, 1.0), 1.0),
               validation_error);
}

TEST(ConstantVelocity, RestAndMoving) {
  const auto init = AmplitudePair::polarization(1.0, 0.0);
  const auto rest = constant_velocity_solution(medium, ModeSpec{1.7, 0.3}, 0.0, init);
  EXPECT_EQ(rest.omega0, 0.0);
  EXPECT_DOUBLE_EQ(rest.omega1, 1.7);

  const auto mov = constant_velocity_solution(medium, ModeSpec{1.0, pi / 2}, 0.3, init);
  EXPECT_NEAR(mov.omega0, 0.0, 1e-16);
  EXPECT_NEAR(mov.omega1, std::sqrt(1.0 - 0.09 * 3.0 / 3.91), 1e-15);
  EXPECT_NEAR(mov.omega1, 0.964856, 5e-7);
  EXPECT_TRUE(mov.frequency_split_valid);

  // Long-time phase of the numerical solution reproduces omega1.
  const ModeSpec mode{1.2, 0.8};
  const auto cv = constant_velocity_solution(medium, mode, 0.4, init);
  const auto t = evolve_fpm(medium, mode, MotionProfile::constant(0.4), cv.sigma, init,
                            TauSpan{0.0, 40 * pi});
  for (std::size_t i = 0; i < t.size(); i += 97) {
    const auto exact = cv.at(t.taus[i]);
    EXPECT_NEAR(std::abs(t.states[i].first - exact.first), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(t.states[i].second), 0.0, 1e-12);
  }
}

TEST(ConstantVelocity, FrequencySplitFlag) {
  // theta = 0 and fast motion: n gamma beta >= sqrt(alpha kappa).
  const auto s = constant_velocity_solution(MediumSpec{2.0}, ModeSpec{1.0, 0.0}, 0.6,
                                            AmplitudePair::polarization(1.0, 0.0));
  EXPECT_GE(std::abs(s.omega0), s.omega1);
  EXPECT_FALSE(s.frequency_split_valid);
}
