#include "oscimedia/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <Eigen/Eigenvalues>
#include <sstream>

#include "oscimedia/errors.hpp"
#include "oscimedia/propagation.hpp"

namespace oscimedia {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double branch_slack = 1e-9;
// |half_trace| this close to 1 is a stability boundary and counts as stable.
constexpr double boundary_slack = 1e-12;

struct Principal {
  double re;
  double im;
  bool stable;
};

Principal principal(double h) {
  if (std::abs(h) <= 1.0 + boundary_slack) return {std::acos(std::clamp(h, -1.0, 1.0)) / pi, 0.0, true};
  if (h > 1.0) return {0.0, std::acosh(h) / pi, false};
  return {1.0, std::acosh(-h) / pi, false};
}

// For stable points the eigenvalue phase is better conditioned than
// acos(half_trace) near half_trace = +-1 (e.g. b = 0 at integer rho).
Principal principal(const MonodromyResult& m) {
  Principal p = principal(m.half_trace.real());
  if (!p.stable) return p;
  ode::Matrix2c mat;
  mat << m.m11, m.m21, m.m12, m.m22;
  const Eigen::Vector2cd ev = mat.eigenvalues();
  p.re = std::abs(std::arg(ev(0))) / pi;
  return p;
}

// Candidates 2k +- re0 that are >= floor - slack; the one nearest to target.
// Ties go to the larger value unless prefer_smaller is set.
double select_branch(double re0, double floor, double target, bool prefer_smaller = false) {
  const long k_lo = static_cast<long>(std::floor(std::min(floor, target) / 2.0)) - 1;
  const long k_hi = static_cast<long>(std::ceil(std::max(floor, target) / 2.0)) + 1;
  double best = std::numeric_limits<double>::quiet_NaN();
  double best_dist = std::numeric_limits<double>::infinity();
  for (long k = k_lo; k <= k_hi; ++k) {
    for (double c : {2.0 * k - re0, 2.0 * k + re0}) {
      if (c < floor - branch_slack) continue;
      const double d = std::abs(c - target);
      const bool tie = std::abs(d - best_dist) <= branch_slack;
      if (d < best_dist - branch_slack || (tie && (prefer_smaller ? c < best : c > best))) {
        best = c;
        best_dist = std::min(d, best_dist);
      }
    }
  }
  return best;
}

MonodromyResult monodromy_at(const MediumSpec& medium, double b, double theta, double rho,
                             double tolerance) {
  const ModeSpec mode{rho, theta};
  return monodromy(medium, mode, b, sigma_reference(medium, mode, b), tolerance);
}

double half_trace_at(const MediumSpec& medium, double b, double theta, double rho,
                     double tolerance) {
  return monodromy_at(medium, b, theta, rho, tolerance).half_trace.real();
}

std::string at_rho(const std::string& what, double rho) {
  std::ostringstream os;
  os.precision(10);
  os << what << " (rho = " << rho << ")";
  return os.str();
}

}  // namespace

MonodromyResult monodromy(const MediumSpec& medium, const ModeSpec& mode, double b, double sigma,
                          double tolerance) {
  const auto generator =
      polarization_generator(medium, mode, MotionProfile::harmonic(b), sigma);
  ode::IntegratorOptions options;
  options.tolerance = tolerance;

  MonodromyResult m;
  const ode::State<2> y =
      ode::integrate<2>(generator, ode::State<2>::Identity(), 0.0, pi, options, &m.diagnostics);
  // Column j holds the solution started from the j-th unit vector.
  m.m11 = y(0, 0);
  m.m12 = y(1, 0);
  m.m21 = y(0, 1);
  m.m22 = y(1, 1);
  m.determinant = m.m11 * m.m22 - m.m12 * m.m21;
  m.half_trace = 0.5 * (m.m11 + m.m22);
  return m;
}

CharacteristicExponent exponent_from_half_trace(double half_trace,
                                                std::optional<double> branch_hint) {
  const Principal p = principal(half_trace);
  CharacteristicExponent nu{p.re, p.im, p.stable};
  if (branch_hint) nu.re = select_branch(p.re, *branch_hint, *branch_hint);
  return nu;
}

CharacteristicExponent characteristic_exponent(const MonodromyResult& m,
                                               std::optional<CharacteristicExponent> branch_hint) {
  const Principal p = principal(m);
  CharacteristicExponent nu{p.re, p.im, p.stable};
  if (branch_hint) nu.re = select_branch(p.re, branch_hint->re, branch_hint->re);
  return nu;
}

CharacteristicExponent exponent_near(double half_trace, double estimate) {
  const Principal p = principal(half_trace);
  return {select_branch(p.re, 0.0, estimate, true), p.im, p.stable};
}

double winding_estimate(const ode::Generator& generator, FloquetNorm norm, double tolerance,
                        int samples) {
  if (samples < 2) throw validation_error("winding estimate needs at least 2 samples");
  ode::IntegratorOptions options;
  options.tolerance = tolerance;
  const auto grid = ode::uniform_samples(0.0, pi, samples / 2);
  std::vector<ode::Matrix2c> phi;
  phi.reserve(grid.size());
  (void)ode::integrate<2>(generator, ode::State<2>::Identity(), 0.0, pi, grid, options, nullptr,
                          [&](double, const ode::State<2>& s) { phi.push_back(s); });

  const Eigen::ComplexEigenSolver<ode::Matrix2c> eig(phi.back());
  auto charge = [&](const Eigen::Vector2cd& v) {
    return norm == FloquetNorm::polarization ? std::norm(v(0)) - std::norm(v(1))
                                             : (std::conj(v(0)) * v(1)).imag();
  };
  const Eigen::Vector2cd v0 = eig.eigenvectors().col(0);
  const Eigen::Vector2cd v1 = eig.eigenvectors().col(1);
  const Eigen::Vector2cd v = charge(v0) >= charge(v1) ? v0 : v1;

  // Q - i Q' cannot vanish for either a real or a positive-norm solution,
  // whereas Q itself has zeros when the Floquet solution is real.
  auto follow = [&](const ode::Matrix2c& m) {
    const Eigen::Vector2cd y = m * v;
    return norm == FloquetNorm::polarization ? y(0) : y(0) - ode::Complex(0.0, 1.0) * y(1);
  };
  double winding = 0.0;
  ode::Complex last = follow(phi.front());
  for (std::size_t i = 1; i < phi.size(); ++i) {
    const ode::Complex z = follow(phi[i]);
    winding += std::arg(z / last);
    last = z;
  }
  const double estimate = winding / pi;
  return norm == FloquetNorm::polarization ? -estimate : estimate;
}

CharacteristicExponent isolated_exponent(const MediumSpec& medium, const ModeSpec& mode, double b,
                                         double tolerance) {
  const double sigma = sigma_reference(medium, mode, b);
  const auto m = monodromy(medium, mode, b, sigma, tolerance);
  const auto generator =
      polarization_generator(medium, mode, MotionProfile::harmonic(b), sigma);
  const Principal p = principal(m);
  const double estimate = winding_estimate(generator, FloquetNorm::polarization, tolerance);
  return {select_branch(p.re, 0.0, estimate, true), p.im, p.stable};
}

std::vector<ScanPoint> exponent_scan(const MediumSpec& medium, double b, double theta,
                                     RhoRange range, int sample_count, double tolerance) {
  if (sample_count < 2) throw validation_error("exponent scan needs at least 2 samples");
  if (!(range.lo > 0.0) || !(range.hi > range.lo)) {
    throw validation_error("rho range must satisfy 0 < lo < hi");
  }
  ModeSpec{range.lo, theta}.validate();
  require_subluminal(medium, b);

  const double step = (range.hi - range.lo) / (sample_count - 1);
  std::vector<ScanPoint> points(static_cast<std::size_t>(sample_count));
  std::vector<Principal> principals(points.size());
  for (int i = 0; i < sample_count; ++i) {
    const double rho = i + 1 == sample_count ? range.hi : range.lo + step * i;
    try {
      const auto m = monodromy_at(medium, b, theta, rho, tolerance);
      points[static_cast<std::size_t>(i)].rho = rho;
      points[static_cast<std::size_t>(i)].half_trace = m.half_trace.real();
      principals[static_cast<std::size_t>(i)] = principal(m);
    } catch (const numerical_error& e) {
      throw numerical_error(at_rho(e.what(), rho), e.tau());
    }
  }

  // Branch threading is an ordered pass: the predicted value extrapolates the
  // last slope, and the branch may never fall below the previous point.
  points.front().exponent = isolated_exponent(medium, ModeSpec{range.lo, theta}, b, tolerance);
  double slope = 1.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double prev = points[i - 1].exponent.re;
    const Principal& p = principals[i];
    const double re = select_branch(p.re, prev, prev + slope * step);
    points[i].exponent = {re, p.im, p.stable};
    slope = std::max(0.0, (re - prev) / step);
  }
  return points;
}

ResonanceRegion resonance_region(const MediumSpec& medium, double b, double theta, int order,
                                 const ResonanceSearch& search) {
  if (order < 1) throw validation_error("resonance order must be >= 1");
  if (search.coarse_samples < 8) throw validation_error("resonance search needs >= 8 samples");
  require_subluminal(medium, b);
  ModeSpec{1.0, theta}.validate();

  const double n2 = medium.refractive_index * medium.refractive_index;
  const double cos2 = std::cos(theta) * std::cos(theta);
  const double shrink = 1.0 - 0.5 * b * b * (n2 - 1.0) / n2 * (1.0 + cos2);
  const double centre = order / std::sqrt(shrink);
  const double lo = centre * (order - 0.45) / order;
  const double hi = centre * (order + 0.45) / order;

  // (-1)^m Re(half_trace) exceeds 1 exactly inside the order-m tongue.
  const double sign = order % 2 == 0 ? 1.0 : -1.0;
  auto g = [&](double rho) {
    try {
      return sign * half_trace_at(medium, b, theta, rho, search.tolerance);
    } catch (const numerical_error& e) {
      throw numerical_error(at_rho(e.what(), rho), e.tau());
    }
  };

  const int count = search.coarse_samples;
  std::vector<double> rhos(static_cast<std::size_t>(count));
  std::vector<double> values(rhos.size());
  for (int i = 0; i < count; ++i) {
    rhos[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    values[static_cast<std::size_t>(i)] = g(rhos[static_cast<std::size_t>(i)]);
  }
  const auto best = static_cast<std::size_t>(
      std::distance(values.begin(), std::max_element(values.begin(), values.end())));

  // Golden-section refinement of the maximum.
  double a = rhos[best == 0 ? 0 : best - 1];
  double c = rhos[std::min(best + 1, rhos.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = c - inv_phi * (c - a);
  double x2 = a + inv_phi * (c - a);
  double g1 = g(x1);
  double g2 = g(x2);
  while (c - a > search.rho_resolution) {
    if (g1 < g2) {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + inv_phi * (c - a);
      g2 = g(x2);
    } else {
      c = x2;
      x2 = x1;
      g2 = g1;
      x1 = c - inv_phi * (c - a);
      g1 = g(x1);
    }
  }
  double rho_peak = g1 > g2 ? x1 : x2;
  double g_peak = std::max(g1, g2);
  if (values[best] > g_peak) {
    rho_peak = rhos[best];
    g_peak = values[best];
  }

  if (!(g_peak > 1.0 + 1e-9)) {
    std::ostringstream os;
    os << "no unstable interval of order " << order << " found for b = " << b
       << " near rho = " << centre;
    throw resonance_not_found(os.str());
  }

  // Bracket each edge with the coarse grid, then bisect on g = 1.
  auto edge = [&](bool left) {
    std::size_t j = best;
    double outside = std::numeric_limits<double>::quiet_NaN();
    while (true) {
      if (left ? j == 0 : j + 1 >= rhos.size()) break;
      j = left ? j - 1 : j + 1;
      if ((left && rhos[j] >= rho_peak) || (!left && rhos[j] <= rho_peak)) continue;
      if (values[j] < 1.0) {
        outside = rhos[j];
        break;
      }
    }
    if (std::isnan(outside)) {
      throw resonance_not_found("unstable interval of order " + std::to_string(order) +
                                " is not bracketed by the search window");
    }
    double in = rho_peak;
    while (std::abs(in - outside) > search.rho_resolution) {
      const double mid = 0.5 * (in + outside);
      (g(mid) > 1.0 ? in : outside) = mid;
    }
    return 0.5 * (in + outside);
  };

  ResonanceRegion region;
  region.order = order;
  region.rho_lo = edge(true);
  region.rho_hi = edge(false);
  region.rho_peak = rho_peak;
  region.im_nu_peak = std::acosh(g_peak) / pi;
  return region;
}

}  // namespace oscimedia
