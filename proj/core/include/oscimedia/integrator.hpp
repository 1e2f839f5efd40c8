#pragma once

// Integrator for the linear systems that appear throughout the library:
//
//     dY/dtau = A(tau) Y,   A: 2x2 complex, Y: 2 x Cols
//
// Every generator used here is traceless, and the (f+, f-) generator lies in
// su(1,1). The 3-stage Gauss-Legendre collocation method keeps all quadratic
// invariants of such systems (det of the fundamental matrix, |f+|^2 - |f-|^2)
// up to round-off, independent of the step size. Adaptive mode estimates the
// local error by step doubling and controls it per unit tau; fixed mode takes a set number of steps per
// 2 pi. In both modes steps are clipped so that every requested sample time
// is hit exactly.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "oscimedia/errors.hpp"
#include "oscimedia/medium.hpp"

namespace oscimedia::ode {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Generator = std::function<Matrix2c(double)>;

template <int Cols>
using State = Eigen::Matrix<Complex, 2, Cols>;

inline constexpr double default_tolerance = 1e-10;
inline constexpr int default_fixed_steps_per_period = 2000;

struct IntegratorOptions {
  // Error target per unit tau, relative to 1 + |y|, so the global error over a
  // span T stays near tolerance * T for the bounded systems used here.
  double tolerance = default_tolerance;
  // 0 selects adaptive stepping; otherwise the number of steps per 2 pi.
  int fixed_steps_per_period = 0;
  std::size_t max_steps = 50'000'000;

  static IntegratorOptions fixed(int steps_per_period = default_fixed_steps_per_period) {
    IntegratorOptions o;
    o.fixed_steps_per_period = steps_per_period;
    return o;
  }
};

struct IntegrationStats {
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  // Largest accepted local error estimate, relative to the tolerance scale.
  double max_error_ratio = 0.0;
  double smallest_step = std::numeric_limits<double>::infinity();
  double largest_step = 0.0;

  void merge(const IntegrationStats& other) {
    accepted_steps += other.accepted_steps;
    rejected_steps += other.rejected_steps;
    max_error_ratio = std::max(max_error_ratio, other.max_error_ratio);
    smallest_step = std::min(smallest_step, other.smallest_step);
    largest_step = std::max(largest_step, other.largest_step);
  }
};

namespace detail {

struct GaussTableau {
  double c[3];
  double a[3][3];
  double b[3];
};

inline const GaussTableau& gauss3() {
  static const GaussTableau t = [] {
    const double r = std::sqrt(15.0);
    GaussTableau g{};
    g.c[0] = 0.5 - r / 10.0;
    g.c[1] = 0.5;
    g.c[2] = 0.5 + r / 10.0;
    g.a[0][0] = 5.0 / 36.0;
    g.a[0][1] = 2.0 / 9.0 - r / 15.0;
    g.a[0][2] = 5.0 / 36.0 - r / 30.0;
    g.a[1][0] = 5.0 / 36.0 + r / 24.0;
    g.a[1][1] = 2.0 / 9.0;
    g.a[1][2] = 5.0 / 36.0 - r / 24.0;
    g.a[2][0] = 5.0 / 36.0 + r / 30.0;
    g.a[2][1] = 2.0 / 9.0 + r / 15.0;
    g.a[2][2] = 5.0 / 36.0;
    g.b[0] = 5.0 / 18.0;
    g.b[1] = 4.0 / 9.0;
    g.b[2] = 5.0 / 18.0;
    return g;
  }();
  return t;
}

template <int Cols>
double error_ratio(const State<Cols>& y0, const State<Cols>& coarse, const State<Cols>& fine,
                   double tolerance) {
  // Richardson: the fine solution's error is (fine - coarse) / (2^6 - 1).
  double sum = 0.0;
  for (Eigen::Index j = 0; j < fine.cols(); ++j) {
    for (Eigen::Index i = 0; i < 2; ++i) {
      const double scale =
          tolerance * (1.0 + std::max(std::abs(y0(i, j)), std::abs(fine(i, j))));
      const double e = std::abs(fine(i, j) - coarse(i, j)) / 63.0 / scale;
      sum += e * e;
    }
  }
  return std::sqrt(sum / static_cast<double>(2 * fine.cols()));
}

}  // namespace detail

// One Gauss-Legendre step of size h from (t, y).
template <int Cols>
State<Cols> gauss_legendre_step(const Generator& generator, double t, double h,
                                const State<Cols>& y) {
  const auto& g = detail::gauss3();
  Matrix2c a[3];
  for (int j = 0; j < 3; ++j) a[j] = generator(t + g.c[j] * h);

  Eigen::Matrix<Complex, 6, 6> m = Eigen::Matrix<Complex, 6, 6>::Identity();
  Eigen::Matrix<Complex, 6, Cols> rhs;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      m.template block<2, 2>(2 * i, 2 * j) -= (h * g.a[i][j]) * a[j];
    }
    rhs.template middleRows<2>(2 * i) = y;
  }
  const Eigen::Matrix<Complex, 6, Cols> stages = m.partialPivLu().solve(rhs);

  State<Cols> next = y;
  for (int j = 0; j < 3; ++j) {
    next += (h * g.b[j]) * (a[j] * stages.template middleRows<2>(2 * j));
  }
  return next;
}

// Integrates from t0 to t1 (t1 > t0). `samples` must be sorted and lie in
// [t0, t1]; `on_sample(t, y)` fires at each of them with the exact state.
// Returns the state at t1.
template <int Cols, class Observer>
State<Cols> integrate(const Generator& generator, State<Cols> y, double t0, double t1,
                      std::span<const double> samples, const IntegratorOptions& options,
                      IntegrationStats* stats, Observer&& on_sample) {
  if (!(t1 > t0)) {
    throw validation_error("integration span must satisfy tau_end > tau_begin");
  }
  if (!(options.tolerance > 0.0) || !std::isfinite(options.tolerance)) {
    throw validation_error("integrator tolerance must be positive");
  }
  if (options.fixed_steps_per_period < 0) {
    throw validation_error("fixed steps per period must be non-negative");
  }
  IntegrationStats local;
  std::size_t next_sample = 0;
  auto emit_due = [&](double t) {
    while (next_sample < samples.size() && samples[next_sample] <= t) {
      on_sample(samples[next_sample], y);
      ++next_sample;
    }
  };
  auto next_stop = [&]() {
    return next_sample < samples.size() ? std::min(samples[next_sample], t1) : t1;
  };

  double t = t0;
  emit_due(t);

  const bool fixed = options.fixed_steps_per_period > 0;
  double h;
  if (fixed) {
    const double per = (t1 - t0) / two_pi * options.fixed_steps_per_period;
    const double count = std::max(1.0, std::ceil(per - 1e-9));
    h = (t1 - t0) / count;
  } else {
    const double norm = generator(t0).cwiseAbs().maxCoeff();
    h = std::min(t1 - t0, 0.1 / std::max(1.0, norm));
  }

  while (t < t1) {
    if (local.accepted_steps + local.rejected_steps >= options.max_steps) {
      throw numerical_error("integrator exceeded the step budget at tau = " + std::to_string(t), t);
    }
    const double stop = next_stop();
    const double remaining = stop - t;
    const bool clipped = remaining <= h * (1.0 + 1e-12);
    const double step = clipped ? remaining : h;

    if (fixed) {
      y = gauss_legendre_step<Cols>(generator, t, step, y);
      t = clipped ? stop : t + step;
      ++local.accepted_steps;
      local.smallest_step = std::min(local.smallest_step, step);
      local.largest_step = std::max(local.largest_step, step);
      emit_due(t);
      continue;
    }

    const State<Cols> coarse = gauss_legendre_step<Cols>(generator, t, step, y);
    const State<Cols> mid = gauss_legendre_step<Cols>(generator, t, 0.5 * step, y);
    const State<Cols> fine = gauss_legendre_step<Cols>(generator, t + 0.5 * step, 0.5 * step, mid);
    const double err = detail::error_ratio<Cols>(y, coarse, fine, options.tolerance) / step;
    const double factor =
        err > 0.0 ? std::clamp(0.9 * std::pow(err, -1.0 / 6.0), 0.2, 4.0) : 4.0;

    if (err <= 1.0 && std::isfinite(err)) {
      y = fine;
      t = clipped ? stop : t + step;
      ++local.accepted_steps;
      local.max_error_ratio = std::max(local.max_error_ratio, err);
      local.smallest_step = std::min(local.smallest_step, step);
      local.largest_step = std::max(local.largest_step, step);
      h = clipped ? std::max(h, step * factor) : step * factor;
      emit_due(t);
    } else {
      ++local.rejected_steps;
      h = step * (std::isfinite(err) ? factor : 0.2);
      if (h < 1e-14 * std::max(1.0, std::abs(t))) {
        throw numerical_error("step size underflow at tau = " + std::to_string(t), t);
      }
    }
  }

  if (stats != nullptr) stats->merge(local);
  return y;
}

template <int Cols>
State<Cols> integrate(const Generator& generator, const State<Cols>& y, double t0, double t1,
                      const IntegratorOptions& options, IntegrationStats* stats = nullptr) {
  return integrate<Cols>(generator, y, t0, t1, std::span<const double>{}, options, stats,
                         [](double, const State<Cols>&) {});
}

// Uniform sample grid over [begin, end] with `per_period` samples per 2 pi
// (at least two points, endpoints included).
inline std::vector<double> uniform_samples(double begin, double end, int per_period) {
  if (per_period < 1) throw validation_error("samples per period must be >= 1");
  if (!(end > begin)) throw validation_error("sample span must satisfy end > begin");
  const long intervals = std::max(1L, std::lround((end - begin) / two_pi * per_period));
  std::vector<double> out(static_cast<std::size_t>(intervals) + 1);
  for (long i = 0; i <= intervals; ++i) {
    out[static_cast<std::size_t>(i)] =
        begin + (end - begin) * static_cast<double>(i) / static_cast<double>(intervals);
  }
  out.back() = end;
  return out;
}

}  // namespace oscimedia::ode
