#pragma once

// Reference computations for the tests. They are written from the defining
// formulas with different numerical methods than the library (classic RK4 in
// real arithmetic, Simpson quadrature, central differences) so that agreement
// is evidence rather than tautology.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

constexpr double pi = std::numbers::pi;

inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

struct Coeffs {
  double gamma, alpha, kappa;
};

inline Coeffs coeffs(double n, double beta, double theta) {
  const double gamma = (n * n - 1.0) / (n * n - beta * beta);
  const double c = std::cos(theta);
  return {gamma, 1.0 - gamma * beta * beta, 1.0 - c * c * gamma * beta * beta};
}

// Classic RK4 for a real linear system y' = A(t) y of dimension D.
template <std::size_t D>
std::array<double, D> rk4(const std::function<std::array<double, D>(double,
                                                                    const std::array<double, D>&)>& f,
                          std::array<double, D> y, double t0, double t1, int steps) {
  const double h = (t1 - t0) / steps;
  auto axpy = [](const std::array<double, D>& a, double s, const std::array<double, D>& b) {
    std::array<double, D> r{};
    for (std::size_t i = 0; i < D; ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  for (int i = 0; i < steps; ++i) {
    const double t = t0 + i * h;
    const auto k1 = f(t, y);
    const auto k2 = f(t + h / 2, axpy(y, h / 2, k1));
    const auto k3 = f(t + h / 2, axpy(y, h / 2, k2));
    const auto k4 = f(t + h, axpy(y, h, k3));
    for (std::size_t j = 0; j < D; ++j) y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
  }
  return y;
}

// (f1, f2) system with real and imaginary parts split: y = (Re f1, Re f2, Im f1, Im f2).
inline std::array<std::complex<double>, 2> f12(double n, double rho, double theta,
                                               const std::function<double(double)>& beta,
                                               std::complex<double> f1, std::complex<double> f2,
                                               double t1, int steps) {
  using S = std::array<double, 4>;
  const auto rhs = [&](double t, const S& y) {
    const auto c = coeffs(n, beta(t), theta);
    return S{rho * c.alpha * y[1], -rho * c.kappa * y[0], rho * c.alpha * y[3],
             -rho * c.kappa * y[2]};
  };
  const S out = rk4<4>(rhs, S{f1.real(), f2.real(), f1.imag(), f2.imag()}, 0.0, t1, steps);
  return {std::complex<double>(out[0], out[2]), std::complex<double>(out[1], out[3])};
}

// Half trace of the period-pi monodromy of Q'' + V(t) Q = 0 by RK4.
inline double oscillator_half_trace(const std::function<double(double)>& v, int steps = 4000) {
  using S = std::array<double, 4>;
  const auto rhs = [&](double t, const S& y) {
    return S{y[1], -v(t) * y[0], y[3], -v(t) * y[2]};
  };
  const S out = rk4<4>(rhs, S{1.0, 0.0, 0.0, 1.0}, 0.0, pi, steps);
  return 0.5 * (out[0] + out[3]);
}

// alpha(tau) for beta = b cos(tau), straight from the definition.
inline double alpha_harmonic(double n, double b, double tau) {
  return coeffs(n, b * std::cos(tau), pi / 2).alpha;
}

// H(tau) = rho^2 alpha kappa - sqrt(alpha) d^2/dtau^2 alpha^{-1/2}, with the
// second derivative taken by a central difference.
inline double hill_potential_fd(double n, double b, double rho, double theta, double tau,
                                double h = 1e-4) {
  const auto c = coeffs(n, b * std::cos(tau), theta);
  const auto g = [&](double t) { return 1.0 / std::sqrt(alpha_harmonic(n, b, t)); };
  const double g2 = (g(tau + h) - 2.0 * g(tau) + g(tau - h)) / (h * h);
  return rho * rho * c.alpha * c.kappa - std::sqrt(c.alpha) * g2;
}

}  // namespace oracle
