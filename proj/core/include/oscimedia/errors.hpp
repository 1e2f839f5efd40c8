#pragma once

#include <stdexcept>
#include <string>

namespace oscimedia {

// A caller-supplied value violates a documented precondition.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A physical parameter lies outside the domain where the coefficients exist
// (|beta| >= min(1, n), degenerate geometry, undefined resonance line).
class physics_domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The integrator or a root search could not finish. `tau()` is the last time
// reached, when meaningful.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what, double tau = 0.0)
      : std::runtime_error(what), tau_(tau) {}
  [[nodiscard]] double tau() const noexcept { return tau_; }

 private:
  double tau_;
};

class resonance_not_found : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oscimedia
