// Error hierarchy shared by the numeric core and the CLI.
#pragma once

#include <stdexcept>
#include <string>

namespace casimir_spin {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid physical or numerical input (bad semi-axis, tolerance out of range, ...).
struct DomainError : Error {
  using Error::Error;
};

// Adaptive quadrature exhausted its refinement budget.
struct QuadratureError : Error {
  double achieved_error;
  QuadratureError(const std::string& what, double achieved)
      : Error(what), achieved_error(achieved) {}
};

// Vanishing polarizability denominator (negative-permittivity resonance).
struct ResonanceError : Error {
  char axis;
  ResonanceError(const std::string& what, char which_axis)
      : Error(what), axis(which_axis) {}
};

// Operation requires an axisymmetric body/tensor and got a triaxial one.
struct ShapeError : Error {
  using Error::Error;
};

// Field evaluation requested at the dipole position.
struct SingularityError : Error {
  using Error::Error;
};

// Two algebraically equivalent torque routes disagreed beyond tolerance.
struct ConsistencyError : Error {
  double residual;
  ConsistencyError(const std::string& what, double res)
      : Error(what), residual(res) {}
};

// Bad run configuration (unknown key, malformed value, missing output path).
struct ConfigError : Error {
  using Error::Error;
};

// Filesystem failure while writing a report.
struct IoError : Error {
  using Error::Error;
};

}  // namespace casimir_spin
