#pragma once

#include "speedlab/coeffs.hpp"
#include "speedlab/system.hpp"

#include <string>

namespace testsupport {

inline speedlab::CoefficientField field(const std::string& expr, int nt = 50, int nx = 32, double omega = 1.0,
                                        double ell = 1.0) {
  return speedlab::build_field(expr, omega, ell, nt, nx);
}

// Constant competition instance with d2 = 0.5 used across the suites.
inline speedlab::ModelSpec vl_constant(double omega = 1.0, double ell = 1.0) {
  speedlab::ModelSpec m;
  m.omega = omega;
  m.ell = ell;
  m.d = {"1", "0.5"};
  m.g = {"0", "0"};
  m.b = {"2", "1"};
  m.a = {{{"1", "0.3"}, {"1.2", "1"}}};
  return m;
}

inline speedlab::ModelSpec fisher_decoupled(double omega = 1.0, double ell = 1.0) {
  speedlab::ModelSpec m;
  m.omega = omega;
  m.ell = ell;
  m.d = {"1", "1"};
  m.b = {"1", "1"};
  m.a = {{{"1", "0"}, {"0", "1"}}};
  return m;
}

} // namespace testsupport
