#pragma once

#include "speedlab/coeffs.hpp"
#include "speedlab/eigen.hpp"
#include "speedlab/orbits.hpp"
#include "speedlab/system.hpp"

#include <functional>
#include <optional>
#include <string>

namespace speedlab {

struct SpeedOptions {
  EigenOptions eigen;
  double mu_lo = 1e-3;
  double mu_hi = 20.0;
  double rel_tol = 1e-6;
  // Richardson extrapolation of speeds from (nt, nx) and (2 nt, 2 nx).
  bool refine = false;
};

struct SpeedMinimum {
  double c = 0.0;
  double mu = 0.0;
  int evaluations = 0;
};

// Golden-section search for inf lambda(mu)/mu over [mu_lo, mu_hi]. Throws
// NoInteriorMinimum when the quotient is not decreasing at mu_lo or not
// increasing at mu_hi.
SpeedMinimum minimize_speed(const std::function<double(double)>& lambda, double mu_lo = 1e-3,
                            double mu_hi = 20.0, double rel_tol = 1e-6);

struct ScalarSpeeds {
  double right = 0.0;
  double left = 0.0;
  double mu_right = 0.0;
  double mu_left = 0.0;
  double lambda0 = 0.0;  // lambda(d, g, b) at mu = 0
  std::optional<double> right_error;
  std::optional<double> left_error;
};

// Spreading speeds of u_t = d u_xx - g u_x + u (b - e u). The leftward speed
// is the rightward speed of the reflected equation (x -> -x, g -> -g).
// Throws NotMonostable when lambda0 <= 0.
ScalarSpeeds scalar_kpp_speeds(const CoefficientField& d, const CoefficientField& g, const CoefficientField& b,
                               const SpeedOptions& options = {});

struct ReflectedCoefficients {
  CoefficientField d, g, m;
};

ReflectedCoefficients reflect_equation(const CoefficientField& d, const CoefficientField& g,
                                       const CoefficientField& m);

struct LinearSpeed {
  double c0 = 0.0;
  double mu0 = 0.0;
  double lambda0_at_mu0 = 0.0;
  double h2_margin = 0.0;  // lambda(d1, g1, b1 - a12 u2*)
  std::optional<double> error_estimate;
  std::optional<double> unrefined_c0;
};

// c0 = inf lambda0(mu)/mu with potential b1 - a12 u2*. With options.refine
// the orbit and speed are recomputed on the doubled lattice.
LinearSpeed linear_speed_c0(const SystemSpec& sys, const CoefficientField& u2_star, const SpeedOptions& options = {});

struct CoupledEigenfunction {
  double mu0 = 0.0;
  double lambda0 = 0.0;     // species-1 eigenvalue at mu0
  double lambda_bar = 0.0;  // species-2 eigenvalue with potential b2 - 2 a22 u2*
  CoefficientField phi1;
  CoefficientField phi2;
  double residual = 0.0;    // relative defect of the coupled period map
  int neumann_terms = 0;
  bool degenerate = false;  // a21 u2* vanishes identically, so phi2 == 0
};

// Positive eigenfunction of the cooperative linearization at mu0. phi1 keeps
// the normalization max phi1 = phi1_scale; phi2 solves
// (r1 - U2(omega, 0)) phi2 = forcing by a Neumann series in U2 / r1.
// Throws D1Violated unless lambda0 > lambda_bar.
CoupledEigenfunction coupled_eigenfunction(const SystemSpec& sys, const CoefficientField& u2_star, double mu0,
                                           const EigenOptions& options = {}, double phi1_scale = 1.0);

enum class Verdict { pass, pass_sufficient, fail, inconclusive, not_applicable };

std::string to_string(Verdict v);

struct Certificate {
  Verdict verdict = Verdict::not_applicable;
  std::optional<double> margin;  // empty when not applicable or unbounded
  std::string detail;
};

struct HypothesisReport {
  Certificate h1, h2, h3, h4, h5;
  Certificate prop_c;  // envelope sufficient condition for H3
  Certificate p1, p2;  // closed-form checks for x-independent data
  Certificate m;       // heterogeneous-diffusion condition on a
  std::optional<double> c1_plus;
  std::optional<double> c2_minus;
};

HypothesisReport check_hypotheses(const SystemSpec& sys, const SemiTrivialOrbits& orbits,
                                  const SpeedOptions& options = {});

struct DeterminacyReport {
  Certificate d1, d2;
  bool linearly_determinate = false;
  std::optional<CoupledEigenfunction> eigenfunction;
};

DeterminacyReport check_linear_determinacy(const SystemSpec& sys, const CoefficientField& u2_star, double mu0,
                                           const EigenOptions& options = {});

} // namespace speedlab
