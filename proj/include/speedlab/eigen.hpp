#pragma once

#include "speedlab/coeffs.hpp"

#include <optional>
#include <vector>

namespace speedlab {

struct EigenOptions {
  double tolerance = 1e-8;
  int max_iterations = 10000;
  int steps_per_period = 0;  // 0: one step per time sample
  // Also solve on (2 nt, 2 nx) and report 2 fine - coarse with |fine - coarse|
  // as the error estimate. Needs expression-backed fields.
  bool refine = false;
};

struct EigenResult {
  double lambda = 0.0;
  // Snapshots at the time samples, positive with global max 1.
  CoefficientField eigenfunction;
  int iterations = 0;
  // ||K psi - rho psi|| / (rho ||psi||) for the period map K.
  double residual = 0.0;
  std::optional<double> error_estimate;
  std::optional<double> unrefined_lambda;
};

// Principal eigenvalue of  phi_t = d phi_xx - g phi_x + h phi - lambda phi,
// periodic in t and x, by power iteration on the discrete period map from the
// all-ones vector with Aitken acceleration of the ratio sequence.
// Throws NoConvergence after max_iterations.
EigenResult principal_eigen(const CoefficientField& d, const CoefficientField& g, const CoefficientField& h,
                            const EigenOptions& options = {});

// Drift and potential of the problem tilted by exp(-mu x).
CoefficientField tilted_drift(const CoefficientField& d, const CoefficientField& g, double mu);
CoefficientField tilted_potential(const CoefficientField& d, const CoefficientField& g, const CoefficientField& m,
                                  double mu);

EigenResult lambda_of_mu(const CoefficientField& d, const CoefficientField& g, const CoefficientField& m, double mu,
                         const EigenOptions& options = {});

struct LambdaDiagnostics {
  std::vector<double> mu;
  std::vector<double> lambda;
  // Second differences; on a nonuniform grid the defect from the chord,
  // scaled to coincide with the second difference on uniform grids.
  std::vector<double> second_differences;
  double min_second_difference = 0.0;
  bool convex = false;

  bool evenness_applicable = false;
  double evenness_defect = 0.0;  // max |lambda(mu) - lambda(-mu)|

  bool monotonicity_applicable = false;  // m >= m_compare and m != m_compare
  bool monotone = false;
  double min_monotonicity_gap = 0.0;  // min of lambda_m - lambda_m_compare
};

// Tabulates lambda over mu_grid and checks convexity, evenness when d and m
// are even in x and g is odd, and strict monotonicity in m against m_compare.
LambdaDiagnostics lambda_diagnostics(const CoefficientField& d, const CoefficientField& g, const CoefficientField& m,
                                     const std::vector<double>& mu_grid, const CoefficientField* m_compare = nullptr,
                                     double tolerance = 1e-8, const EigenOptions& options = {});

} // namespace speedlab
