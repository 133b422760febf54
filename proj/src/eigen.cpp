#include "speedlab/eigen.hpp"

#include "speedlab/errors.hpp"
#include "speedlab/pde.hpp"

#include <algorithm>
#include <cmath>

namespace speedlab {

namespace {

double max_abs(const std::vector<double>& u) {
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

// Advances u by one period with renormalization; returns log of the factor
// removed so that the true image is exp(result) * u.
double scaled_period(std::vector<double>& u, const SpatialGrid& grid, const LinearCoefficients& c, int steps,
                     double omega, std::vector<std::vector<double>>* snapshots = nullptr, int stride = 1) {
  const double dt = omega / steps;
  double log_scale = 0.0;
  for (int s = 1; s <= steps; ++s) {
    if (snapshots != nullptr && (s - 1) % stride == 0) {
      std::vector<double> snap = u;
      const double f = std::exp(log_scale);
      for (double& v : snap) v *= f;
      snapshots->push_back(std::move(snap));
    }
    step_scalar_linear(u, grid, c, s * dt, dt);
    const double m = max_abs(u);
    if (!(m > 0.0) || !std::isfinite(m)) throw NoConvergence("period map produced a degenerate iterate");
    if (m > 1e100 || m < 1e-100 || s == steps) {
      for (double& v : u) v /= m;
      log_scale += std::log(m);
    }
  }
  return log_scale;
}

void require_lattice(const CoefficientField& a, const CoefficientField& b) {
  if (!(a.grid() == b.grid())) throw ValidationError("eigenproblem coefficients must share one lattice");
}

EigenResult solve_once(const CoefficientField& d, const CoefficientField& g, const CoefficientField& h,
                       const EigenOptions& options) {
  require_lattice(d, g);
  require_lattice(d, h);
  if (!(d.min() > 0.0)) throw NonEllipticError("diffusion must be positive");
  const PeriodGrid& pg = d.grid();
  const int steps = options.steps_per_period > 0 ? options.steps_per_period : pg.nt;
  if (steps % pg.nt != 0) throw ValidationError("steps per period must be a multiple of nt");
  const SpatialGrid grid = SpatialGrid::cell(pg);
  const LinearCoefficients c{d, g, h};

  std::vector<double> psi(static_cast<std::size_t>(pg.nx), 1.0);
  std::vector<double> log_rho;
  double residual = 0.0;
  double estimate = 0.0;
  int it = 0;
  bool converged = false;
  while (it < options.max_iterations) {
    ++it;
    std::vector<double> w = psi;
    const double lr = scaled_period(w, grid, c, steps, pg.omega);
    residual = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) residual = std::max(residual, std::abs(w[i] - psi[i]));
    log_rho.push_back(lr);
    psi = std::move(w);

    estimate = lr;
    double change = std::numeric_limits<double>::infinity();
    const std::size_t k = log_rho.size();
    if (k >= 2) change = std::abs(log_rho[k - 1] - log_rho[k - 2]);
    if (k >= 3) {
      const double d1 = log_rho[k - 1] - log_rho[k - 2];
      const double d0 = log_rho[k - 2] - log_rho[k - 3];
      const double denom = d1 - d0;
      if (std::abs(denom) > 1e-300) {
        const double accel = log_rho[k - 1] - d1 * d1 / denom;
        // Accept the extrapolation only when it stays within the last step.
        if (std::isfinite(accel) && std::abs(accel - lr) <= std::abs(d1)) estimate = accel;
      }
    }
    if (residual <= options.tolerance && change <= options.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NoConvergence("power iteration did not converge in " + std::to_string(options.max_iterations) +
                        " periods (residual " + std::to_string(residual) + ")");
  }

  EigenResult r;
  r.lambda = estimate / pg.omega;
  r.iterations = it;
  r.residual = residual;

  std::vector<std::vector<double>> snaps;
  std::vector<double> u = psi;
  scaled_period(u, grid, c, steps, pg.omega, &snaps, steps / pg.nt);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(pg.nt) * pg.nx);
  for (int j = 0; j < pg.nt; ++j) {
    const double f = std::exp(-r.lambda * pg.t(j));
    for (double v : snaps[static_cast<std::size_t>(j)]) values.push_back(v * f);
  }
  const double top = *std::max_element(values.begin(), values.end());
  for (double& v : values) v /= top;
  r.eigenfunction = CoefficientField(pg, std::move(values));
  return r;
}

} // namespace

EigenResult principal_eigen(const CoefficientField& d, const CoefficientField& g, const CoefficientField& h,
                            const EigenOptions& options) {
  EigenResult coarse = solve_once(d, g, h, options);
  if (!options.refine) return coarse;
  const PeriodGrid& pg = d.grid();
  EigenOptions fine_opts = options;
  fine_opts.refine = false;
  fine_opts.steps_per_period = options.steps_per_period * 2;
  const EigenResult fine = solve_once(d.resampled(2 * pg.nt, 2 * pg.nx), g.resampled(2 * pg.nt, 2 * pg.nx),
                                      h.resampled(2 * pg.nt, 2 * pg.nx), fine_opts);
  coarse.unrefined_lambda = coarse.lambda;
  coarse.error_estimate = std::abs(fine.lambda - coarse.lambda);
  coarse.lambda = 2.0 * fine.lambda - coarse.lambda;
  return coarse;
}

CoefficientField tilted_drift(const CoefficientField& d, const CoefficientField& g, double mu) {
  return (2.0 * mu) * d + g;
}

CoefficientField tilted_potential(const CoefficientField& d, const CoefficientField& g, const CoefficientField& m,
                                  double mu) {
  return (mu * mu) * d + (mu * g + m);
}

EigenResult lambda_of_mu(const CoefficientField& d, const CoefficientField& g, const CoefficientField& m, double mu,
                         const EigenOptions& options) {
  return principal_eigen(d, tilted_drift(d, g, mu), tilted_potential(d, g, m, mu), options);
}

LambdaDiagnostics lambda_diagnostics(const CoefficientField& d, const CoefficientField& g, const CoefficientField& m,
                                     const std::vector<double>& mu_grid, const CoefficientField* m_compare,
                                     double tolerance, const EigenOptions& options) {
  LambdaDiagnostics out;
  out.mu = mu_grid;
  for (double mu : mu_grid) out.lambda.push_back(lambda_of_mu(d, g, m, mu, options).lambda);

  out.min_second_difference = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < mu_grid.size(); ++i) {
    const double h0 = mu_grid[i] - mu_grid[i - 1];
    const double h1 = mu_grid[i + 1] - mu_grid[i];
    const double alpha = h1 / (h0 + h1);
    const double chord = alpha * out.lambda[i - 1] + (1.0 - alpha) * out.lambda[i + 1];
    const double sd = 2.0 * (chord - out.lambda[i]);
    out.second_differences.push_back(sd);
    out.min_second_difference = std::min(out.min_second_difference, sd);
  }
  out.convex = out.second_differences.empty() || out.min_second_difference >= -tolerance;

  const auto sd = mean_and_symmetry(d).symmetry;
  const auto sg = mean_and_symmetry(g).symmetry;
  const auto sm = mean_and_symmetry(m).symmetry;
  out.evenness_applicable = sd.even_in_x.holds && sm.even_in_x.holds && sg.odd_in_x.holds;
  if (out.evenness_applicable) {
    for (std::size_t i = 0; i < mu_grid.size(); ++i) {
      const double other = lambda_of_mu(d, g, m, -mu_grid[i], options).lambda;
      out.evenness_defect = std::max(out.evenness_defect, std::abs(other - out.lambda[i]));
    }
  }

  if (m_compare != nullptr) {
    bool ordered = true, distinct = false;
    for (std::size_t i = 0; i < m.values().size(); ++i) {
      const double diff = m.values()[i] - m_compare->values()[i];
      if (diff < 0.0) ordered = false;
      if (diff > 0.0) distinct = true;
    }
    out.monotonicity_applicable = ordered && distinct;
    if (out.monotonicity_applicable) {
      out.min_monotonicity_gap = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < mu_grid.size(); ++i) {
        const double other = lambda_of_mu(d, g, *m_compare, mu_grid[i], options).lambda;
        out.min_monotonicity_gap = std::min(out.min_monotonicity_gap, out.lambda[i] - other);
      }
      out.monotone = out.min_monotonicity_gap > 0.0;
    }
  }
  return out;
}

} // namespace speedlab
