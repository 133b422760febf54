#include "speedlab/speeds.hpp"

#include "speedlab/errors.hpp"
#include "speedlab/pde.hpp"

#include <algorithm>
#include <cmath>

namespace speedlab {

SpeedMinimum minimize_speed(const std::function<double(double)>& lambda, double mu_lo, double mu_hi,
                            double rel_tol) {
  if (!(0.0 < mu_lo && mu_lo < mu_hi)) throw ValidationError("speed search needs 0 < mu_lo < mu_hi");
  SpeedMinimum out;
  auto q = [&](double mu) {
    ++out.evaluations;
    return lambda(mu) / mu;
  };
  const double probe = 1e-3 * (mu_hi - mu_lo);
  const double q_lo = q(mu_lo);
  if (!(q(mu_lo + probe) < q_lo)) {
    throw NoInteriorMinimum("lambda(mu)/mu is not decreasing at mu = " + std::to_string(mu_lo), true);
  }
  const double q_hi = q(mu_hi);
  if (!(q(mu_hi - probe) < q_hi)) {
    throw NoInteriorMinimum("lambda(mu)/mu is not increasing at mu = " + std::to_string(mu_hi), false);
  }

  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = mu_lo, b = mu_hi;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = q(x1), f2 = q(x2);
  while (b - a > rel_tol * 0.5 * (a + b)) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = q(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = q(x2);
    }
  }
  if (f1 <= f2) {
    out.c = f1;
    out.mu = x1;
  } else {
    out.c = f2;
    out.mu = x2;
  }
  return out;
}

ReflectedCoefficients reflect_equation(const CoefficientField& d, const CoefficientField& g,
                                       const CoefficientField& m) {
  return {reflect_x(d), -1.0 * reflect_x(g), reflect_x(m)};
}

namespace {

SpeedMinimum rightward(const CoefficientField& d, const CoefficientField& g, const CoefficientField& m,
                       const SpeedOptions& options) {
  return minimize_speed([&](double mu) { return lambda_of_mu(d, g, m, mu, options.eigen).lambda; }, options.mu_lo,
                        options.mu_hi, options.rel_tol);
}

ScalarSpeeds scalar_speeds_once(const CoefficientField& d, const CoefficientField& g, const CoefficientField& b,
                                const SpeedOptions& options) {
  ScalarSpeeds s;
  s.lambda0 = principal_eigen(d, g, b, options.eigen).lambda;
  if (s.lambda0 <= 0.0) throw NotMonostable("principal eigenvalue at mu = 0 is not positive", s.lambda0);
  const SpeedMinimum right = rightward(d, g, b, options);
  const ReflectedCoefficients r = reflect_equation(d, g, b);
  const SpeedMinimum left = rightward(r.d, r.g, r.m, options);
  s.right = right.c;
  s.mu_right = right.mu;
  s.left = left.c;
  s.mu_left = left.mu;
  return s;
}

} // namespace

ScalarSpeeds scalar_kpp_speeds(const CoefficientField& d, const CoefficientField& g, const CoefficientField& b,
                               const SpeedOptions& options) {
  ScalarSpeeds coarse = scalar_speeds_once(d, g, b, options);
  if (!options.refine) return coarse;
  const PeriodGrid& pg = d.grid();
  const int nt = 2 * pg.nt, nx = 2 * pg.nx;
  SpeedOptions fine_opts = options;
  fine_opts.eigen.steps_per_period *= 2;
  const ScalarSpeeds fine =
      scalar_speeds_once(d.resampled(nt, nx), g.resampled(nt, nx), b.resampled(nt, nx), fine_opts);
  coarse.right_error = std::abs(fine.right - coarse.right);
  coarse.left_error = std::abs(fine.left - coarse.left);
  coarse.right = 2.0 * fine.right - coarse.right;
  coarse.left = 2.0 * fine.left - coarse.left;
  coarse.mu_right = 2.0 * fine.mu_right - coarse.mu_right;
  coarse.mu_left = 2.0 * fine.mu_left - coarse.mu_left;
  coarse.lambda0 = 2.0 * fine.lambda0 - coarse.lambda0;
  return coarse;
}

namespace {

LinearSpeed linear_speed_once(const SystemSpec& sys, const CoefficientField& u2_star, const SpeedOptions& options) {
  const CoefficientField m0 = sys.b(0) - sys.a(0, 1) * u2_star;
  LinearSpeed out;
  out.h2_margin = principal_eigen(sys.d(0), sys.g(0), m0, options.eigen).lambda;
  if (out.h2_margin <= 0.0) {
    throw NotMonostable("lambda(d1, g1, b1 - a12 u2*) is not positive", out.h2_margin);
  }
  const SpeedMinimum best = rightward(sys.d(0), sys.g(0), m0, options);
  out.c0 = best.c;
  out.mu0 = best.mu;
  out.lambda0_at_mu0 = best.c * best.mu;
  return out;
}

} // namespace

LinearSpeed linear_speed_c0(const SystemSpec& sys, const CoefficientField& u2_star, const SpeedOptions& options) {
  LinearSpeed coarse = linear_speed_once(sys, u2_star, options);
  if (!options.refine) return coarse;
  const SystemSpec fine_sys = sys.refined();
  const PeriodicOrbit fine_orbit = logistic_orbit(fine_sys.d(1), fine_sys.g(1), fine_sys.b(1), fine_sys.a(1, 1));
  SpeedOptions fine_opts = options;
  fine_opts.eigen.steps_per_period *= 2;
  const LinearSpeed fine = linear_speed_once(fine_sys, fine_orbit.snapshots, fine_opts);
  coarse.unrefined_c0 = coarse.c0;
  coarse.error_estimate = std::abs(fine.c0 - coarse.c0);
  coarse.c0 = 2.0 * fine.c0 - coarse.c0;
  coarse.mu0 = 2.0 * fine.mu0 - coarse.mu0;
  coarse.lambda0_at_mu0 = coarse.c0 * coarse.mu0;
  return coarse;
}

namespace {

double max_abs(const std::vector<double>& u) {
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

} // namespace

CoupledEigenfunction coupled_eigenfunction(const SystemSpec& sys, const CoefficientField& u2_star, double mu0,
                                           const EigenOptions& options, double phi1_scale) {
  const PeriodGrid& pg = sys.grid();
  if (options.steps_per_period != 0 && options.steps_per_period != pg.nt) {
    throw ValidationError("the coupled eigenfunction uses one step per time sample");
  }
  EigenOptions opts = options;
  opts.refine = false;

  const CoefficientField v1 = tilted_drift(sys.d(0), sys.g(0), mu0);
  const CoefficientField h1 = tilted_potential(sys.d(0), sys.g(0), sys.b(0) - sys.a(0, 1) * u2_star, mu0);
  const CoefficientField v2 = tilted_drift(sys.d(1), sys.g(1), mu0);
  const CoefficientField h2 =
      tilted_potential(sys.d(1), sys.g(1), sys.b(1) - 2.0 * (sys.a(1, 1) * u2_star), mu0);
  const CoefficientField forcing = sys.a(1, 0) * u2_star;

  CoupledEigenfunction out;
  out.mu0 = mu0;
  const EigenResult e1 = principal_eigen(sys.d(0), v1, h1, opts);
  out.lambda0 = e1.lambda;
  out.lambda_bar = principal_eigen(sys.d(1), v2, h2, opts).lambda;
  if (!(out.lambda0 > out.lambda_bar)) {
    throw D1Violated("lambda0(mu0) does not exceed lambda_bar(mu0)", out.lambda0 - out.lambda_bar);
  }

  const SpatialGrid grid = SpatialGrid::cell(pg);
  const LinearCoefficients c1{sys.d(0), v1, h1};
  const LinearCoefficients c2{sys.d(1), v2, h2};
  const double dt = pg.dt();
  const std::size_t nx = static_cast<std::size_t>(pg.nx);

  // Step from sample j to j + 1 of the cooperative linearization.
  auto coupled_step = [&](std::vector<double>& w1, std::vector<double>& w2, int j) {
    const double t_new = (j + 1) * dt;
    step_scalar_linear(w1, grid, c1, t_new, dt);
    step_scalar_linear(w2, grid, c2, t_new, dt);
    for (std::size_t k = 0; k < nx; ++k) w2[k] += dt * forcing(j + 1, static_cast<long>(k)) * w1[k];
  };

  std::vector<double> phi1_0(nx);
  for (std::size_t k = 0; k < nx; ++k) phi1_0[k] = phi1_scale * e1.eigenfunction(0, static_cast<long>(k));

  std::vector<double> phi2_0(nx, 0.0);
  out.degenerate = forcing.max_abs() == 0.0;
  if (!out.degenerate) {
    std::vector<double> w1 = phi1_0, f(nx, 0.0);
    for (int j = 0; j < pg.nt; ++j) coupled_step(w1, f, j);
    const double r1 = std::exp(out.lambda0 * pg.omega);
    std::vector<double> term(nx);
    for (std::size_t k = 0; k < nx; ++k) term[k] = f[k] / r1;
    phi2_0 = term;
    double previous = max_abs(term);
    for (int n = 1;; ++n) {
      CellState s{term, 0.0};
      term = period_map(s, c2).u;
      for (double& v : term) v /= r1;
      for (std::size_t k = 0; k < nx; ++k) phi2_0[k] += term[k];
      const double size = max_abs(term);
      out.neumann_terms = n;
      if (size <= 1e-12 * std::max(1.0, max_abs(phi2_0))) break;
      if (n > 50 && size >= previous) {
        throw D1Violated("Neumann series for phi2 does not contract", out.lambda0 - out.lambda_bar);
      }
      if (n > 100000) throw NoConvergence("Neumann series for phi2 did not converge");
      previous = size;
    }
  }

  std::vector<double> w1 = phi1_0, w2 = phi2_0;
  std::vector<double> p1, p2;
  p1.reserve(nx * pg.nt);
  p2.reserve(nx * pg.nt);
  for (int j = 0; j < pg.nt; ++j) {
    const double f = std::exp(-out.lambda0 * pg.t(j));
    for (std::size_t k = 0; k < nx; ++k) {
      p1.push_back(w1[k] * f);
      p2.push_back(w2[k] * f);
    }
    coupled_step(w1, w2, j);
  }
  const double back = std::exp(-out.lambda0 * pg.omega);
  double defect = 0.0;
  for (std::size_t k = 0; k < nx; ++k) {
    defect = std::max({defect, std::abs(w1[k] * back - phi1_0[k]), std::abs(w2[k] * back - phi2_0[k])});
  }
  out.residual = defect / std::max(max_abs(phi1_0), max_abs(phi2_0));
  out.phi1 = CoefficientField(pg, std::move(p1));
  out.phi2 = CoefficientField(pg, std::move(p2));
  return out;
}

} // namespace speedlab
