#include "speedlab/orbits.hpp"

#include "speedlab/eigen.hpp"
#include "speedlab/errors.hpp"
#include "speedlab/pde.hpp"

#include <algorithm>
#include <cmath>

namespace speedlab {

namespace {

struct Logistic {
  const CoefficientField& d;
  const CoefficientField& g;
  const CoefficientField& c;
  const CoefficientField& e;

  // One step from sample j to j + 1.
  void step(std::vector<double>& u, int j) const {
    const PeriodGrid& pg = d.grid();
    const double dt = pg.dt();
    const SpatialGrid grid = SpatialGrid::cell(pg);
    const Tridiagonal m = assemble_transport(d, g, j + 1.0, grid, dt);
    solve_cyclic(m, u);
    for (int k = 0; k < pg.nx; ++k) {
      const double w = u[k];
      const double ck = c(j + 1, k), ek = e(j + 1, k);
      double v = w;
      for (int it = 0;; ++it) {
        const double ex = std::exp(dt * (ck - ek * v));
        const double f = v - w * ex;
        const double delta = f / (1.0 + w * ex * dt * ek);
        v -= delta;
        if (std::abs(delta) <= 1e-15 + 1e-14 * std::abs(v)) break;
        if (it > 60) throw NoConvergence("logistic reaction solve did not converge");
      }
      u[k] = v;
    }
  }
};

void require_lattice(const CoefficientField& a, const CoefficientField& b) {
  if (!(a.grid() == b.grid())) throw ValidationError("orbit coefficients must share one lattice");
}

} // namespace

PeriodicOrbit logistic_orbit(const CoefficientField& d, const CoefficientField& g, const CoefficientField& c,
                             const CoefficientField& e, const OrbitOptions& options) {
  require_lattice(d, g);
  require_lattice(d, c);
  require_lattice(d, e);
  const PeriodGrid& pg = d.grid();
  if (!(options.initial_scale > 0.0)) throw ValidationError("initial_scale must be positive");
  if (e.min() < 0.0) throw ValidationError("self-limitation must be nonnegative");
  const auto positive = std::count_if(e.values().begin(), e.values().end(), [](double v) { return v > 0.0; });
  if (10 * positive < static_cast<long>(e.values().size())) {
    throw ValidationError("self-limitation must be positive on at least 10% of the lattice");
  }

  PeriodicOrbit out;
  out.lambda = principal_eigen(d, g, c).lambda;
  if (out.lambda <= 0.0) {
    out.extinct = true;
    out.snapshots = CoefficientField(pg, std::vector<double>(e.values().size(), 0.0));
    return out;
  }

  double emin = std::numeric_limits<double>::infinity();
  for (double v : e.values()) {
    if (v > 0.0) emin = std::min(emin, v);
  }
  const Logistic model{d, g, c, e};
  std::vector<double> u(static_cast<std::size_t>(pg.nx), options.initial_scale * std::max(c.max(), 1e-3) / emin);
  bool converged = false;
  while (out.periods < options.max_periods) {
    const std::vector<double> start = u;
    for (int j = 0; j < pg.nt; ++j) model.step(u, j);
    ++out.periods;
    out.closure_gap = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) out.closure_gap = std::max(out.closure_gap, std::abs(u[k] - start[k]));
    if (out.closure_gap < options.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NoConvergence("periodic orbit did not settle within " + std::to_string(options.max_periods) + " periods");
  }

  std::vector<double> values;
  values.reserve(e.values().size());
  for (int j = 0; j < pg.nt; ++j) {
    values.insert(values.end(), u.begin(), u.end());
    model.step(u, j);
  }
  out.snapshots = CoefficientField(pg, std::move(values));
  out.residual = orbit_residual(out.snapshots, d, g, c, e);
  return out;
}

double orbit_residual(const CoefficientField& orbit, const CoefficientField& d, const CoefficientField& g,
                      const CoefficientField& c, const CoefficientField& e) {
  require_lattice(orbit, d);
  if (orbit.max_abs() == 0.0) throw ValidationError("the residual needs a non-extinct orbit");
  const PeriodGrid& pg = d.grid();
  const Logistic model{d, g, c, e};
  double defect = 0.0, closure = 0.0;
  for (int j = 0; j < pg.nt; ++j) {
    std::vector<double> u(static_cast<std::size_t>(pg.nx));
    for (int k = 0; k < pg.nx; ++k) u[k] = orbit(j, k);
    model.step(u, j);
    for (int k = 0; k < pg.nx; ++k) {
      const double gap = std::abs(u[k] - orbit(j + 1, k));
      if (j + 1 < pg.nt) defect = std::max(defect, gap / pg.dt());
      else closure = std::max(closure, gap);
    }
  }
  return defect + closure;
}

SemiTrivialOrbits semi_trivial_orbits(const SystemSpec& sys, const OrbitOptions& options) {
  return {logistic_orbit(sys.d(0), sys.g(0), sys.b(0), sys.a(0, 0), options),
          logistic_orbit(sys.d(1), sys.g(1), sys.b(1), sys.a(1, 1), options)};
}

} // namespace speedlab
