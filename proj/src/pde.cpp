#include "speedlab/pde.hpp"

#include "speedlab/errors.hpp"

#include <cmath>

namespace speedlab {

namespace {

double tau_of(const PeriodGrid& g, double t) { return t / g.omega * g.nt; }

void transport_solve(std::vector<double>& u, const CoefficientField& d, const CoefficientField& v, double tau,
                     const SpatialGrid& grid, double dt) {
  const Tridiagonal m = assemble_transport(d, v, tau, grid, dt);
  if (grid.boundary == Boundary::periodic) solve_cyclic(m, u);
  else solve_tridiagonal(m, u);
}

long step_index(const PeriodGrid& g, double t) {
  const double s = t / g.dt();
  const long n = std::lround(s);
  if (std::abs(s - n) > 1e-7) throw ValidationError("state time is not on a step boundary");
  return n;
}

// Solves u_i = w_i exp(dt r_i(u)) with r_i = b_i - a_i1 u_1 - a_i2 u_2.
void react(double w1, double w2, double b1, double b2, double a11, double a12, double a21, double a22, double dt,
           double& u1, double& u2) {
  u1 = w1 * std::exp(dt * (b1 - a11 * w1 - a12 * w2));
  u2 = w2 * std::exp(dt * (b2 - a21 * w1 - a22 * w2));
  for (int it = 0; it < 60; ++it) {
    const double e1 = std::exp(dt * (b1 - a11 * u1 - a12 * u2));
    const double e2 = std::exp(dt * (b2 - a21 * u1 - a22 * u2));
    const double f1 = u1 - w1 * e1;
    const double f2 = u2 - w2 * e2;
    const double j11 = 1.0 + w1 * e1 * dt * a11, j12 = w1 * e1 * dt * a12;
    const double j21 = w2 * e2 * dt * a21, j22 = 1.0 + w2 * e2 * dt * a22;
    const double det = j11 * j22 - j12 * j21;
    const double d1 = (j22 * f1 - j12 * f2) / det;
    const double d2 = (j11 * f2 - j21 * f1) / det;
    u1 -= d1;
    u2 -= d2;
    if (std::abs(d1) <= 1e-15 + 1e-14 * std::abs(u1) && std::abs(d2) <= 1e-15 + 1e-14 * std::abs(u2)) return;
  }
  throw NoConvergence("pointwise reaction solve did not converge");
}

} // namespace

SpatialGrid LineState::spatial(const PeriodGrid& g) const {
  if (std::abs(dx - g.dx()) > 1e-12 * g.dx()) throw ValidationError("line spacing must equal ell / nx");
  const double c = x_lo / dx;
  const long first = std::lround(c);
  if (std::abs(c - first) > 1e-6) throw ValidationError("line origin must lie on the coefficient lattice");
  if (boundary == Boundary::periodic && nodes() % g.nx != 0) {
    throw ValidationError("a periodic line must span whole periods");
  }
  return {first, nodes(), dx, boundary};
}

Tridiagonal assemble_transport(const CoefficientField& d, const CoefficientField& v, double tau,
                               const SpatialGrid& grid, double dt) {
  const int n = grid.nodes;
  Tridiagonal m(static_cast<std::size_t>(n));
  const double idx2 = 1.0 / (grid.dx * grid.dx);
  const double idx = 1.0 / grid.dx;
  for (int i = 0; i < n; ++i) {
    const long k = grid.first_column + i;
    const double di = d.at(tau, k);
    if (!(di > 0.0)) throw NonEllipticError("diffusion must be positive");
    const double vi = v.at(tau, k);
    const double lo = di * idx2 + std::max(vi, 0.0) * idx;
    const double up = di * idx2 + std::max(-vi, 0.0) * idx;
    m.lower[i] = -dt * lo;
    m.upper[i] = -dt * up;
    m.diag[i] = 1.0 + dt * (lo + up);
  }
  if (grid.boundary == Boundary::neumann && n > 1) {
    // Ghost values u_{-1} = u_1 and u_n = u_{n-2}.
    m.upper[0] += m.lower[0];
    m.lower[0] = 0.0;
    m.lower[n - 1] += m.upper[n - 1];
    m.upper[n - 1] = 0.0;
  } else if (grid.boundary == Boundary::neumann) {
    m.lower[0] = m.upper[0] = 0.0;
    m.diag[0] = 1.0;
  }
  return m;
}

void step_scalar_linear(std::vector<double>& u, const SpatialGrid& grid, const LinearCoefficients& c,
                        double t_new, double dt) {
  const PeriodGrid& g = c.d.grid();
  const double tau = tau_of(g, t_new);
  transport_solve(u, c.d, c.v, tau, grid, dt);
  for (int i = 0; i < grid.nodes; ++i) u[i] *= std::exp(dt * c.h.at(tau, grid.first_column + i));
}

CellState step_scalar_linear(const CellState& state, const LinearCoefficients& c, double dt) {
  const SpatialGrid grid = SpatialGrid::cell(c.d.grid());
  if (state.u.size() != static_cast<std::size_t>(grid.nodes)) throw ValidationError("cell state size mismatch");
  CellState out{state.u, state.t + dt};
  step_scalar_linear(out.u, grid, c, out.t, dt);
  return out;
}

CellState period_map(const CellState& state, const LinearCoefficients& c, int steps_per_period) {
  const PeriodGrid& g = c.d.grid();
  const int steps = steps_per_period > 0 ? steps_per_period : g.nt;
  const double dt = g.omega / steps;
  const SpatialGrid grid = SpatialGrid::cell(g);
  CellState out = state;
  for (int s = 1; s <= steps; ++s) step_scalar_linear(out.u, grid, c, state.t + s * dt, dt);
  out.t = state.t + g.omega;
  return out;
}

SystemStepper::SystemStepper(const SystemSpec& sys, Form form, const CoefficientField* u2_star)
    : sys_(sys), form_(form), u2_star_(u2_star), bound_(sys.blowup_bound()) {
  if (form == Form::cooperative) {
    if (u2_star == nullptr) throw ValidationError("the cooperative form needs the orbit u2*");
    if (!(u2_star->grid() == sys.grid())) throw ValidationError("orbit u2* must share the system lattice");
  }
}

void SystemStepper::step(LineState& state) {
  const PeriodGrid& g = sys_.grid();
  const SpatialGrid grid = state.spatial(g);
  const double dt = g.dt();
  const long n = step_index(g, state.t);
  const double tau = static_cast<double>(n + 1);
  const int nodes = grid.nodes;
  const bool coop = form_ == Form::cooperative;

  w_[0] = state.v[0];
  w_[1].resize(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) {
    w_[1][i] = coop ? (*u2_star_)(n, grid.first_column + i) - state.v[1][i] : state.v[1][i];
  }
  if (grid.boundary == Boundary::neumann) {
    if (grid.first_column != cached_grid_.first_column || grid.nodes != cached_grid_.nodes ||
        cached_grid_.boundary != Boundary::neumann) {
      cached_grid_ = grid;
      factors_.assign(static_cast<std::size_t>(g.nt), {});
      factored_.assign(static_cast<std::size_t>(g.nt), false);
    }
    const std::size_t j = static_cast<std::size_t>(CoefficientField::wrap(n + 1, g.nt));
    if (!factored_[j]) {
      for (int s = 0; s < 2; ++s) {
        factors_[j][s] = TridiagonalFactor(assemble_transport(sys_.d(s), sys_.g(s), tau, grid, dt));
      }
      factored_[j] = true;
    }
    factors_[j][0].solve(w_[0]);
    factors_[j][1].solve(w_[1]);
  } else {
    transport_solve(w_[0], sys_.d(0), sys_.g(0), tau, grid, dt);
    transport_solve(w_[1], sys_.d(1), sys_.g(1), tau, grid, dt);
  }

  const double bound = bound_;
  for (int i = 0; i < nodes; ++i) {
    const long k = grid.first_column + i;
    double u1, u2;
    react(w_[0][i], w_[1][i], sys_.b(0)(n + 1, k), sys_.b(1)(n + 1, k), sys_.a(0, 0)(n + 1, k),
          sys_.a(0, 1)(n + 1, k), sys_.a(1, 0)(n + 1, k), sys_.a(1, 1)(n + 1, k), dt, u1, u2);
    if (!(u1 <= bound) || !(u2 <= bound)) {
      throw BlowupError("density exceeded " + std::to_string(bound) + " at x=" + std::to_string(state.x(i)));
    }
    state.v[0][i] = u1;
    state.v[1][i] = coop ? (*u2_star_)(n + 1, k) - u2 : u2;
  }
  state.t = (n + 1) * dt;
}

LineState evolve_system(LineState state, const SystemSpec& sys, Form form, double t0, double t1,
                        const CoefficientField* u2_star) {
  if (std::abs(state.t - t0) > 1e-9 * sys.grid().omega) throw ValidationError("state time differs from t0");
  SystemStepper stepper(sys, form, u2_star);
  const long first = step_index(sys.grid(), t0);
  const long last = step_index(sys.grid(), t1);
  for (long s = first; s < last; ++s) stepper.step(state);
  return state;
}

std::array<std::vector<double>, 2> cooperative_cell_attractor(const SystemSpec& sys, const CoefficientField& u2_star,
                                                              const std::array<double, 2>& start, double tolerance,
                                                              int max_periods) {
  const PeriodGrid& g = sys.grid();
  LineState cell;
  cell.x_lo = 0.0;
  cell.dx = g.dx();
  cell.boundary = Boundary::periodic;
  for (int s = 0; s < 2; ++s) cell.v[s].assign(static_cast<std::size_t>(g.nx), start[s]);
  SystemStepper stepper(sys, Form::cooperative, &u2_star);
  for (int period = 0; period < max_periods; ++period) {
    const auto before = cell.v;
    for (int j = 0; j < g.nt; ++j) stepper.step(cell);
    double change = 0.0;
    for (int s = 0; s < 2; ++s) {
      for (int k = 0; k < g.nx; ++k) change = std::max(change, std::abs(cell.v[s][k] - before[s][k]));
    }
    if (change < tolerance) return cell.v;
  }
  throw NoConvergence("cell attractor did not settle within " + std::to_string(max_periods) + " periods");
}

} // namespace speedlab
