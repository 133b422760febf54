#pragma once

#include "speedlab/coeffs.hpp"
#include "speedlab/system.hpp"
#include "speedlab/tridiag.hpp"

#include <array>
#include <vector>

namespace speedlab {

enum class Boundary { periodic, neumann };

// Nodes x_i = (first_column + i) * dx with dx = ell / nx, so node i reads
// coefficient column (first_column + i) mod nx.
struct SpatialGrid {
  long first_column = 0;
  int nodes = 0;
  double dx = 0.0;
  Boundary boundary = Boundary::periodic;

  // The period cell [0, ell) of a lattice.
  static SpatialGrid cell(const PeriodGrid& g) { return {0, g.nx, g.dx(), Boundary::periodic}; }
};

// Scalar state on the period cell.
struct CellState {
  std::vector<double> u;
  double t = 0.0;
};

// Two-species state on [x_lo, x_lo + (N-1) dx]. x_lo must be a multiple of
// dx = ell / nx; a periodic line must span a whole number of periods.
struct LineState {
  double x_lo = 0.0;
  double dx = 0.0;
  Boundary boundary = Boundary::neumann;
  std::array<std::vector<double>, 2> v;
  double t = 0.0;

  int nodes() const { return static_cast<int>(v[0].size()); }
  double x(int i) const { return x_lo + i * dx; }
  SpatialGrid spatial(const PeriodGrid& g) const;
};

// L u = d u_xx - v u_x + h u sampled on one lattice.
struct LinearCoefficients {
  const CoefficientField& d;
  const CoefficientField& v;
  const CoefficientField& h;
};

// I - dt (d D2 - v D1) at fractional time sample tau, with D1 upwinded by the
// sign of v node by node and zero-flux reflection at Neumann ends. The result
// is a Z-matrix with unit row sums.
Tridiagonal assemble_transport(const CoefficientField& d, const CoefficientField& v, double tau,
                               const SpatialGrid& grid, double dt);

// One step of length dt ending at t_new: an implicit transport solve followed
// by the exact factor exp(dt h(t_new)). Nonnegative data stay nonnegative and
// adding a constant c to h scales the step by exp(c dt).
void step_scalar_linear(std::vector<double>& u, const SpatialGrid& grid, const LinearCoefficients& c,
                        double t_new, double dt);

CellState step_scalar_linear(const CellState& state, const LinearCoefficients& c, double dt);

// Solution operator over one period starting at state.t; steps_per_period = 0
// selects one step per time sample.
CellState period_map(const CellState& state, const LinearCoefficients& c, int steps_per_period = 0);

enum class Form { competitive, cooperative };

// Advances the system from t0 to t1 with dt = omega / nt. The competitive
// form evolves (u1, u2); the cooperative form evolves v1 = u1, v2 = u2* - u2
// and needs the semi-trivial orbit u2* sampled on the system lattice. Both
// forms take the same steps, so they agree under the transform exactly.
// Throws BlowupError when a density exceeds SystemSpec::blowup_bound().
LineState evolve_system(LineState state, const SystemSpec& sys, Form form, double t0, double t1,
                        const CoefficientField* u2_star = nullptr);

// Reusable buffers for repeated system steps on one line.
class SystemStepper {
public:
  SystemStepper(const SystemSpec& sys, Form form, const CoefficientField* u2_star);

  // One step of dt = omega / nt; state.t must sit on a step boundary.
  void step(LineState& state);

private:
  const SystemSpec& sys_;
  Form form_;
  const CoefficientField* u2_star_;
  double bound_;
  std::array<std::vector<double>, 2> w_;
  // Neumann transport factors per time sample, valid for cached_grid_.
  SpatialGrid cached_grid_;
  std::vector<std::array<TridiagonalFactor, 2>> factors_;
  std::vector<bool> factored_;
};

// Attractor of the cooperative period map on the period cell, started from
// constant values; returned at t = 0 (multiples of omega). Throws
// NoConvergence when the sup change per period stays above tolerance.
std::array<std::vector<double>, 2> cooperative_cell_attractor(const SystemSpec& sys, const CoefficientField& u2_star,
                                                              const std::array<double, 2>& start,
                                                              double tolerance = 1e-10, int max_periods = 20000);

} // namespace speedlab
