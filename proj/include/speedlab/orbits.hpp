#pragma once

#include "speedlab/coeffs.hpp"
#include "speedlab/system.hpp"

namespace speedlab {

struct OrbitOptions {
  double tolerance = 1e-8;  // sup change over one period
  int max_periods = 2000;
  double initial_scale = 1.0;  // march starts from initial_scale * max(c) / min(e)
};

struct PeriodicOrbit {
  CoefficientField snapshots;  // u*(t_j, x_k), identically 0 when extinct
  bool extinct = false;
  double lambda = 0.0;         // principal eigenvalue of the linearization at 0
  int periods = 0;
  double closure_gap = 0.0;    // sup |u(omega) - u(0)| at the last period
  double residual = 0.0;
};

// Positive periodic solution of u_t = d u_xx - g u_x + u (c - e u) under the
// same discrete scheme as the linear step, so u* is an exact discrete
// eigenfunction for the potential c - e u* with eigenvalue 0.
// Requires e >= 0 everywhere and e > 0 on at least 10% of the lattice;
// throws ValidationError otherwise and NoConvergence past max_periods.
PeriodicOrbit logistic_orbit(const CoefficientField& d, const CoefficientField& g, const CoefficientField& c,
                             const CoefficientField& e, const OrbitOptions& options = {});

// Largest scaled one-step defect (per unit time) of the scheme along the
// snapshots, with the step from the last snapshot closing onto the first.
// Throws ValidationError for an identically zero (extinct) orbit.
double orbit_residual(const CoefficientField& orbit, const CoefficientField& d, const CoefficientField& g,
                      const CoefficientField& c, const CoefficientField& e);

struct SemiTrivialOrbits {
  PeriodicOrbit u1;  // with d1, g1, b1, a11
  PeriodicOrbit u2;  // with d2, g2, b2, a22
};

SemiTrivialOrbits semi_trivial_orbits(const SystemSpec& sys, const OrbitOptions& options = {});

} // namespace speedlab
