#pragma once

#include "speedlab/orbits.hpp"
#include "speedlab/pde.hpp"
#include "speedlab/system.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace speedlab {

struct FrontOptions {
  double A = 0.0;                        // 0: auto-size from c_estimate
  int periods = 40;
  double threshold = 0.5;
  std::optional<double> c_estimate;      // expected speed; sizes or checks A
  int snapshot_every = 0;                // 0: no intermediate snapshots
};

struct FrontTrace {
  std::vector<double> times;
  std::vector<double> positions;
  LineState final_state;
  std::vector<LineState> snapshots;
  double A = 0.0;
  bool domain_too_small = false;  // front came within 5 ell of the right end
  bool no_front = false;          // species 1 absent, positions undefined
};

// Largest x with v1(x) / u1*(0, x) >= threshold, interpolated linearly between
// nodes. Throws NoCrossing when no node, or every node, reaches the threshold.
double front_position(const LineState& state, const CoefficientField& u1_star, double threshold = 0.5);

// Competitive data (u1* on x <= 0, u2* everywhere) evolved in cooperative form
// on [-A, A] with zero-flux ends; the front is recorded once per period.
// Requires A >= c_estimate * periods * omega + 10 ell when both are given.
FrontTrace run_front(const SystemSpec& sys, const SemiTrivialOrbits& orbits, const FrontOptions& options = {});

struct SpeedFit {
  double speed = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double ci_halfwidth = 0.0;  // 95% Student-t
  int points = 0;
};

// Least squares on the trace after dropping the leading fraction as
// transient. Throws TooFewPoints when fewer than 10 points remain.
SpeedFit fit_speed(const FrontTrace& trace, double discard_fraction = 0.3);

struct SpreadingVerdict {
  SpeedFit fit;
  double c0 = 0.0;
  double relative_gap = 0.0;  // |fit - c0| / c0
  double front = 0.0;         // final front position
  double tail_ahead = 0.0;    // sup over x >= front + 2 ell of |v| / |beta|
  double tail_behind = 0.0;   // sup over [x_lo + 5 ell, front - 2 ell] of |v - beta| / |beta|
  bool speed_ok = false;
  bool ahead_ok = false;
  bool behind_ok = false;
  bool pass = false;
  std::string note;
};

// beta is the cell attractor (period-0 profile over one cell per species).
SpreadingVerdict spreading_verdict(const SystemSpec& sys, const FrontTrace& trace,
                                   const std::array<std::vector<double>, 2>& beta, double c0,
                                   double discard_fraction = 0.3);

} // namespace speedlab
