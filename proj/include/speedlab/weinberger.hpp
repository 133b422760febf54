#pragma once

#include "speedlab/coeffs.hpp"
#include "speedlab/orbits.hpp"
#include "speedlab/pde.hpp"
#include "speedlab/system.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace speedlab {

// Cooperative-form profile on nodes x_i = -A + i dx, i = 0..N.
struct Profile {
  double A = 0.0;
  double dx = 0.0;
  std::array<std::vector<double>, 2> v;

  int nodes() const { return static_cast<int>(v[0].size()); }
  double x(int i) const { return -A + i * dx; }
  std::array<double, 2> left_plateau() const { return {v[0].front(), v[1].front()}; }
  std::array<double, 2> right_plateau() const { return {v[0].back(), v[1].back()}; }
};

// beta_i / 2 on x <= -A/2, a cosine ramp to 0 over [-A/2, 0], and 0 on x >= 0.
// Requires A > 0 and N >= 200.
Profile init_profile(const std::array<double, 2>& beta, double A, int N);

struct WeinbergerOptions {
  double A = 0.0;              // 0 selects 10 ell
  int cap = 300;               // iterations per recursion
  double change_tol = 1e-6;    // sup change that ends a recursion
  int bisection_steps = 8;
  double target_width = 0.0;   // stop bisecting once a bracket is this narrow
  double c_lo = 0.0;
  double c_hi = 0.0;           // 0 selects A / (4 omega)
  double beta_tol = 0.05;      // relative distance to beta for class beta
  double zero_tol = 0.01;      // relative size for class zero
  bool early_stop = true;      // end a recursion once the reading reaches beta
};

enum class LimitClass { beta, intermediate, zero };

std::string to_string(LimitClass c);

struct RecursionResult {
  Profile profile;
  int iterations = 0;
  bool cap_reached = false;
  bool stopped_early = false;
  double last_change = 0.0;
  double monotonicity_defect = 0.0;  // largest decrease removed by the floor max
};

struct TraceEntry {
  double c = 0.0;
  LimitClass cls = LimitClass::zero;
  std::array<double, 2> reading{};       // limit profile at the reading point
  std::array<double, 2> left_plateau{};  // limit profile at x = -A
  int iterations = 0;
  bool cap_reached = false;
};

struct SpeedBracket {
  double lo = 0.0;
  double hi = 0.0;
  bool lower_open = false;  // class changes at or below c_lo
  bool upper_open = false;  // no change found up to c_hi
  double width() const { return hi - lo; }
  bool contains(double c) const { return lo <= c && c <= hi; }
};

struct BracketResult {
  SpeedBracket c_star;
  SpeedBracket c_bar;
  std::vector<TraceEntry> trace;  // sorted by c
  double A = 0.0;
  double read_x = 0.0;
  std::array<double, 2> beta_at_read{};
};

// The recursion a_{m+1} = max{(1/n) phi~, T_{-c omega} Q_omega[a_m]} on a
// truncated line, where Q_omega is the cooperative period map with
// zero-flux ends and phi~ is init_profile of the smallest orbit values.
class WeinbergerRecursion {
public:
  WeinbergerRecursion(const SystemSpec& sys, const SemiTrivialOrbits& orbits, WeinbergerOptions options = {});

  const WeinbergerOptions& options() const { return options_; }
  const Profile& floor_profile() const { return floor_; }
  const std::array<double, 2>& beta_bound() const { return bound_; }
  // Attractor of the cooperative period map on the cell, started from the
  // floor plateau; the reference state for classification.
  const std::array<std::vector<double>, 2>& beta_estimate() const { return beta_; }

  // One application of R. Throws ShiftOutOfRange when |c omega| > A / 4.
  Profile apply(const Profile& p, double c, int n_index) const;

  RecursionResult limit(double c, int n_index = 1) const;

  LimitClass classify(const Profile& p, std::array<double, 2>* reading = nullptr) const;

  // Bisection for the thresholds of class beta (c*) and of class zero (c bar).
  // Throws InconsistentClassification when classes are not ordered in c.
  BracketResult bracket(const std::function<void(const TraceEntry&)>& progress = {}) const;

private:
  int read_node() const;

  const SystemSpec& sys_;
  CoefficientField u2_star_;
  WeinbergerOptions options_;
  Profile floor_;
  std::array<double, 2> bound_{};
  std::array<std::vector<double>, 2> beta_;
  std::size_t phase_stride_ = 1;
  std::size_t phase_offset_ = 0;
  double beta_scale_ = 0.0;
};

Profile apply_R(const Profile& p, double c, int n_index, const WeinbergerRecursion& recursion);

RecursionResult recursion_limit(double c, int n_index, const WeinbergerRecursion& recursion);

BracketResult bracket_speeds(const SystemSpec& sys, const SemiTrivialOrbits& orbits,
                             const WeinbergerOptions& options = {});

} // namespace speedlab
