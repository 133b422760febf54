#include "speedlab/weinberger.hpp"

#include "speedlab/errors.hpp"
#include "speedlab/isotonic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace speedlab {

std::string to_string(LimitClass c) {
  switch (c) {
  case LimitClass::beta: return "beta";
  case LimitClass::intermediate: return "intermediate";
  case LimitClass::zero: return "zero";
  }
  return "unknown";
}

Profile init_profile(const std::array<double, 2>& beta, double A, int N) {
  if (!(A > 0.0)) throw ValidationError("profile half-width A must be positive");
  if (N < 200) throw ValidationError("profile needs at least 200 intervals");
  Profile p;
  p.A = A;
  p.dx = 2.0 * A / N;
  for (int s = 0; s < 2; ++s) {
    p.v[s].resize(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i <= N; ++i) {
      const double x = p.x(i);
      double shape = 0.0;
      if (x <= -0.5 * A) shape = 1.0;
      else if (x < 0.0) shape = 0.5 * (1.0 + std::cos(std::numbers::pi * (x + 0.5 * A) / (0.5 * A)));
      p.v[s][static_cast<std::size_t>(i)] = 0.5 * beta[s] * shape;
    }
  }
  return p;
}

namespace {

long column_of(double x, double dx) { return std::lround(x / dx); }

} // namespace

WeinbergerRecursion::WeinbergerRecursion(const SystemSpec& sys, const SemiTrivialOrbits& orbits,
                                         WeinbergerOptions options)
    : sys_(sys), u2_star_(orbits.u2.snapshots), options_(options) {
  const PeriodGrid& g = sys.grid();
  if (options_.A == 0.0) options_.A = 10.0 * g.ell;
  if (options_.A < 10.0 * g.ell - 1e-12) throw ValidationError("recursion half-width A must be at least 10 ell");
  if (options_.c_hi == 0.0) options_.c_hi = options_.A / (4.0 * g.omega);
  if (!(options_.c_hi > options_.c_lo)) throw ValidationError("bracket range needs c_lo < c_hi");
  if (orbits.u1.extinct) throw ValidationError("u1* is extinct; there is no front to bracket");

  const double dx = g.dx();
  const double halfwidth_nodes = options_.A / dx;
  if (std::abs(halfwidth_nodes - std::round(halfwidth_nodes)) > 1e-6) {
    throw ValidationError("A must be a multiple of ell / nx");
  }
  const int N = 2 * static_cast<int>(std::lround(halfwidth_nodes));

  std::array<double, 2> lows{}, plateau{};
  for (int s = 0; s < 2; ++s) {
    const CoefficientField& u = s == 0 ? orbits.u1.snapshots : orbits.u2.snapshots;
    double lo = u(0, 0), hi = u(0, 0);
    for (int k = 0; k < g.nx; ++k) {
      lo = std::min(lo, u(0, k));
      hi = std::max(hi, u(0, k));
    }
    lows[s] = lo;
    plateau[s] = 0.5 * lo;
    bound_[s] = hi;
  }
  floor_ = init_profile(lows, options_.A, N);

  beta_ = cooperative_cell_attractor(sys, u2_star_, plateau);
  for (int s = 0; s < 2; ++s) {
    for (double v : beta_[s]) beta_scale_ = std::max(beta_scale_, v);
  }

  phase_stride_ = sys.x_independent() ? 1 : static_cast<std::size_t>(g.nx);
  phase_offset_ = static_cast<std::size_t>(CoefficientField::wrap(column_of(-options_.A, dx), g.nx));
}

int WeinbergerRecursion::read_node() const {
  const double x = options_.A - 2.0 * sys_.grid().ell;
  return static_cast<int>(std::lround((x + options_.A) / floor_.dx));
}

namespace {

// Nodes appended to the right of the profile while Q acts: the shift reads
// up to |c| omega past A, and the zero-flux end must sit beyond the distance
// the solution can feel within one period.
int buffer_nodes(const SystemSpec& sys, double c) {
  const PeriodGrid& g = sys.grid();
  const double d = std::max(sys.d(0).max(), sys.d(1).max());
  const double b = std::max({sys.b(0).max(), sys.b(1).max(), 0.0});
  const double reach = std::max(2.0 * g.ell, 6.0 * std::sqrt(d * g.omega) + 2.0 * std::sqrt(d * b) * g.omega);
  const int periods = static_cast<int>(std::ceil((std::abs(c) * g.omega + reach) / g.ell));
  return periods * g.nx;
}

Profile apply_with(const Profile& p, double c, int n_index, const SystemSpec& sys, SystemStepper& stepper,
                   const Profile& floor, const std::array<double, 2>& bound, std::size_t stride, std::size_t offset) {
  const PeriodGrid& g = sys.grid();
  const double shift = c * g.omega;
  if (std::abs(shift) > p.A / 4.0) {
    throw ShiftOutOfRange("shift c omega = " + std::to_string(shift) + " exceeds A/4 = " + std::to_string(p.A / 4.0));
  }
  const int N = p.nodes() - 1;
  const int extra = buffer_nodes(sys, c);
  LineState s;
  s.x_lo = -p.A;
  s.dx = p.dx;
  s.boundary = Boundary::neumann;
  s.t = 0.0;
  for (int sp = 0; sp < 2; ++sp) {
    // Continue the profile with its decay ratio over the last period, which
    // reproduces exponential tails and keeps flat states flat.
    std::vector<double>& v = s.v[sp];
    v = p.v[sp];
    v.resize(static_cast<std::size_t>(N + 1 + extra));
    const double ref = N >= g.nx ? p.v[sp][N - g.nx] : 0.0;
    const double ratio = ref > 0.0 ? std::clamp(p.v[sp][N] / ref, 0.0, 1.0) : 0.0;
    for (int i = N + 1; i <= N + extra; ++i) v[i] = i - g.nx >= 0 ? v[i - g.nx] * ratio : 0.0;
  }
  for (int j = 0; j < g.nt; ++j) stepper.step(s);

  Profile out = p;
  const int last = N + extra;
  const double nodes_shift = shift / p.dx;
  for (int sp = 0; sp < 2; ++sp) {
    const std::vector<double>& q = s.v[sp];
    std::vector<double>& r = out.v[sp];
    for (int i = 0; i <= N; ++i) {
      const double pos = i + nodes_shift;
      double val;
      if (pos >= last) val = q[last];
      else if (pos <= 0.0) val = q[0];
      else {
        const int i0 = static_cast<int>(std::floor(pos));
        const double f = pos - i0;
        val = (1.0 - f) * q[i0] + f * q[i0 + 1];
      }
      r[i] = std::clamp(val, 0.0, bound[sp]);
    }
    isotonic_nonincreasing_strided(r, stride, offset);
    const double scale = 1.0 / n_index;
    for (int i = 0; i <= N; ++i) r[i] = std::max(r[i], scale * floor.v[sp][i]);
  }
  return out;
}

} // namespace

Profile WeinbergerRecursion::apply(const Profile& p, double c, int n_index) const {
  SystemStepper stepper(sys_, Form::cooperative, &u2_star_);
  return apply_with(p, c, n_index, sys_, stepper, floor_, bound_, phase_stride_, phase_offset_);
}

LimitClass WeinbergerRecursion::classify(const Profile& p, std::array<double, 2>* reading) const {
  const int i = read_node();
  const long col = CoefficientField::wrap(column_of(-options_.A, p.dx) + i, sys_.grid().nx);
  double dist = 0.0, size = 0.0;
  for (int s = 0; s < 2; ++s) {
    const double v = p.v[s][static_cast<std::size_t>(i)];
    if (reading != nullptr) (*reading)[s] = v;
    dist = std::max(dist, std::abs(v - beta_[s][static_cast<std::size_t>(col)]));
    size = std::max(size, std::abs(v));
  }
  if (dist <= options_.beta_tol * beta_scale_) return LimitClass::beta;
  if (size < options_.zero_tol * beta_scale_) return LimitClass::zero;
  return LimitClass::intermediate;
}

RecursionResult WeinbergerRecursion::limit(double c, int n_index) const {
  if (n_index < 1) throw ValidationError("recursion index n must be at least 1");
  SystemStepper stepper(sys_, Form::cooperative, &u2_star_);
  RecursionResult r;
  r.profile = floor_;
  for (auto& comp : r.profile.v) {
    for (double& v : comp) v /= n_index;
  }
  for (;;) {
    if (r.iterations >= options_.cap) {
      r.cap_reached = true;
      break;
    }
    Profile next = apply_with(r.profile, c, n_index, sys_, stepper, floor_, bound_, phase_stride_, phase_offset_);
    double change = 0.0;
    for (int s = 0; s < 2; ++s) {
      for (std::size_t i = 0; i < next.v[s].size(); ++i) {
        const double prev = r.profile.v[s][i];
        r.monotonicity_defect = std::max(r.monotonicity_defect, prev - next.v[s][i]);
        next.v[s][i] = std::max(next.v[s][i], prev);
        change = std::max(change, next.v[s][i] - prev);
      }
    }
    r.profile = std::move(next);
    ++r.iterations;
    r.last_change = change;
    if (change < options_.change_tol) break;
    // Iterates are nondecreasing and bounded by beta, so class beta is final.
    if (options_.early_stop && classify(r.profile) == LimitClass::beta) {
      r.stopped_early = true;
      break;
    }
  }
  return r;
}

BracketResult WeinbergerRecursion::bracket(const std::function<void(const TraceEntry&)>& progress) const {
  std::map<double, TraceEntry> seen;
  auto eval = [&](double c) -> LimitClass {
    if (auto it = seen.find(c); it != seen.end()) return it->second.cls;
    const RecursionResult r = limit(c, 1);
    TraceEntry e;
    e.c = c;
    e.cls = classify(r.profile, &e.reading);
    e.left_plateau = r.profile.left_plateau();
    e.iterations = r.iterations;
    e.cap_reached = r.cap_reached;
    seen[c] = e;
    if (progress) progress(e);
    return e.cls;
  };

  const double lo0 = options_.c_lo, hi0 = options_.c_hi;
  const double resolution = std::max(options_.target_width, (hi0 - lo0) / std::ldexp(1.0, options_.bisection_steps));

  BracketResult out;
  out.A = options_.A;
  out.read_x = options_.A - 2.0 * sys_.grid().ell;
  {
    const int i = read_node();
    const long col = CoefficientField::wrap(column_of(-options_.A, floor_.dx) + i, sys_.grid().nx);
    out.beta_at_read = {beta_[0][static_cast<std::size_t>(col)], beta_[1][static_cast<std::size_t>(col)]};
  }

  auto bisect = [&](SpeedBracket& b, const std::function<bool(LimitClass)>& below) {
    double lo = b.lo, hi = b.hi;
    while (hi - lo > resolution * (1.0 + 1e-9)) {
      const double mid = 0.5 * (lo + hi);
      if (below(eval(mid))) lo = mid;
      else hi = mid;
    }
    b.lo = lo;
    b.hi = hi;
  };

  // c*: threshold of class beta.
  auto is_beta = [](LimitClass c) { return c == LimitClass::beta; };
  out.c_star = {lo0, hi0, false, false};
  if (!is_beta(eval(lo0))) {
    out.c_star = {lo0, lo0, true, false};
  } else if (is_beta(eval(hi0))) {
    out.c_star = {hi0, hi0, false, true};
  } else {
    bisect(out.c_star, is_beta);
  }

  // c bar: threshold of class zero, starting from what is already known.
  auto positive = [](LimitClass c) { return c != LimitClass::zero; };
  double pos_max = -std::numeric_limits<double>::infinity();
  for (const auto& [c, e] : seen) {
    if (positive(e.cls)) pos_max = std::max(pos_max, c);
  }
  double zero_min = std::numeric_limits<double>::infinity();
  for (const auto& [c, e] : seen) {
    if (!positive(e.cls) && c > pos_max) zero_min = std::min(zero_min, c);
  }
  if (!std::isfinite(pos_max)) {
    out.c_bar = {lo0, lo0, true, false};
  } else if (!std::isfinite(zero_min)) {
    if (pos_max < hi0 && positive(eval(hi0))) out.c_bar = {hi0, hi0, false, true};
    else if (pos_max >= hi0) out.c_bar = {hi0, hi0, false, true};
    else {
      out.c_bar = {pos_max, hi0, false, false};
      bisect(out.c_bar, positive);
    }
  } else {
    out.c_bar = {pos_max, zero_min, false, false};
    bisect(out.c_bar, positive);
  }

  for (const auto& [c, e] : seen) out.trace.push_back(e);
  auto rank = [](LimitClass c) { return c == LimitClass::beta ? 2 : c == LimitClass::intermediate ? 1 : 0; };
  for (std::size_t i = 1; i < out.trace.size(); ++i) {
    if (rank(out.trace[i].cls) > rank(out.trace[i - 1].cls)) {
      std::ostringstream os;
      os << "classification is not monotone in c:";
      for (const TraceEntry& e : out.trace) os << " c=" << e.c << ":" << to_string(e.cls);
      throw InconsistentClassification(os.str());
    }
  }
  return out;
}

Profile apply_R(const Profile& p, double c, int n_index, const WeinbergerRecursion& recursion) {
  return recursion.apply(p, c, n_index);
}

RecursionResult recursion_limit(double c, int n_index, const WeinbergerRecursion& recursion) {
  return recursion.limit(c, n_index);
}

BracketResult bracket_speeds(const SystemSpec& sys, const SemiTrivialOrbits& orbits, const WeinbergerOptions& options) {
  return WeinbergerRecursion(sys, orbits, options).bracket();
}

} // namespace speedlab
