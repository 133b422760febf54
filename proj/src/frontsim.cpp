#include "speedlab/frontsim.hpp"

#include "speedlab/errors.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>

namespace speedlab {

double front_position(const LineState& state, const CoefficientField& u1_star, double threshold) {
  const PeriodGrid& g = u1_star.grid();
  const long first = std::lround(state.x_lo / state.dx);
  const int n = state.nodes();
  auto ratio = [&](int i) { return state.v[0][static_cast<std::size_t>(i)] / u1_star(0, first + i); };
  int last = -1;
  for (int i = n - 1; i >= 0; --i) {
    if (ratio(i) >= threshold) {
      last = i;
      break;
    }
  }
  if (last < 0) throw NoCrossing("species 1 never reaches the front threshold");
  if (last == n - 1) throw NoCrossing("species 1 exceeds the front threshold up to the right end");
  (void)g;
  const double r0 = ratio(last), r1 = ratio(last + 1);
  return state.x(last) + (r0 - threshold) / (r0 - r1) * state.dx;
}

FrontTrace run_front(const SystemSpec& sys, const SemiTrivialOrbits& orbits, const FrontOptions& options) {
  const PeriodGrid& g = sys.grid();
  FrontTrace trace;
  if (options.periods < 1) throw ValidationError("front run needs at least one period");

  double A = options.A;
  if (A == 0.0) {
    double c_est;
    if (options.c_estimate) {
      c_est = 1.5 * *options.c_estimate;
    } else {
      c_est = 2.0 * 2.0 * std::sqrt(std::max(sys.d(0).max(), sys.d(1).max()) * std::max(sys.b(0).max(), sys.b(1).max()));
    }
    A = std::ceil((c_est * options.periods * g.omega + 10.0 * g.ell) / g.ell) * g.ell;
  } else if (options.c_estimate && A < *options.c_estimate * options.periods * g.omega + 10.0 * g.ell) {
    throw ValidationError("domain half-width A is below c_estimate * T * omega + 10 ell");
  }
  trace.A = A;

  const double dx = g.dx();
  const double half = A / dx;
  if (std::abs(half - std::round(half)) > 1e-6) throw ValidationError("A must be a multiple of ell / nx");
  const int N = 2 * static_cast<int>(std::lround(half));
  const long first = -std::lround(half);

  LineState s;
  s.x_lo = -A;
  s.dx = dx;
  s.boundary = Boundary::neumann;
  s.t = 0.0;
  s.v[0].resize(static_cast<std::size_t>(N) + 1);
  s.v[1].assign(static_cast<std::size_t>(N) + 1, 0.0);
  for (int i = 0; i <= N; ++i) s.v[0][i] = s.x(i) <= 0.0 ? orbits.u1.snapshots(0, first + i) : 0.0;
  trace.final_state = s;
  if (orbits.u1.extinct) {
    trace.no_front = true;
    return trace;
  }

  SystemStepper stepper(sys, Form::cooperative, &orbits.u2.snapshots);
  const double limit = A - 5.0 * g.ell;
  auto record = [&](double t) {
    const double xf = front_position(s, orbits.u1.snapshots, options.threshold);
    trace.times.push_back(t);
    trace.positions.push_back(xf);
    if (xf > limit) trace.domain_too_small = true;
  };
  record(0.0);
  for (int p = 1; p <= options.periods && !trace.domain_too_small; ++p) {
    for (int j = 0; j < g.nt; ++j) stepper.step(s);
    record(p * g.omega);
    if (options.snapshot_every > 0 && p % options.snapshot_every == 0) trace.snapshots.push_back(s);
  }
  trace.final_state = s;
  return trace;
}

SpeedFit fit_speed(const FrontTrace& trace, double discard_fraction) {
  const std::size_t n = trace.times.size();
  const std::size_t skip = static_cast<std::size_t>(std::floor(discard_fraction * n));
  const std::size_t m = n - std::min(skip, n);
  if (m < 10) throw TooFewPoints("speed fit needs at least 10 points after the transient, got " + std::to_string(m));

  double tm = 0.0, xm = 0.0;
  for (std::size_t i = skip; i < n; ++i) {
    tm += trace.times[i];
    xm += trace.positions[i];
  }
  tm /= m;
  xm /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = skip; i < n; ++i) {
    const double dt = trace.times[i] - tm, dy = trace.positions[i] - xm;
    sxx += dt * dt;
    sxy += dt * dy;
    syy += dy * dy;
  }
  SpeedFit f;
  f.points = static_cast<int>(m);
  f.speed = sxy / sxx;
  f.intercept = xm - f.speed * tm;
  const double ss_res = std::max(0.0, syy - f.speed * sxy);
  f.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  const boost::math::students_t dist(static_cast<double>(m - 2));
  const double tq = boost::math::quantile(boost::math::complement(dist, 0.025));
  f.ci_halfwidth = tq * std::sqrt(ss_res / (m - 2) / sxx);
  return f;
}

SpreadingVerdict spreading_verdict(const SystemSpec& sys, const FrontTrace& trace,
                                   const std::array<std::vector<double>, 2>& beta, double c0,
                                   double discard_fraction) {
  const PeriodGrid& g = sys.grid();
  SpreadingVerdict v;
  v.c0 = c0;
  if (trace.no_front || trace.times.empty()) {
    v.note = "no front to measure";
    return v;
  }
  v.fit = fit_speed(trace, discard_fraction);
  v.relative_gap = std::abs(v.fit.speed - c0) / c0;
  v.front = trace.positions.back();

  double scale = 0.0;
  for (int s = 0; s < 2; ++s) {
    for (double b : beta[s]) scale = std::max(scale, b);
  }
  const LineState& st = trace.final_state;
  const long first = std::lround(st.x_lo / st.dx);
  const double ell = g.ell;
  for (int i = 0; i < st.nodes(); ++i) {
    const double x = st.x(i);
    const std::size_t col = static_cast<std::size_t>(CoefficientField::wrap(first + i, g.nx));
    for (int s = 0; s < 2; ++s) {
      const double val = st.v[s][static_cast<std::size_t>(i)];
      if (x >= v.front + 2.0 * ell) v.tail_ahead = std::max(v.tail_ahead, std::abs(val) / scale);
      if (x >= st.x_lo + 5.0 * ell && x <= v.front - 2.0 * ell) {
        v.tail_behind = std::max(v.tail_behind, std::abs(val - beta[s][col]) / scale);
      }
    }
  }
  v.speed_ok = v.relative_gap <= 0.05 + v.fit.ci_halfwidth / c0;
  v.ahead_ok = v.tail_ahead < 0.01;
  v.behind_ok = v.tail_behind <= 0.05;
  v.pass = v.speed_ok && v.ahead_ok && v.behind_ok && !trace.domain_too_small;
  if (trace.domain_too_small) v.note = "front reached the last 5 ell of the domain";
  return v;
}

} // namespace speedlab
