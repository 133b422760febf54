#include "speedlab/errors.hpp"
#include "speedlab/frontsim.hpp"
#include "speedlab/pde.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace speedlab;

namespace {

LineState step_state(double edge, double x_lo, int nodes, double dx) {
  LineState s;
  s.x_lo = x_lo;
  s.dx = dx;
  s.v[0].resize(static_cast<std::size_t>(nodes));
  s.v[1].assign(static_cast<std::size_t>(nodes), 0.0);
  for (int i = 0; i < nodes; ++i) s.v[0][i] = s.x(i) <= edge ? 1.0 : 0.0;
  return s;
}

FrontTrace synthetic(double (*x)(double), double dt, int n) {
  FrontTrace t;
  for (int k = 0; k < n; ++k) {
    t.times.push_back(k * dt);
    t.positions.push_back(x(k * dt));
  }
  return t;
}

} // namespace

TEST_CASE("front position of a synthetic step") {
  const PeriodGrid g{1.0, 1.0, 4, 16};
  const CoefficientField one = CoefficientField::constant(1.0, g);
  const LineState s = step_state(3.25, -5.0, 241, g.dx());
  CHECK(std::abs(front_position(s, one) - 3.25) <= g.dx());

  LineState zero = s;
  std::fill(zero.v[0].begin(), zero.v[0].end(), 0.0);
  CHECK_THROWS_AS(front_position(zero, one), NoCrossing);
  LineState full = s;
  std::fill(full.v[0].begin(), full.v[0].end(), 1.0);
  CHECK_THROWS_AS(front_position(full, one), NoCrossing);
}

TEST_CASE("front position normalizes by the periodic state") {
  const PeriodGrid g{1.0, 1.0, 4, 16};
  const CoefficientField u = build_field("1 + 0.5*cos(2*pi*x)", 1.0, 1.0, 4, 16);
  LineState s = step_state(2.0, -5.0, 241, g.dx());
  const long first = std::lround(s.x_lo / s.dx);
  for (int i = 0; i < s.nodes(); ++i) s.v[0][i] *= 0.9 * u(0, first + i);
  CHECK(std::abs(front_position(s, u) - 2.0) <= g.dx());
}

TEST_CASE("speed fits on synthetic traces") {
  const SpeedFit a = fit_speed(synthetic([](double t) { return 2.0 * t; }, 0.5, 40));
  CHECK(a.speed == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(a.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.ci_halfwidth <= 1e-10);

  const SpeedFit b = fit_speed(synthetic([](double t) { return 2.0 * t + 0.1 * std::sin(2 * M_PI * t); }, 0.37, 100));
  CHECK(std::abs(b.speed - 2.0) <= 0.02);
  CHECK(b.r2 > 0.999);
  CHECK(b.ci_halfwidth > 0.0);
  CHECK(b.points == 70);

  CHECK_THROWS_AS(fit_speed(synthetic([](double t) { return t; }, 1.0, 5)), TooFewPoints);
}

TEST_CASE("absent species 1 gives no front") {
  ModelSpec m = testsupport::fisher_decoupled(0.5, 1.0);
  m.b[0] = "-1";
  const SystemSpec sys = SystemSpec::build(m, 20, 16);
  const auto orbits = semi_trivial_orbits(sys);
  FrontOptions o;
  o.periods = 4;
  const FrontTrace t = run_front(sys, orbits, o);
  CHECK(t.no_front);
  CHECK(t.times.empty());
  const SpreadingVerdict v = spreading_verdict(sys, t, {std::vector<double>(16, 0.0), std::vector<double>(16, 1.0)}, 2.0);
  CHECK_FALSE(v.pass);
  CHECK_FALSE(v.note.empty());
}

TEST_CASE("front domain checks") {
  const SystemSpec sys = SystemSpec::build(testsupport::fisher_decoupled(0.5, 1.0), 20, 16);
  const auto orbits = semi_trivial_orbits(sys);
  FrontOptions o;
  o.periods = 20;
  o.c_estimate = 2.0;
  o.A = 25.0;  // below 2 * 20 * 0.5 + 10
  CHECK_THROWS_AS(run_front(sys, orbits, o), ValidationError);
  o.A = 30.03;
  CHECK_THROWS_AS(run_front(sys, orbits, o), ValidationError);

  FrontOptions tight;
  tight.A = 12.0;
  tight.periods = 40;
  const FrontTrace t = run_front(sys, orbits, tight);
  CHECK(t.domain_too_small);
  CHECK(t.times.size() < 41);
  const auto beta = cooperative_cell_attractor(sys, orbits.u2.snapshots, {0.5, 0.0});
  const SpreadingVerdict v = spreading_verdict(sys, t, beta, 2.0, 0.0);
  CHECK_FALSE(v.pass);
  CHECK_FALSE(v.note.empty());
}

TEST_CASE("Fisher front: speed, tails and level-set invariance") {
  const SystemSpec sys = SystemSpec::build(testsupport::fisher_decoupled(0.5, 4.0), 50, 16);
  const auto orbits = semi_trivial_orbits(sys);
  const auto beta = cooperative_cell_attractor(sys, orbits.u2.snapshots, {0.5, 0.0});
  FrontOptions o;
  o.periods = 60;
  o.c_estimate = 2.0;
  const FrontTrace t = run_front(sys, orbits, o);
  REQUIRE_FALSE(t.domain_too_small);
  for (std::size_t i = 1; i < t.times.size(); ++i) CHECK(t.times[i] > t.times[i - 1]);
  const SpreadingVerdict v = spreading_verdict(sys, t, beta, 2.0);
  CHECK(v.relative_gap < 0.05);
  CHECK(v.ahead_ok);
  CHECK(v.behind_ok);
  CHECK(v.pass);

  for (double level : {0.2, 0.8}) {
    FrontOptions q = o;
    q.threshold = level;
    const SpeedFit f = fit_speed(run_front(sys, orbits, q));
    CAPTURE(level);
    CHECK(std::abs(f.speed - v.fit.speed) <= v.fit.ci_halfwidth + f.ci_halfwidth + 0.3 * 4.0 / 0.5);
  }
}

TEST_CASE("normalized front in a periodic medium has small jitter") {
  ModelSpec m = testsupport::fisher_decoupled(0.5, 4.0);
  m.b[0] = "1 + 0.8*cos(2*pi*x/4)";
  const SystemSpec sys = SystemSpec::build(m, 50, 16);
  const auto orbits = semi_trivial_orbits(sys);
  FrontOptions o;
  o.periods = 40;
  o.snapshot_every = 1;
  const FrontTrace t = run_front(sys, orbits, o);

  // Raw level set: threshold on v1 / max u1* instead of v1 / u1*(0, x).
  const CoefficientField flat = CoefficientField::constant(orbits.u1.snapshots.max(), sys.grid());
  FrontTrace raw = t;
  for (std::size_t k = 0; k < t.snapshots.size(); ++k) raw.positions[k + 1] = front_position(t.snapshots[k], flat);

  auto jitter = [](const FrontTrace& tr) {
    const SpeedFit f = fit_speed(tr);
    double j = 0.0;
    for (std::size_t i = tr.times.size() * 3 / 10; i < tr.times.size(); ++i) {
      j = std::max(j, std::abs(tr.positions[i] - (f.intercept + f.speed * tr.times[i])));
    }
    return j;
  };
  const double normalized = jitter(t), unnormalized = jitter(raw);
  CAPTURE(normalized);
  CAPTURE(unnormalized);
  CHECK(normalized < 0.2 * sys.grid().ell);
  CHECK(normalized < unnormalized);
}

TEST_CASE("doubling A leaves the speed alone; doubling T only removes lag") {
  const SystemSpec sys = SystemSpec::build(testsupport::fisher_decoupled(0.5, 4.0), 50, 16);
  const auto orbits = semi_trivial_orbits(sys);
  FrontOptions o;
  o.periods = 40;
  o.c_estimate = 2.0;
  o.A = 100.0;
  const SpeedFit base = fit_speed(run_front(sys, orbits, o));
  FrontOptions wide = o;
  wide.A = 200.0;
  const SpeedFit a = fit_speed(run_front(sys, orbits, wide));
  CHECK(std::abs(a.speed - base.speed) < base.ci_halfwidth);

  // Pulled fronts trail c t by a logarithmic lag, so the fitted speed keeps
  // rising with T; each doubling must move it toward 2 and halve the gap.
  FrontOptions longer = o;
  longer.periods = 80;
  longer.A = 0.0;
  const SpeedFit b = fit_speed(run_front(sys, orbits, longer));
  CHECK(b.speed > base.speed);
  CHECK(b.speed < 2.0);
  CHECK(2.0 - b.speed < 0.6 * (2.0 - base.speed));
}
