#include "speedlab/errors.hpp"
#include "speedlab/orbits.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace speedlab;
using testsupport::field;

namespace {

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Periodic solution of u' = u (1 + 0.5 sin(2 pi t) - u) by RK4 marching.
double logistic_ode(double t_query) {
  auto f = [](double t, double u) { return u * (1.0 + 0.5 * std::sin(2 * M_PI * t) - u); };
  const int n = 20000;
  const double h = 1.0 / n;
  double u = 1.0;
  for (int p = 0; p < 40; ++p) {
    for (int i = 0; i < n; ++i) {
      const double t = i * h;
      const double k1 = f(t, u), k2 = f(t + h / 2, u + h / 2 * k1), k3 = f(t + h / 2, u + h / 2 * k2),
                   k4 = f(t + h, u + h * k3);
      u += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
  }
  const int stop = static_cast<int>(std::lround(t_query * n));
  for (int i = 0; i < stop; ++i) {
    const double t = i * h;
    const double k1 = f(t, u), k2 = f(t + h / 2, u + h / 2 * k1), k3 = f(t + h / 2, u + h / 2 * k2),
                 k4 = f(t + h, u + h * k3);
    u += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return u;
}

} // namespace

TEST_CASE("constant logistic data give the constant orbit") {
  for (const char* g : {"0", "0.7"}) {
    const PeriodicOrbit o = logistic_orbit(field("0.5"), field(g), field("1"), field("1"));
    CHECK_FALSE(o.extinct);
    CHECK(o.snapshots.min() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(o.snapshots.max() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(o.residual <= 1e-10);
    CHECK(o.lambda == doctest::Approx(1.0));
  }
}

TEST_CASE("time-periodic growth: mean identity and ODE oracle") {
  const PeriodicOrbit o = logistic_orbit(field("1", 200, 8), field("0", 200, 8), field("1 + 0.5*sin(2*pi*t)", 200, 8),
                                         field("1", 200, 8));
  REQUIRE_FALSE(o.extinct);
  // Mean over the samples t_1 .. t_nt equals mean(c) in the discrete scheme.
  CHECK(mean(o.snapshots.values()) == doctest::Approx(1.0).epsilon(1e-7));
  for (int j : {0, 50, 100, 150}) {
    const double oracle = logistic_ode(j / 200.0);
    CAPTURE(j);
    CHECK(o.snapshots(j, 3) == doctest::Approx(oracle).epsilon(5e-3));
  }
  CHECK(logistic_ode(0.0) == doctest::Approx(logistic_ode(1.0)).epsilon(1e-10));
}

TEST_CASE("negative growth is extinct") {
  const PeriodicOrbit o = logistic_orbit(field("1"), field("0"), field("-1"), field("1"));
  CHECK(o.extinct);
  CHECK(o.snapshots.max_abs() == 0.0);
  CHECK(o.lambda == doctest::Approx(-1.0));
  CHECK_THROWS_AS(orbit_residual(o.snapshots, field("1"), field("0"), field("-1"), field("1")), ValidationError);
}

TEST_CASE("a perturbed orbit has a visible residual") {
  const auto d = field("1"), g = field("0"), c = field("1 + 0.5*cos(2*pi*x)"), e = field("1");
  const PeriodicOrbit o = logistic_orbit(d, g, c, e);
  CHECK(o.residual <= 1e-6);
  CHECK(orbit_residual(o.snapshots + 0.01, d, g, c, e) >= 0.005);
  const PeriodicOrbit k = logistic_orbit(d, g, field("1"), e);
  CHECK(orbit_residual(k.snapshots + 0.01, d, g, field("1"), e) >= 0.005);
}

TEST_CASE("orbit invariants: positivity and closure") {
  const auto d = field("0.3 + 0.2*sin(2*pi*x)"), g = field("0.2*cos(2*pi*t)"),
             c = field("1 + cos(2*pi*x) + 0.5*sin(2*pi*t)"), e = field("1 + 0.5*sin(2*pi*x)");
  OrbitOptions opts;
  const PeriodicOrbit o = logistic_orbit(d, g, c, e, opts);
  CHECK(o.snapshots.min() > 0.0);
  CHECK(o.closure_gap <= opts.tolerance);
}

TEST_CASE("orbits from below and above coincide") {
  const auto d = field("1"), g = field("0"), c = field("2 + cos(2*pi*x) + sin(2*pi*t)"), e = field("1 + 0.3*cos(2*pi*t)");
  OrbitOptions lo, hi;
  lo.initial_scale = 0.1;
  hi.initial_scale = 10.0;
  const PeriodicOrbit a = logistic_orbit(d, g, c, e, lo), b = logistic_orbit(d, g, c, e, hi);
  double gap = 0.0;
  for (std::size_t i = 0; i < a.snapshots.values().size(); ++i) {
    gap = std::max(gap, std::abs(a.snapshots.values()[i] - b.snapshots.values()[i]));
  }
  CHECK(gap <= 2.0 * lo.tolerance);
}

TEST_CASE("even media give an even orbit") {
  const auto d = field("1 + 0.5*cos(2*pi*x)"), g = field("0.4*sin(2*pi*x)"), c = field("1 + cos(2*pi*x)"),
             e = field("1");
  const PeriodicOrbit o = logistic_orbit(d, g, c, e);
  const CoefficientField r = reflect_x(o.snapshots);
  for (std::size_t i = 0; i < r.values().size(); ++i) {
    CHECK(std::abs(r.values()[i] - o.snapshots.values()[i]) <= 1e-8);
  }
}

TEST_CASE("orbit preconditions") {
  CHECK_THROWS_AS(logistic_orbit(field("1"), field("0"), field("1"), field("-1")), ValidationError);
  CHECK_THROWS_AS(logistic_orbit(field("1"), field("0"), field("1"), field("0")), ValidationError);
  OrbitOptions opts;
  opts.max_periods = 1;
  CHECK_THROWS_AS(logistic_orbit(field("1"), field("0"), field("1 + cos(2*pi*x)"), field("1"), opts), NoConvergence);
}
