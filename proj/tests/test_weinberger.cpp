#include "speedlab/errors.hpp"
#include "speedlab/isotonic.hpp"
#include "speedlab/pde.hpp"
#include "speedlab/speeds.hpp"
#include "speedlab/weinberger.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace speedlab;

namespace {

bool nonincreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1]) return false;
  }
  return true;
}

struct Fixture {
  SystemSpec sys;
  SemiTrivialOrbits orbits;
  explicit Fixture(const ModelSpec& m, int nt = 20, int nx = 16)
      : sys(SystemSpec::build(m, nt, nx)), orbits(semi_trivial_orbits(sys)) {}
};

WeinbergerOptions small_options(double A = 20.0) {
  WeinbergerOptions o;
  o.A = A;
  o.cap = 1500;
  o.c_lo = 0.0;
  o.c_hi = 4.0;
  o.bisection_steps = 4;
  return o;
}

} // namespace

TEST_CASE("pool adjacent violators examples") {
  std::vector<double> a{1.0, 3.0, 2.0};
  isotonic_nonincreasing(a);
  CHECK(a == std::vector<double>{2.0, 2.0, 2.0});
  std::vector<double> b{3.0, 1.0, 2.0};
  isotonic_nonincreasing(b);
  CHECK(b == std::vector<double>{3.0, 1.5, 1.5});
  std::vector<double> c{5.0, 4.0, 4.0, 0.0};
  isotonic_nonincreasing(c);
  CHECK(c == std::vector<double>{5.0, 4.0, 4.0, 0.0});
}

TEST_CASE("pool adjacent violators properties") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(40), y(40);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = u(rng) - 0.01 * i;
      y[i] = x[i] + u(rng);
    }
    double sx = 0.0;
    for (double v : x) sx += v;
    std::vector<double> px = x, py = y;
    isotonic_nonincreasing(px);
    isotonic_nonincreasing(py);
    CHECK(nonincreasing(px));
    double spx = 0.0;
    for (double v : px) spx += v;
    CHECK(spx == doctest::Approx(sx).epsilon(1e-12));
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(px[i] <= py[i] + 1e-12);
    std::vector<double> twice = px;
    isotonic_nonincreasing(twice);
    CHECK(twice == px);
  }
}

TEST_CASE("strided projection acts on each phase separately") {
  std::vector<double> v{1, 10, 2, 20, 3, 30};
  isotonic_nonincreasing_strided(v, 2);
  CHECK(v == std::vector<double>{2, 20, 2, 20, 2, 20});
  std::vector<double> w{1, 10, 2, 20, 3, 30};
  isotonic_nonincreasing_strided(w, 2, 1);  // node 0 has phase 1
  CHECK(w == std::vector<double>{2, 20, 2, 20, 2, 20});
}

TEST_CASE("initial profile construction") {
  const Profile p = init_profile({2.0, 1.0}, 20.0, 400);
  CHECK(p.nodes() == 401);
  CHECK(p.v[0].front() == 1.0);
  CHECK(p.v[1].front() == 0.5);
  CHECK(p.v[0][200] == 0.0);
  CHECK(p.v[1][200] == 0.0);
  for (int s = 0; s < 2; ++s) {
    CHECK(nonincreasing(p.v[s]));
    for (int i = 200; i <= 400; ++i) CHECK(p.v[s][i] == 0.0);
  }
  CHECK_THROWS_AS(init_profile({2.0, 1.0}, 20.0, 100), ValidationError);
  CHECK_THROWS_AS(init_profile({2.0, 1.0}, 0.0, 400), ValidationError);
}

TEST_CASE("one application of R") {
  Fixture f(testsupport::vl_constant(0.5, 1.0));
  const WeinbergerRecursion rec(f.sys, f.orbits, small_options());

  Profile zero = rec.floor_profile();
  for (auto& comp : zero.v) std::fill(comp.begin(), comp.end(), 0.0);
  const Profile out = apply_R(zero, 1.0, 1, rec);
  // 0 is fixed by the period map up to rounding in u2* - u2.
  for (int s = 0; s < 2; ++s) {
    for (std::size_t i = 0; i < out.v[s].size(); ++i) {
      CHECK(std::abs(out.v[s][i] - rec.floor_profile().v[s][i]) <= 1e-12);
    }
  }

  CHECK_THROWS_AS(apply_R(zero, 11.0, 1, rec), ShiftOutOfRange);
  CHECK_THROWS_AS(apply_R(zero, -11.0, 1, rec), ShiftOutOfRange);

  Profile top = rec.floor_profile();
  for (int s = 0; s < 2; ++s) std::fill(top.v[s].begin(), top.v[s].end(), rec.beta_bound()[s]);
  const Profile image = apply_R(top, 0.0, 1, rec);
  for (int s = 0; s < 2; ++s) {
    for (double v : image.v[s]) CHECK(v <= rec.beta_bound()[s]);
    CHECK(nonincreasing(image.v[s]));
  }
}

TEST_CASE("the beta estimate is invariant under the period map") {
  ModelSpec m = testsupport::vl_constant(0.5, 1.0);
  m.b[0] = "2 + 0.5*cos(2*pi*x)";
  Fixture f(m);
  const WeinbergerRecursion rec(f.sys, f.orbits, small_options());
  const auto& beta = rec.beta_estimate();
  LineState cell;
  cell.dx = f.sys.grid().dx();
  cell.boundary = Boundary::periodic;
  cell.v = beta;
  cell = evolve_system(cell, f.sys, Form::cooperative, 0.0, f.sys.grid().omega, &f.orbits.u2.snapshots);
  for (int s = 0; s < 2; ++s) {
    for (std::size_t k = 0; k < beta[s].size(); ++k) CHECK(std::abs(cell.v[s][k] - beta[s][k]) <= 1e-9);
  }
  // Species 1 invades the u2* state, so beta sits at the coexistence level.
  CHECK(beta[0][0] > 0.0);
}

TEST_CASE("recursion limits on decoupled Fisher") {
  Fixture f(testsupport::fisher_decoupled(0.5, 1.0));
  const WeinbergerRecursion rec(f.sys, f.orbits, small_options());

  const RecursionResult still = recursion_limit(0.0, 1, rec);
  CHECK(rec.classify(still.profile) == LimitClass::beta);
  CHECK(still.profile.left_plateau()[0] == doctest::Approx(1.0).epsilon(0.05));
  CHECK(still.monotonicity_defect <= 1e-9);

  WeinbergerOptions fast = small_options();
  fast.early_stop = false;
  const WeinbergerRecursion rec_fast(f.sys, f.orbits, fast);
  const RecursionResult fastest = recursion_limit(10.0, 1, rec_fast);
  std::array<double, 2> reading{};
  CHECK(rec_fast.classify(fastest.profile, &reading) == LimitClass::zero);
  CHECK(reading[0] < 1e-6);
  CHECK(fastest.profile.left_plateau()[0] < 0.95);
  CHECK(fastest.monotonicity_defect <= 1e-9);
}

TEST_CASE("iterates grow monotonically") {
  Fixture f(testsupport::vl_constant(0.5, 1.0));
  const WeinbergerRecursion rec(f.sys, f.orbits, small_options());
  Profile a = rec.floor_profile();
  for (int m = 0; m < 15; ++m) {
    const Profile next = rec.apply(a, 2.0, 1);
    for (int s = 0; s < 2; ++s) {
      for (std::size_t i = 0; i < next.v[s].size(); ++i) CHECK(next.v[s][i] >= a.v[s][i] - 1e-9);
    }
    a = next;
  }
}

TEST_CASE("Fisher brackets and their consistency") {
  Fixture f(testsupport::fisher_decoupled(0.5, 1.0));
  const BracketResult b = bracket_speeds(f.sys, f.orbits, small_options());
  CHECK(b.c_star.lo <= b.c_star.hi);
  CHECK(b.c_bar.lo >= b.c_star.lo - 1e-12);
  CHECK_FALSE(b.c_star.lower_open);
  CHECK_FALSE(b.c_star.upper_open);
  CHECK(b.c_star.width() <= 0.25 + 1e-12);
  CHECK(b.c_star.contains(2.0));
  CHECK(b.c_bar.contains(2.0));
  for (std::size_t i = 1; i < b.trace.size(); ++i) CHECK(b.trace[i].c > b.trace[i - 1].c);
  // lower bound from the linear theory
  CHECK(b.c_star.hi + b.c_star.width() >= 2.0);
}

TEST_CASE("doubling A changes classes only through the intermediate band") {
  Fixture f(testsupport::fisher_decoupled(0.5, 1.0));
  const WeinbergerRecursion a(f.sys, f.orbits, small_options(20.0));
  const WeinbergerRecursion b(f.sys, f.orbits, small_options(40.0));
  for (double c : {1.0, 1.9, 2.1, 3.0}) {
    const LimitClass ca = a.classify(a.limit(c).profile), cb = b.classify(b.limit(c).profile);
    CAPTURE(c);
    const bool flip = (ca == LimitClass::beta && cb == LimitClass::zero) || (ca == LimitClass::zero && cb == LimitClass::beta);
    CHECK_FALSE(flip);
  }
}

TEST_CASE("recursion preconditions") {
  Fixture f(testsupport::fisher_decoupled(0.5, 1.0));
  WeinbergerOptions o = small_options();
  o.A = 5.0;
  CHECK_THROWS_AS(WeinbergerRecursion(f.sys, f.orbits, o), ValidationError);
  o = small_options();
  o.c_lo = 1.0;
  o.c_hi = 1.0;
  CHECK_THROWS_AS(WeinbergerRecursion(f.sys, f.orbits, o), ValidationError);
  const WeinbergerRecursion rec(f.sys, f.orbits, small_options());
  CHECK_THROWS_AS(rec.limit(1.0, 0), ValidationError);
}
