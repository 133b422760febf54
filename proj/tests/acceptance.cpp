// Acceptance run: one PASS/FAIL line per criterion at the stated tolerances.
#include "speedlab/eigen.hpp"
#include "speedlab/frontsim.hpp"
#include "speedlab/orbits.hpp"
#include "speedlab/pde.hpp"
#include "speedlab/scenario.hpp"
#include "speedlab/speeds.hpp"
#include "speedlab/weinberger.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

using namespace speedlab;

namespace {

constexpr double kCosineOracle = 0.012661594802075543;
const double kC0 = 2.0 * std::sqrt(1.7);

int failures = 0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

void criterion(int id, const std::string& title, const std::function<Outcome()>& body, double limit_s) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s criterion %d: %s | %s | %.1f s (limit %.0f s)\n", pass ? "PASS" : "FAIL", id, title.c_str(),
              o.detail.c_str(), secs, limit_s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

CoefficientField field(const std::string& e, int nt, int nx, double omega = 1.0, double ell = 1.0) {
  return build_field(e, omega, ell, nt, nx);
}

// Constant competition instance: b1 = 2, b2 = 1, a11 = a22 = 1, a12 = 0.3,
// a21 = 1.2, d1 = 1, d2 = 0.5, g = 0, on omega = 0.5, ell = 4.
ModelSpec vl_constant() {
  ModelSpec m;
  m.omega = 0.5;
  m.ell = 4.0;
  m.d = {"1", "0.5"};
  m.b = {"2", "1"};
  m.a = {{{"1", "0.3"}, {"1.2", "1"}}};
  return m;
}

ModelSpec fisher_decoupled() {
  ModelSpec m;
  m.omega = 0.5;
  m.ell = 4.0;
  m.d = {"1", "1"};
  m.b = {"1", "1"};
  m.a = {{{"1", "0"}, {"0", "1"}}};
  return m;
}

// Principal eigenvalue of u'' + cos(2 pi x) u on the unit circle from the
// Fourier (Hill) matrix: diagonal -(2 pi k)^2, off-diagonals 1/2.
double hill_oracle(int K) {
  const int n = 2 * K + 1;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double k = i - K;
    H(i, i) = -4.0 * M_PI * M_PI * k * k;
    if (i + 1 < n) H(i, i + 1) = H(i + 1, i) = 0.5;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

} // namespace

int main() {
  criterion(1, "scalar KPP speed d=1 g=0 b=1 at (200,64) with Richardson", [] {
    SpeedOptions o;
    o.refine = true;
    const ScalarSpeeds s = scalar_kpp_speeds(field("1", 200, 64), field("0", 200, 64), field("1", 200, 64), o);
    const double err = std::abs(s.right - 2.0) / 2.0;
    return Outcome{err <= 1e-3, fmt("c_right = %.8f", s.right) + fmt(", rel err %.2e", err)};
  }, 10.0);

  criterion(2, "x-independent c0 with time-periodic b2 equals 2 sqrt(1.7)", [] {
    ModelSpec m = vl_constant();
    m.b[1] = "1 + 0.5*sin(2*pi*t/0.5)";
    const SystemSpec sys = SystemSpec::build(m, 200, 64);
    const PeriodicOrbit u2 = logistic_orbit(sys.d(1), sys.g(1), sys.b(1), sys.a(1, 1));
    const LinearSpeed c = linear_speed_c0(sys, u2.snapshots);
    const double err = std::abs(c.c0 - kC0) / kC0;
    return Outcome{err <= 1e-3, fmt("c0 = %.8f", c.c0) + fmt(" vs %.6f", kC0) + fmt(", rel err %.2e", err)};
  }, 30.0);

  criterion(3, "lambda(d2, g2, b2 - a22 u2*) vanishes on the demo instances", [] {
    bool ok = true;
    std::string detail;
    for (const std::string& name : demo_names()) {
      const ScenarioConfig cfg = parse_config(demo_config(name));
      const SystemSpec sys = SystemSpec::build(cfg.model, cfg.nt, cfg.nx);
      const PeriodicOrbit u2 = logistic_orbit(sys.d(1), sys.g(1), sys.b(1), sys.a(1, 1));
      const double lam = principal_eigen(sys.d(1), sys.g(1), sys.b(1) - sys.a(1, 1) * u2.snapshots).lambda;
      ok = ok && std::abs(lam) <= 1e-6;
      detail += name + fmt(": %.2e  ", lam);
    }
    return Outcome{ok, detail};
  }, 600.0);

  criterion(4, "lambda(mu) shift, convexity and evenness on a 9-point grid", [] {
    const int nt = 200, nx = 64;
    const auto d = field("1 + 0.3*cos(2*pi*x)", nt, nx), g = field("0.4*sin(2*pi*x)", nt, nx);
    const auto m = field("cos(2*pi*x) + 0.5*sin(2*pi*t)", nt, nx);
    std::vector<double> grid;
    for (int i = 0; i < 9; ++i) grid.push_back(-2.0 + 0.5 * i);
    const LambdaDiagnostics base = lambda_diagnostics(d, g, m, grid);
    double shift_err = 0.0;
    for (double shift : {0.7, -1.3}) {
      const LambdaDiagnostics moved = lambda_diagnostics(d, g, m + shift, grid);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        shift_err = std::max(shift_err, std::abs(moved.lambda[i] - base.lambda[i] - shift));
      }
    }
    double even_err = 0.0;
    for (double mu : {0.3, 1.0}) {
      even_err = std::max(even_err, std::abs(lambda_of_mu(d, g, m, mu).lambda - lambda_of_mu(d, g, m, -mu).lambda));
    }
    const bool ok = shift_err <= 1e-10 && base.min_second_difference >= -1e-8 && even_err <= 1e-8;
    return Outcome{ok, fmt("(a) shift err %.2e", shift_err) + fmt(", (b) min 2nd diff %.3e", base.min_second_difference) +
                           fmt(", (c) evenness defect %.2e", even_err)};
  }, 600.0);

  // Criteria 5 and 9 share one run.
  struct FrontRun {
    bool ok = false;
    SpreadingVerdict verdict;
    double tail_ahead = 0.0, tail_behind = 0.0;
  } front;
  criterion(5, "constant instance: P1 P2 D1 D2 and front speed within 5% of c0 (A=120, T=40)", [&front] {
    const SystemSpec sys = SystemSpec::build(vl_constant(), 200, 64);
    const SemiTrivialOrbits orbits = semi_trivial_orbits(sys);
    const HypothesisReport h = check_hypotheses(sys, orbits);
    const LinearSpeed c = linear_speed_c0(sys, orbits.u2.snapshots);
    const DeterminacyReport dr = check_linear_determinacy(sys, orbits.u2.snapshots, c.mu0);
    FrontOptions fo;
    fo.A = 120.0;
    fo.periods = 40;
    fo.c_estimate = c.c0;
    const FrontTrace trace = run_front(sys, orbits, fo);
    // Target behind the front is (u1*, u2*) at t = 0 in cooperative coordinates.
    std::array<std::vector<double>, 2> target;
    for (int s = 0; s < 2; ++s) {
      const CoefficientField& u = s == 0 ? orbits.u1.snapshots : orbits.u2.snapshots;
      for (int k = 0; k < sys.grid().nx; ++k) target[s].push_back(u(0, k));
    }
    front.verdict = spreading_verdict(sys, trace, target, c.c0);
    front.ok = !trace.domain_too_small;
    const bool certs = h.p1.verdict == Verdict::pass && h.p2.verdict == Verdict::pass &&
                       dr.d1.verdict == Verdict::pass && dr.d2.verdict == Verdict::pass;
    const bool speed = front.verdict.relative_gap <= 0.05 && front.ok;
    return Outcome{certs && speed,
                   std::string("P1 ") + to_string(h.p1.verdict) + ", P2 " + to_string(h.p2.verdict) + ", D1 " +
                       to_string(dr.d1.verdict) + ", D2 " + to_string(dr.d2.verdict) +
                       fmt(", fit %.5f", front.verdict.fit.speed) +
                       fmt(" (ci %.4f)", front.verdict.fit.ci_halfwidth) + fmt(" vs c0 %.5f", c.c0) +
                       fmt(", gap %.2f%%", 100.0 * front.verdict.relative_gap)};
  }, 300.0);

  criterion(6, "recursion brackets: width <= 0.15, contain c0 and 2 (decoupled Fisher)", [] {
    WeinbergerOptions o;
    o.A = 40.0;
    o.cap = 3000;
    o.c_lo = 0.0;
    o.c_hi = 4.8;
    o.bisection_steps = 6;
    bool ok = true;
    std::string detail;
    struct Case {
      const char* name;
      ModelSpec model;
      double target;
    };
    for (const Case& k : {Case{"constant", vl_constant(), kC0}, Case{"fisher", fisher_decoupled(), 2.0}}) {
      const SystemSpec sys = SystemSpec::build(k.model, 50, 32);
      const SemiTrivialOrbits orbits = semi_trivial_orbits(sys);
      const BracketResult b = bracket_speeds(sys, orbits, o);
      const bool good = b.c_star.width() <= 0.15 && b.c_bar.width() <= 0.15 && b.c_star.contains(k.target) &&
                        b.c_bar.contains(k.target) && !b.c_star.upper_open && !b.c_bar.upper_open;
      ok = ok && good;
      char buf[200];
      std::snprintf(buf, sizeof buf, "%s: c* [%.4f, %.4f], c_bar [%.4f, %.4f] vs %.4f; ", k.name, b.c_star.lo,
                    b.c_star.hi, b.c_bar.lo, b.c_bar.hi, k.target);
      detail += buf;
    }
    return Outcome{ok, detail};
  }, 600.0);

  criterion(7, "20 random ordered cooperative pairs stay ordered over one period", [] {
    ModelSpec m = vl_constant();
    m.b[0] = "2 + 0.5*cos(2*pi*x/4)";
    m.b[1] = "1 + 0.5*sin(2*pi*t/0.5)";
    m.d[1] = "0.5 + 0.2*sin(2*pi*x/4)";
    m.g[0] = "0.3*cos(2*pi*x/4)";
    const SystemSpec sys = SystemSpec::build(m, 200, 64);
    const SemiTrivialOrbits orbits = semi_trivial_orbits(sys);
    const CoefficientField& u2 = orbits.u2.snapshots;
    const double top1 = orbits.u1.snapshots.max();
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = -std::numeric_limits<double>::infinity();
    for (int pair = 0; pair < 20; ++pair) {
      LineState lo;
      lo.x_lo = -20.0;
      lo.dx = sys.grid().dx();
      lo.boundary = Boundary::neumann;
      const int n = 10 * 64 + 1;
      lo.v[0].resize(n);
      lo.v[1].resize(n);
      LineState hi = lo;
      const long first = std::lround(lo.x_lo / lo.dx);
      for (int i = 0; i < n; ++i) {
        const double cap = u2(0, first + i);
        lo.v[0][i] = top1 * u(rng);
        hi.v[0][i] = lo.v[0][i] + (top1 - lo.v[0][i]) * u(rng);
        lo.v[1][i] = cap * u(rng);
        hi.v[1][i] = lo.v[1][i] + (cap - lo.v[1][i]) * u(rng);
      }
      const LineState a = evolve_system(lo, sys, Form::cooperative, 0.0, sys.grid().omega, &u2);
      const LineState b = evolve_system(hi, sys, Form::cooperative, 0.0, sys.grid().omega, &u2);
      for (int s = 0; s < 2; ++s) {
        for (int i = 0; i < n; ++i) worst = std::max(worst, a.v[s][i] - b.v[s][i]);
      }
    }
    const double rate = std::max(worst, 0.0) / sys.grid().omega;
    return Outcome{rate <= 1e-9, fmt("max(lo - hi) = %.3e", worst) + fmt(", violation per unit time %.2e", rate)};
  }, 600.0);

  criterion(8, "lambda(1, 0, cos 2 pi x) > 0 and >= Hill-matrix oracle - 1e-6", [] {
    const double oracle = hill_oracle(16);
    const double lam = principal_eigen(field("1", 200, 64), field("0", 200, 64), field("cos(2*pi*x)", 200, 64)).lambda;
    const bool ok = lam > 0.0 && lam >= kCosineOracle - 1e-6 && std::abs(oracle - kCosineOracle) <= 1e-10;
    return Outcome{ok, fmt("lambda = %.9f", lam) + fmt(", oracle %.15f", oracle) +
                           fmt(" (frozen %.15f)", kCosineOracle) + fmt(", excess %.2e", lam - oracle)};
  }, 600.0);

  criterion(9, "front run tails: ahead < 1% of beta, behind within 5% of (u1*, u2*)", [&front] {
    const SpreadingVerdict& v = front.verdict;
    const bool ok = front.ok && v.tail_ahead < 0.01 && v.tail_behind <= 0.05;
    return Outcome{ok, fmt("tail ahead %.3e", v.tail_ahead) + fmt(", tail behind %.3e", v.tail_behind) +
                           fmt(", final front x = %.2f", v.front)};
  }, 600.0);

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "SOME FAIL", failures);
  return failures == 0 ? 0 : 1;
}
