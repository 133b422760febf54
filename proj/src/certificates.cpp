#include "speedlab/errors.hpp"
#include "speedlab/speeds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace speedlab {

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::pass: return "pass";
  case Verdict::pass_sufficient: return "pass (sufficient)";
  case Verdict::fail: return "fail";
  case Verdict::inconclusive: return "inconclusive";
  case Verdict::not_applicable: return "not-applicable";
  }
  return "unknown";
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Certificate positive(double margin, const std::string& detail) {
  return {margin > 0.0 ? Verdict::pass : Verdict::fail, margin, detail};
}

// Per-time envelope over x; take_max selects max, otherwise min.
std::vector<double> envelope(const CoefficientField& f, bool take_max) {
  const PeriodGrid& g = f.grid();
  std::vector<double> out(static_cast<std::size_t>(g.nt));
  for (int j = 0; j < g.nt; ++j) {
    double e = f(j, 0);
    for (int k = 1; k < g.nx; ++k) e = take_max ? std::max(e, f(j, k)) : std::min(e, f(j, k));
    out[static_cast<std::size_t>(j)] = e;
  }
  return out;
}

double integral(const std::vector<double>& v, double dt) {
  double s = 0.0;
  for (double x : v) s += x;
  return s * dt;
}

bool symmetric_media(const SystemSpec& sys) {
  for (int i = 0; i < 2; ++i) {
    if (!mean_and_symmetry(sys.g(i)).symmetry.odd_in_x.holds) return false;
    for (const CoefficientField* f : {&sys.d(i), &sys.b(i), &sys.a(i, 0), &sys.a(i, 1)}) {
      if (!mean_and_symmetry(*f).symmetry.even_in_x.holds) return false;
    }
  }
  return true;
}

bool is_constant(const CoefficientField& f) {
  const auto s = mean_and_symmetry(f).symmetry;
  return s.x_independent.holds && s.t_independent.holds;
}

bool same_values(const CoefficientField& a, const CoefficientField& b) {
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    if (std::abs(a.values()[i] - b.values()[i]) > 1e-12 * std::max(1.0, std::abs(a.values()[i]))) return false;
  }
  return true;
}

Certificate prop_c(const SystemSpec& sys) {
  const double dt = sys.grid().dt();
  const std::vector<double> b1 = envelope(sys.b(0), false), b2 = envelope(sys.b(1), true);
  const std::vector<double> a11 = envelope(sys.a(0, 0), true), a12 = envelope(sys.a(0, 1), true);
  const std::vector<double> a21 = envelope(sys.a(1, 0), false), a22 = envelope(sys.a(1, 1), false);
  double k1 = 0.0, k2 = 0.0;
  for (std::size_t j = 0; j < b1.size(); ++j) {
    k1 = std::max(k1, a12[j] / a22[j]);
    k2 = std::max(k2, a21[j] / a11[j]);
  }
  const double i1 = integral(b1, dt), i2 = integral(b2, dt);
  const double m1 = i1 - k1 * i2;
  const double m2 = k2 * i1 - i2;
  Certificate c;
  c.margin = std::min(m1, m2);
  c.verdict = (m1 > 0.0 && m2 >= 0.0) ? Verdict::pass : Verdict::fail;
  c.detail = "int b1_min = " + fmt(i1) + ", int b2_max = " + fmt(i2) + ", max a12/a22 = " + fmt(k1) +
             ", max a21/a11 = " + fmt(k2);
  return c;
}

// Conditions for the spatially homogeneous two-species case.
bool homogeneous_case(const SystemSpec& sys) {
  return sys.x_independent() && sys.g(0).max_abs() == 0.0 && sys.g(1).max_abs() == 0.0 && is_constant(sys.d(0)) &&
         is_constant(sys.d(1));
}

double mean_of(const CoefficientField& f) { return mean_and_symmetry(f).mean; }

Certificate p1(const SystemSpec& sys) {
  if (!homogeneous_case(sys)) return {Verdict::not_applicable, std::nullopt, "needs x-independent data, g = 0, constant d"};
  double k1 = 0.0, k2 = 0.0;
  for (int j = 0; j < sys.grid().nt; ++j) {
    k1 = std::max(k1, sys.a(0, 1)(j, 0) / sys.a(1, 1)(j, 0));
    k2 = std::max(k2, sys.a(1, 0)(j, 0) / sys.a(0, 0)(j, 0));
  }
  const double mb1 = mean_of(sys.b(0)), mb2 = mean_of(sys.b(1));
  const double margin = std::min({mb1 - k1 * mb2, k1 * mb2, mb2, k2 * mb1 - mb2});
  const bool ok = mb1 > k1 * mb2 && k1 * mb2 > 0.0 && mb2 > 0.0 && mb2 <= k2 * mb1;
  return {ok ? Verdict::pass : Verdict::fail, margin,
          "mean b1 = " + fmt(mb1) + ", mean b2 = " + fmt(mb2) + ", max a12/a22 = " + fmt(k1) +
              ", max a21/a11 = " + fmt(k2)};
}

Certificate p2(const SystemSpec& sys, const SemiTrivialOrbits& orbits) {
  if (!homogeneous_case(sys)) return {Verdict::not_applicable, std::nullopt, "needs x-independent data, g = 0, constant d"};
  if (orbits.u1.extinct || orbits.u2.extinct) return {Verdict::fail, std::nullopt, "a semi-trivial orbit is extinct"};
  const double d = sys.d(1)(0, 0) / sys.d(0)(0, 0);
  double margin = std::min(d, 1.0 - d);
  for (int j = 0; j < sys.grid().nt; ++j) {
    const double u1 = orbits.u1.snapshots(j, 0), u2 = orbits.u2.snapshots(j, 0);
    const double lhs = sys.a(0, 0)(j, 0) * u1 - sys.a(0, 1)(j, 0) * u2;
    const double mid = sys.a(1, 0)(j, 0) * u1 - sys.a(1, 1)(j, 0) * u2;
    margin = std::min({margin, lhs - mid, mid});
  }
  return {margin >= 0.0 && d > 0.0 ? Verdict::pass : Verdict::fail, margin, "d = d2/d1 = " + fmt(d)};
}

Certificate condition_m(const SystemSpec& sys) {
  const CoefficientField& a = sys.b(0);
  bool hmp = same_values(sys.b(0), sys.b(1)) && sys.g(0).max_abs() == 0.0 && sys.g(1).max_abs() == 0.0 &&
             is_constant(sys.d(0)) && is_constant(sys.d(1));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) hmp = hmp && is_constant(sys.a(i, j)) && sys.a(i, j)(0, 0) == 1.0;
  }
  if (!hmp) return {Verdict::not_applicable, std::nullopt, "needs b1 = b2 = a, a_ij = 1, g = 0, constant d"};
  const auto ms = mean_and_symmetry(a);
  const bool nontrivial = !ms.symmetry.x_independent.holds;
  const bool ok = nontrivial && ms.symmetry.even_in_x.holds && ms.mean >= 0.0;
  std::string detail = "mean a = " + fmt(ms.mean) + (nontrivial ? "" : ", a is x-independent") +
                       (ms.symmetry.even_in_x.holds ? "" : ", a is not even in x");
  if (ok) {
    const double lam = principal_eigen(sys.d(0), sys.g(0), a).lambda;
    detail += ", lambda(d1, 0, a) = " + fmt(lam);
  }
  return {ok ? Verdict::pass : Verdict::fail, ms.mean, detail};
}

} // namespace

HypothesisReport check_hypotheses(const SystemSpec& sys, const SemiTrivialOrbits& orbits,
                                  const SpeedOptions& options) {
  HypothesisReport r;
  const double l1 = orbits.u1.lambda, l2 = orbits.u2.lambda;
  r.h1 = positive(std::min(l1, l2), "lambda(d1, g1, b1) = " + fmt(l1) + ", lambda(d2, g2, b2) = " + fmt(l2));

  const CoefficientField& u2 = orbits.u2.snapshots;
  const double h2 = principal_eigen(sys.d(0), sys.g(0), sys.b(0) - sys.a(0, 1) * u2, options.eigen).lambda;
  r.h2 = positive(h2, "lambda(d1, g1, b1 - a12 u2*) = " + fmt(h2));

  r.prop_c = prop_c(sys);
  r.h3 = r.prop_c.verdict == Verdict::pass
             ? Certificate{Verdict::pass_sufficient, r.prop_c.margin, "envelope condition holds"}
             : Certificate{Verdict::inconclusive, r.prop_c.margin, "envelope condition fails; H3 undecided"};
  r.p1 = p1(sys);
  r.p2 = p2(sys, orbits);
  r.m = condition_m(sys);

  const bool symmetric = symmetric_media(sys);
  try {
    r.c1_plus = scalar_kpp_speeds(sys.d(0), sys.g(0), sys.b(0), options).right;
    r.c2_minus = scalar_kpp_speeds(sys.d(1), sys.g(1), sys.b(1), options).left;
    r.h4 = positive(*r.c1_plus + *r.c2_minus,
                    "c1+ = " + fmt(*r.c1_plus) + ", c2- = " + fmt(*r.c2_minus));
  } catch (const NumericalError& e) {
    r.h4 = {Verdict::inconclusive, std::nullopt, e.what()};
  }

  if (orbits.u2.extinct) {
    r.h5 = {Verdict::inconclusive, std::nullopt, "u2* is extinct"};
    return r;
  }
  const CoefficientField m2 = sys.b(1) - sys.a(1, 1) * u2;
  const double lam0 = lambda_of_mu(sys.d(1), sys.g(1), m2, 0.0, options.eigen).lambda;
  std::string detail = "lambda2(0) = " + fmt(lam0);
  if (std::abs(lam0) > 1e-6) {
    r.h5 = {Verdict::inconclusive, std::nullopt, detail + " is not zero"};
  } else if (symmetric && r.h1.verdict == Verdict::pass && r.h2.verdict == Verdict::pass) {
    r.h5 = {Verdict::pass, r.c1_plus, detail + "; even media, slope at 0 vanishes"};
  } else if (!r.c1_plus) {
    r.h5 = {Verdict::inconclusive, std::nullopt, detail + "; c1+ unavailable"};
  } else {
    const double e1 = 1e-2, e2 = 1e-3;
    const double s1 = (lambda_of_mu(sys.d(1), sys.g(1), m2, e1, options.eigen).lambda - lam0) / e1;
    const double s2 = (lambda_of_mu(sys.d(1), sys.g(1), m2, e2, options.eigen).lambda - lam0) / e2;
    const double slope = (e1 * s2 - e2 * s1) / (e1 - e2);
    const double margin = *r.c1_plus - slope;
    r.h5 = {margin >= 0.0 ? Verdict::pass : Verdict::fail, margin, detail + ", slope at 0 = " + fmt(slope)};
  }
  return r;
}

DeterminacyReport check_linear_determinacy(const SystemSpec& sys, const CoefficientField& u2_star, double mu0,
                                           const EigenOptions& options) {
  DeterminacyReport r;
  CoupledEigenfunction ef;
  try {
    ef = coupled_eigenfunction(sys, u2_star, mu0, options);
  } catch (const D1Violated& e) {
    r.d1 = {Verdict::fail, e.margin(), e.what()};
    r.d2 = {Verdict::inconclusive, std::nullopt, "needs D1"};
    return r;
  }
  r.d1 = positive(ef.lambda0 - ef.lambda_bar,
                  "lambda0(mu0) = " + fmt(ef.lambda0) + ", lambda_bar(mu0) = " + fmt(ef.lambda_bar));
  if (ef.degenerate) {
    r.d2 = {Verdict::inconclusive, std::nullopt, "a21 u2* vanishes, the linearization decouples"};
    r.eigenfunction = std::move(ef);
    return r;
  }

  const PeriodGrid& pg = sys.grid();
  double margin = std::numeric_limits<double>::infinity();
  bool unbounded = false;
  for (int j = 0; j < pg.nt; ++j) {
    for (int k = 0; k < pg.nx; ++k) {
      const double a21 = sys.a(1, 0)(j, k);
      if (a21 <= 0.0) {
        unbounded = true;
        continue;
      }
      const double need = std::max(sys.a(0, 1)(j, k) / sys.a(0, 0)(j, k), sys.a(1, 1)(j, k) / a21);
      const double ratio = ef.phi1(j, k) / ef.phi2(j, k);
      margin = std::min(margin, ratio - need);
    }
  }
  if (unbounded) {
    r.d2 = {Verdict::fail, std::nullopt, "a21 vanishes somewhere, a22/a21 is unbounded"};
  } else {
    r.d2 = positive(margin, "min phi1/phi2 - max(a12/a11, a22/a21) = " + fmt(margin));
    if (margin == 0.0) r.d2.verdict = Verdict::pass;
  }
  r.linearly_determinate = r.d1.verdict == Verdict::pass && r.d2.verdict == Verdict::pass;
  r.eigenfunction = std::move(ef);
  return r;
}

} // namespace speedlab
