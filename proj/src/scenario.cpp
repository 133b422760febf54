#include "speedlab/scenario.hpp"

#include "speedlab/csv.hpp"
#include "speedlab/eigen.hpp"
#include "speedlab/expr.hpp"
#include "speedlab/orbits.hpp"
#include "speedlab/pde.hpp"
#include "speedlab/speeds.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <optional>
#include <set>

namespace speedlab {

using nlohmann::json;

namespace {

const std::vector<std::string> kTaskOrder = {"orbit", "eigen", "speed", "check", "weinberger", "front"};

void reject_unknown(const json& block, const std::string& where, const std::set<std::string>& allowed) {
  if (!block.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [key, value] : block.items()) {
    if (!allowed.contains(key)) throw ValidationError("unknown key '" + key + "' in " + where);
  }
}

double number(const json& block, const std::string& key, const std::string& where) {
  const json& v = block.at(key);
  if (!v.is_number()) throw ValidationError(where + "." + key + " must be a number");
  return v.get<double>();
}

int integer(const json& block, const std::string& key, const std::string& where) {
  const json& v = block.at(key);
  if (!v.is_number_integer()) throw ValidationError(where + "." + key + " must be an integer");
  return v.get<int>();
}

std::string expression(const json& block, const std::string& key) {
  if (!block.contains(key)) return {};
  const json& v = block.at(key);
  if (v.is_string()) {
    std::string text = v.get<std::string>();
    Expr::parse(text);
    return text;
  }
  if (v.is_number()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  throw ValidationError("model." + key + " must be an expression string or a number");
}

int steps_from(double period, double h, const std::string& what) {
  if (!(h > 0.0)) throw ValidationError(what + " must be positive");
  const double n = period / h;
  const long r = std::lround(n);
  if (r < 2 || std::abs(n - r) > 1e-9 * n) throw ValidationError(what + " must divide its period into at least 2 steps");
  return static_cast<int>(r);
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json certificate_json(const Certificate& c) {
  return {{"verdict", to_string(c.verdict)}, {"margin", optional_number(c.margin)}, {"details", c.detail}};
}

std::string error_type(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const EvalError*>(&e)) return "EvalError";
  if (dynamic_cast<const NonEllipticError*>(&e)) return "NonEllipticError";
  if (dynamic_cast<const SingularSolve*>(&e)) return "SingularSolve";
  if (dynamic_cast<const NoConvergence*>(&e)) return "NoConvergence";
  if (dynamic_cast<const BlowupError*>(&e)) return "BlowupError";
  if (dynamic_cast<const NoInteriorMinimum*>(&e)) return "NoInteriorMinimum";
  if (dynamic_cast<const NotMonostable*>(&e)) return "NotMonostable";
  if (dynamic_cast<const D1Violated*>(&e)) return "D1Violated";
  if (dynamic_cast<const NoCrossing*>(&e)) return "NoCrossing";
  if (dynamic_cast<const TooFewPoints*>(&e)) return "TooFewPoints";
  if (dynamic_cast<const ShiftOutOfRange*>(&e)) return "ShiftOutOfRange";
  if (dynamic_cast<const InconsistentClassification*>(&e)) return "InconsistentClassification";
  if (dynamic_cast<const DomainTooSmall*>(&e)) return "DomainTooSmall";
  switch (e.category()) {
  case Error::Category::validation: return "ValidationError";
  case Error::Category::numerical: return "NumericalError";
  case Error::Category::guard: return "GuardError";
  }
  return "Error";
}

json error_json(const Error& e, const std::string& task) {
  static constexpr const char* categories[] = {"validation", "numerical", "guard"};
  return {{"task", task},
          {"category", categories[static_cast<int>(e.category())]},
          {"type", error_type(e)},
          {"message", e.what()}};
}

json orbit_json(const PeriodicOrbit& o) {
  const MeanAndSymmetry ms = mean_and_symmetry(o.snapshots);
  return {{"extinct", o.extinct}, {"lambda_at_zero", o.lambda}, {"periods", o.periods},
          {"closure_gap", o.closure_gap}, {"residual", o.residual}, {"mean", ms.mean},
          {"min", o.snapshots.min()}, {"max", o.snapshots.max()}};
}

json lambda_json(const EigenResult& r) {
  return {{"lambda", r.lambda}, {"iterations", r.iterations}, {"residual", r.residual},
          {"error_estimate", optional_number(r.error_estimate)}};
}

std::array<double, 2> half_min_plateau(const SemiTrivialOrbits& orbits) {
  std::array<double, 2> p{};
  for (int s = 0; s < 2; ++s) {
    const CoefficientField& u = s == 0 ? orbits.u1.snapshots : orbits.u2.snapshots;
    double lo = u(0, 0);
    for (int k = 0; k < u.grid().nx; ++k) lo = std::min(lo, u(0, k));
    p[s] = 0.5 * lo;
  }
  return p;
}

// Result of one task: a report fragment merged under fixed keys, or an error.
struct TaskResult {
  json fragment = json::object();
  std::optional<json> error;
  int exit_code = 0;
};

template <class F>
TaskResult guarded(const std::string& task, F&& body) {
  TaskResult r;
  try {
    body(r.fragment);
  } catch (const Error& e) {
    r.error = error_json(e, task);
    r.exit_code = exit_code_for(e);
  } catch (const std::exception& e) {
    r.error = json{{"task", task}, {"category", "numerical"}, {"type", "std::exception"}, {"message", e.what()}};
    r.exit_code = 3;
  }
  return r;
}

} // namespace

int exit_code_for(const Error& e) {
  switch (e.category()) {
  case Error::Category::validation: return 2;
  case Error::Category::numerical: return 3;
  case Error::Category::guard: return 4;
  }
  return 3;
}

ScenarioConfig parse_config(const json& config) {
  reject_unknown(config, "config", {"model", "discretization", "tasks", "output", "eigen", "weinberger", "front"});
  ScenarioConfig c;

  if (!config.contains("model")) throw ValidationError("config needs a model block");
  const json& m = config.at("model");
  reject_unknown(m, "model", {"omega", "ell", "d1", "d2", "g1", "g2", "b1", "b2", "a11", "a12", "a21", "a22"});
  if (m.contains("omega")) c.model.omega = number(m, "omega", "model");
  if (m.contains("ell")) c.model.ell = number(m, "ell", "model");
  if (!(c.model.omega > 0.0) || !(c.model.ell > 0.0)) throw ValidationError("model.omega and model.ell must be positive");
  auto set = [&](std::string& slot, const std::string& key) {
    if (std::string e = expression(m, key); !e.empty()) slot = e;
  };
  for (int i = 0; i < 2; ++i) {
    const std::string s = std::to_string(i + 1);
    set(c.model.d[i], "d" + s);
    set(c.model.g[i], "g" + s);
    set(c.model.b[i], "b" + s);
    for (int j = 0; j < 2; ++j) set(c.model.a[i][j], "a" + s + std::to_string(j + 1));
  }

  if (config.contains("discretization")) {
    const json& d = config.at("discretization");
    reject_unknown(d, "discretization", {"nt", "nx", "dt", "dx", "A", "T"});
    if (d.contains("nt") && d.contains("dt")) throw ValidationError("give discretization.nt or dt, not both");
    if (d.contains("nx") && d.contains("dx")) throw ValidationError("give discretization.nx or dx, not both");
    if (d.contains("nt")) c.nt = integer(d, "nt", "discretization");
    if (d.contains("dt")) c.nt = steps_from(c.model.omega, number(d, "dt", "discretization"), "discretization.dt");
    if (d.contains("nx")) c.nx = integer(d, "nx", "discretization");
    if (d.contains("dx")) c.nx = steps_from(c.model.ell, number(d, "dx", "discretization"), "discretization.dx");
    if (d.contains("A")) c.front.A = number(d, "A", "discretization");
    if (d.contains("T")) c.front.periods = integer(d, "T", "discretization");
  }
  if (c.nt < 2 || c.nx < 2) throw ValidationError("nt and nx must be at least 2");
  if (c.front.A < 0.0) throw ValidationError("discretization.A must be nonnegative");

  if (!config.contains("tasks") || !config.at("tasks").is_array()) throw ValidationError("config needs a tasks array");
  std::set<std::string> wanted;
  for (const json& t : config.at("tasks")) {
    if (!t.is_string()) throw ValidationError("tasks must be strings");
    const std::string name = t.get<std::string>();
    if (std::find(kTaskOrder.begin(), kTaskOrder.end(), name) == kTaskOrder.end()) {
      throw ValidationError("unknown task '" + name + "'");
    }
    wanted.insert(name);
  }
  if (wanted.empty()) throw ValidationError("task list is empty");
  if (wanted.contains("eigen") || wanted.contains("speed") || wanted.contains("check") ||
      wanted.contains("weinberger") || wanted.contains("front")) {
    wanted.insert("orbit");
  }
  if (wanted.contains("check") || wanted.contains("weinberger") || wanted.contains("front")) wanted.insert("speed");
  for (const std::string& t : kTaskOrder) {
    if (wanted.contains(t)) c.tasks.push_back(t);
  }

  if (config.contains("output")) {
    if (!config.at("output").is_string()) throw ValidationError("output must be a directory path string");
    c.output = config.at("output").get<std::string>();
  }

  c.mu_grid = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.25};
  if (config.contains("eigen")) {
    const json& e = config.at("eigen");
    reject_unknown(e, "eigen", {"mu_grid"});
    if (e.contains("mu_grid")) {
      c.mu_grid.clear();
      for (const json& v : e.at("mu_grid")) {
        if (!v.is_number()) throw ValidationError("eigen.mu_grid entries must be numbers");
        c.mu_grid.push_back(v.get<double>());
      }
      if (c.mu_grid.size() < 3) throw ValidationError("eigen.mu_grid needs at least 3 points");
    }
  }

  if (config.contains("weinberger")) {
    const json& w = config.at("weinberger");
    reject_unknown(w, "weinberger", {"A", "cap", "change_tol", "bisection_steps", "target_width", "c_lo", "c_hi"});
    WeinbergerOptions& o = c.weinberger;
    if (w.contains("A")) o.A = number(w, "A", "weinberger");
    if (w.contains("cap")) o.cap = integer(w, "cap", "weinberger");
    if (w.contains("change_tol")) o.change_tol = number(w, "change_tol", "weinberger");
    if (w.contains("bisection_steps")) o.bisection_steps = integer(w, "bisection_steps", "weinberger");
    if (w.contains("target_width")) o.target_width = number(w, "target_width", "weinberger");
    if (w.contains("c_lo")) o.c_lo = number(w, "c_lo", "weinberger");
    if (w.contains("c_hi")) o.c_hi = number(w, "c_hi", "weinberger");
    if (o.cap < 1 || o.bisection_steps < 0) throw ValidationError("weinberger.cap must be positive and bisection_steps nonnegative");
  }

  if (config.contains("front")) {
    const json& f = config.at("front");
    reject_unknown(f, "front", {"threshold", "discard_fraction", "snapshot_every"});
    if (f.contains("threshold")) c.front.threshold = number(f, "threshold", "front");
    if (f.contains("discard_fraction")) c.discard_fraction = number(f, "discard_fraction", "front");
    if (f.contains("snapshot_every")) c.front.snapshot_every = integer(f, "snapshot_every", "front");
    if (!(c.front.threshold > 0.0 && c.front.threshold < 1.0)) throw ValidationError("front.threshold must lie in (0, 1)");
    if (!(c.discard_fraction >= 0.0 && c.discard_fraction < 1.0)) {
      throw ValidationError("front.discard_fraction must lie in [0, 1)");
    }
  }
  if (c.front.periods < 1) throw ValidationError("discretization.T must be at least 1");
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

ScenarioOutcome run_scenario(const ScenarioConfig& config, const RunSettings& settings) {
  auto log = [&](const std::string& msg) {
    if (settings.log) settings.log(msg);
  };
  std::filesystem::create_directories(config.output);
  const std::filesystem::path& out = config.output;
  auto has = [&](const std::string& t) {
    return std::find(config.tasks.begin(), config.tasks.end(), t) != config.tasks.end();
  };

  json report;
  report["schema"] = "speedlab-report/1";
  report["tasks"] = config.tasks;
  report["grid"] = {{"omega", config.model.omega}, {"ell", config.model.ell}, {"nt", config.nt}, {"nx", config.nx},
                    {"refine", settings.refine}};
  for (const char* key : {"c0_plus", "mu0", "c1_plus", "c2_minus", "lambda0_at_mu0", "lambdabar_at_mu0"}) {
    report[key] = nullptr;
  }
  report["certificates"] = json::object();
  json errors = json::array();
  int exit_code = 0;
  auto absorb = [&](TaskResult r) {
    report.update(r.fragment, true);
    if (r.error) {
      errors.push_back(*r.error);
      if (exit_code == 0) exit_code = r.exit_code;
    }
  };
  auto finish = [&]() {
    report["status"] = {{"exit_code", exit_code}, {"errors", errors}};
    std::ofstream f(out / "report.json");
    if (!f) throw ValidationError("cannot write " + (out / "report.json").string());
    f << report.dump(2) << '\n';
    return ScenarioOutcome{exit_code, report};
  };

  std::optional<SystemSpec> sys;
  try {
    sys = SystemSpec::build(config.model, config.nt, config.nx);
  } catch (const Error& e) {
    errors.push_back(error_json(e, "model"));
    exit_code = exit_code_for(e);
    return finish();
  }

  SpeedOptions speed_opts;
  speed_opts.refine = settings.refine;
  EigenOptions eigen_opts;

  std::optional<SemiTrivialOrbits> orbits;
  absorb(guarded("orbit", [&](json& frag) {
    log("orbit: semi-trivial periodic solutions");
    orbits = semi_trivial_orbits(*sys);
    frag["orbits"] = {{"u1", orbit_json(orbits->u1)}, {"u2", orbit_json(orbits->u2)}};
    write_orbit_csv(out / "orbit_u1.csv", orbits->u1.snapshots);
    write_orbit_csv(out / "orbit_u2.csv", orbits->u2.snapshots);
  }));
  if (!orbits) return finish();
  const CoefficientField& u2s = orbits->u2.snapshots;
  const CoefficientField m0 = sys->b(0) - sys->a(0, 1) * u2s;

  if (has("eigen")) {
    absorb(guarded("eigen", [&](json& frag) {
      log("eigen: principal eigenvalues and lambda curve");
      EigenOptions o = eigen_opts;
      o.refine = settings.refine;
      json e;
      e["lambda_d1_g1_b1"] = lambda_json(principal_eigen(sys->d(0), sys->g(0), sys->b(0), o));
      e["lambda_d2_g2_b2"] = lambda_json(principal_eigen(sys->d(1), sys->g(1), sys->b(1), o));
      e["lambda2_at_zero"] =
          lambda_json(principal_eigen(sys->d(1), sys->g(1), sys->b(1) - sys->a(1, 1) * u2s, eigen_opts));
      const LambdaDiagnostics diag = lambda_diagnostics(sys->d(0), sys->g(0), m0, config.mu_grid, nullptr, 1e-8, eigen_opts);
      std::vector<LambdaPoint> pts;
      for (std::size_t i = 0; i < diag.mu.size(); ++i) {
        const EigenResult r = lambda_of_mu(sys->d(0), sys->g(0), m0, diag.mu[i], eigen_opts);
        pts.push_back({diag.mu[i], r.lambda, r.residual, r.iterations});
      }
      write_lambda_curve_csv(out / "lambda_curve.csv", pts);
      e["lambda0_curve"] = {{"mu", diag.mu}, {"lambda", diag.lambda}, {"min_second_difference", diag.min_second_difference},
                            {"convex", diag.convex}, {"evenness_applicable", diag.evenness_applicable},
                            {"evenness_defect", diag.evenness_defect}};
      frag["eigen"] = e;
    }));
  }

  std::optional<LinearSpeed> c0;
  absorb(guarded("speed", [&](json& frag) {
    log("speed: c0 and scalar KPP speeds");
    json notes = json::object();
    try {
      c0 = linear_speed_c0(*sys, u2s, speed_opts);
      frag["c0_plus"] = c0->c0;
      frag["mu0"] = c0->mu0;
      frag["lambda0_at_mu0"] = c0->lambda0_at_mu0;
      frag["c0_error_estimate"] = optional_number(c0->error_estimate);
    } catch (const NotMonostable& e) {
      notes["c0_plus"] = error_json(e, "speed");
    } catch (const NoInteriorMinimum& e) {
      notes["c0_plus"] = error_json(e, "speed");
    }
    try {
      const ScalarSpeeds s1 = scalar_kpp_speeds(sys->d(0), sys->g(0), sys->b(0), speed_opts);
      frag["c1_plus"] = s1.right;
      frag["c1_plus_error_estimate"] = optional_number(s1.right_error);
    } catch (const NotMonostable& e) {
      notes["c1_plus"] = error_json(e, "speed");
    } catch (const NoInteriorMinimum& e) {
      notes["c1_plus"] = error_json(e, "speed");
    }
    try {
      const ScalarSpeeds s2 = scalar_kpp_speeds(sys->d(1), sys->g(1), sys->b(1), speed_opts);
      frag["c2_minus"] = s2.left;
      frag["c2_minus_error_estimate"] = optional_number(s2.left_error);
    } catch (const NotMonostable& e) {
      notes["c2_minus"] = error_json(e, "speed");
    } catch (const NoInteriorMinimum& e) {
      notes["c2_minus"] = error_json(e, "speed");
    }
    frag["speed_notes"] = notes;
  }));

  const int jobs = std::max(1, settings.jobs);
  auto launch = [&](auto&& fn) {
    return std::async(jobs > 1 ? std::launch::async : std::launch::deferred, std::forward<decltype(fn)>(fn));
  };

  if (has("check")) {
    log("check: hypotheses and linear determinacy");
    auto hyp = launch([&] {
      return guarded("check", [&](json& frag) {
        const HypothesisReport h = check_hypotheses(*sys, *orbits, SpeedOptions{});
        json& cert = frag["certificates"];
        cert["H1"] = certificate_json(h.h1);
        cert["H2"] = certificate_json(h.h2);
        cert["H3"] = certificate_json(h.h3);
        cert["H4"] = certificate_json(h.h4);
        cert["H5"] = certificate_json(h.h5);
        cert["PropC"] = certificate_json(h.prop_c);
        cert["P1"] = certificate_json(h.p1);
        cert["P2"] = certificate_json(h.p2);
        cert["M"] = certificate_json(h.m);
      });
    });
    auto det = launch([&] {
      return guarded("check", [&](json& frag) {
        json& cert = frag["certificates"];
        if (!c0) {
          const Certificate na{Verdict::not_applicable, std::nullopt, "c0 unavailable, see speed_notes"};
          cert["D1"] = certificate_json(na);
          cert["D2"] = certificate_json(na);
          frag["linearly_determinate"] = false;
          return;
        }
        const DeterminacyReport d = check_linear_determinacy(*sys, u2s, c0->mu0, eigen_opts);
        cert["D1"] = certificate_json(d.d1);
        cert["D2"] = certificate_json(d.d2);
        frag["linearly_determinate"] = d.linearly_determinate;
        if (d.eigenfunction) {
          frag["lambdabar_at_mu0"] = d.eigenfunction->lambda_bar;
          frag["coupled_eigenfunction"] = {{"residual", d.eigenfunction->residual},
                                           {"neumann_terms", d.eigenfunction->neumann_terms},
                                           {"degenerate", d.eigenfunction->degenerate}};
        }
      });
    });
    TaskResult a = hyp.get(), b = det.get();
    json certs = report["certificates"];
    certs.update(a.fragment.value("certificates", json::object()));
    certs.update(b.fragment.value("certificates", json::object()));
    a.fragment.erase("certificates");
    b.fragment.erase("certificates");
    report["certificates"] = certs;
    absorb(std::move(a));
    absorb(std::move(b));
  }

  std::future<TaskResult> wfut, ffut;
  if (has("weinberger")) {
    wfut = launch([&] {
      return guarded("weinberger", [&](json& frag) {
        log("weinberger: bracketing c* and c bar");
        WeinbergerOptions o = config.weinberger;
        const WeinbergerRecursion rec(*sys, *orbits, o);
        const BracketResult br = rec.bracket();
        write_bracket_trace_csv(out / "bracket_trace.csv", br.trace);
        const RecursionResult lim = rec.limit(br.c_star.lo, 1);
        write_profile_csv(out / "profile_cstar_lo.csv", lim.profile, lim.iterations);
        auto bracket_json = [](const SpeedBracket& b) {
          return json{{"lo", b.lo}, {"hi", b.hi}, {"width", b.width()}, {"lower_open", b.lower_open},
                      {"upper_open", b.upper_open}};
        };
        int capped = 0;
        for (const TraceEntry& e : br.trace) capped += e.cap_reached ? 1 : 0;
        json w = {{"c_star", bracket_json(br.c_star)}, {"c_bar", bracket_json(br.c_bar)}, {"A", br.A},
                  {"read_x", br.read_x}, {"beta_at_read", br.beta_at_read}, {"evaluations", br.trace.size()},
                  {"cap_reached_count", capped}};
        if (c0) {
          w["contains_c0"] = br.c_star.contains(c0->c0) && br.c_bar.contains(c0->c0);
          w["lower_bound_consistent"] = c0->c0 <= br.c_star.hi + br.c_star.width();
        }
        frag["weinberger"] = w;
      });
    });
  }
  if (has("front")) {
    ffut = launch([&] {
      return guarded("front", [&](json& frag) {
        log("front: direct simulation");
        FrontOptions o = config.front;
        if (c0) o.c_estimate = c0->c0;
        if (o.A != 0.0 && o.c_estimate) {
          const double need = *o.c_estimate * o.periods * sys->grid().omega + 10.0 * sys->grid().ell;
          if (o.A < need) {
            throw ValidationError("front domain A = " + std::to_string(o.A) + " is below c0 T omega + 10 ell = " +
                                  std::to_string(need));
          }
        }
        const FrontTrace trace = run_front(*sys, *orbits, o);
        write_front_trace_csv(out / "front_trace.csv", trace);
        write_snapshot_csv(out / "front_final.csv", trace.final_state);
        for (std::size_t i = 0; i < trace.snapshots.size(); ++i) {
          write_snapshot_csv(out / ("front_snapshot_" + std::to_string(i + 1) + ".csv"), trace.snapshots[i]);
        }
        json f = {{"A", trace.A}, {"periods_run", trace.times.empty() ? 0 : trace.times.size() - 1},
                  {"domain_too_small", trace.domain_too_small}, {"no_front", trace.no_front}};
        if (trace.no_front) {
          f["verdict"] = "inconclusive";
          f["note"] = "species 1 absent";
        } else {
          const auto beta = cooperative_cell_attractor(*sys, u2s, half_min_plateau(*orbits));
          const double c_ref = c0 ? c0->c0 : std::numeric_limits<double>::quiet_NaN();
          const SpreadingVerdict v = spreading_verdict(*sys, trace, beta, c0 ? c0->c0 : 1.0, config.discard_fraction);
          f["fitted_speed"] = v.fit.speed;
          f["r2"] = v.fit.r2;
          f["ci"] = v.fit.ci_halfwidth;
          f["c0"] = c0 ? json(c_ref) : json(nullptr);
          f["relative_gap"] = c0 ? json(v.relative_gap) : json(nullptr);
          f["tail_front"] = v.tail_ahead;
          f["tail_back"] = v.tail_behind;
          f["final_front"] = v.front;
          std::string verdict = v.pass && c0 ? "pass" : "fail";
          if (trace.domain_too_small || !c0) verdict = "inconclusive";
          f["verdict"] = verdict;
          f["note"] = v.note.empty() ? "step data touches beta on the left; the upper statement is approximated"
                                     : v.note;
        }
        frag["front"] = f;
        if (trace.domain_too_small) {
          throw DomainTooSmall("front reached the last 5 ell of the domain before the final period");
        }
      });
    });
  }
  if (wfut.valid()) absorb(wfut.get());
  if (ffut.valid()) absorb(ffut.get());
  return finish();
}

std::vector<std::string> demo_names() { return {"vl2-constant", "vl2-periodic", "hmp"}; }

json demo_config(const std::string& name) {
  if (name == "vl2-constant" || name == "vl2-periodic") {
    json model = {{"omega", 0.5}, {"ell", 4.0}, {"d1", "1"}, {"d2", "0.5"}, {"g1", "0"}, {"g2", "0"},
                  {"b1", "2"}, {"b2", "1"}, {"a11", "1"}, {"a12", "0.3"}, {"a21", "1.2"}, {"a22", "1"}};
    if (name == "vl2-periodic") model["b2"] = "1 + 0.5*sin(2*pi*t/0.5)";
    return {{"model", model},
            {"discretization", {{"nt", 200}, {"nx", 64}, {"A", 120.0}, {"T", 40}}},
            {"tasks", {"eigen", "speed", "check", "weinberger", "front"}},
            {"weinberger", {{"A", 40.0}, {"c_lo", 0.0}, {"c_hi", 4.8}, {"cap", 3000}, {"bisection_steps", 6}}},
            {"output", "demo-" + name}};
  }
  if (name == "hmp") {
    const std::string a = "1 + 0.8*cos(2*pi*x) + 0.3*sin(2*pi*t)";
    return {{"model", {{"omega", 1.0}, {"ell", 1.0}, {"d1", "0.05"}, {"d2", "1"}, {"g1", "0"}, {"g2", "0"},
                       {"b1", a}, {"b2", a}, {"a11", "1"}, {"a12", "1"}, {"a21", "1"}, {"a22", "1"}}},
            {"discretization", {{"nt", 200}, {"nx", 64}}},
            {"tasks", {"eigen", "speed", "check"}},
            {"output", "demo-hmp"}};
  }
  throw ValidationError("unknown demo '" + name + "'");
}

} // namespace speedlab
