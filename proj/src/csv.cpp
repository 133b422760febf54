#include "speedlab/csv.hpp"

#include "speedlab/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>

namespace speedlab {

namespace {

using File = std::unique_ptr<std::FILE, int (*)(std::FILE*)>;

File open(const std::filesystem::path& path, const char* header) {
  File f(std::fopen(path.c_str(), "w"), &std::fclose);
  if (!f) throw ValidationError("cannot open " + path.string() + " for writing");
  std::fprintf(f.get(), "%s\n", header);
  return f;
}

} // namespace

void write_snapshot_csv(const std::filesystem::path& path, const LineState& state, bool cooperative) {
  File f = open(path, cooperative ? "t,x,v1,v2" : "t,x,u1,u2");
  for (int i = 0; i < state.nodes(); ++i) {
    std::fprintf(f.get(), "%.17g,%.17g,%.17g,%.17g\n", state.t, state.x(i), state.v[0][i], state.v[1][i]);
  }
}

void write_orbit_csv(const std::filesystem::path& path, const CoefficientField& orbit) {
  const PeriodGrid& g = orbit.grid();
  File f = open(path, "t,x,u_star");
  for (int j = 0; j < g.nt; ++j) {
    for (int k = 0; k < g.nx; ++k) std::fprintf(f.get(), "%.17g,%.17g,%.17g\n", g.t(j), g.x(k), orbit(j, k));
  }
}

void write_lambda_curve_csv(const std::filesystem::path& path, const std::vector<LambdaPoint>& points) {
  File f = open(path, "mu,lambda,residual,iterations");
  for (const LambdaPoint& p : points) {
    std::fprintf(f.get(), "%.17g,%.17g,%.17g,%d\n", p.mu, p.lambda, p.residual, p.iterations);
  }
}

void write_front_trace_csv(const std::filesystem::path& path, const FrontTrace& trace) {
  File f = open(path, "t,x_front");
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    std::fprintf(f.get(), "%.17g,%.17g\n", trace.times[i], trace.positions[i]);
  }
}

void write_profile_csv(const std::filesystem::path& path, const Profile& profile, int iteration) {
  File f = open(path, "x,v1,v2,m");
  for (int i = 0; i < profile.nodes(); ++i) {
    std::fprintf(f.get(), "%.17g,%.17g,%.17g,%d\n", profile.x(i), profile.v[0][i], profile.v[1][i], iteration);
  }
}

void write_bracket_trace_csv(const std::filesystem::path& path, const std::vector<TraceEntry>& trace) {
  File f = open(path, "c,classification,right_end_value,left_plateau");
  for (const TraceEntry& e : trace) {
    const double left = std::max(e.left_plateau[0], e.left_plateau[1]);
    std::fprintf(f.get(), "%.17g,%s,%.17g,%.17g\n", e.c, to_string(e.cls).c_str(), std::max(e.reading[0], e.reading[1]),
                 left);
  }
}

} // namespace speedlab
