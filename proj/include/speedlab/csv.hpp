#pragma once

#include "speedlab/coeffs.hpp"
#include "speedlab/eigen.hpp"
#include "speedlab/frontsim.hpp"
#include "speedlab/pde.hpp"
#include "speedlab/weinberger.hpp"

#include <filesystem>
#include <vector>

namespace speedlab {

// Plot-ready dumps with a header line; numbers use %.17g so files round-trip.
// Each writer throws ValidationError when the file cannot be opened.

// Columns t, x, v1, v2 (or u1, u2 for the competitive form).
void write_snapshot_csv(const std::filesystem::path& path, const LineState& state, bool cooperative = true);

// Columns t, x, u_star over one period.
void write_orbit_csv(const std::filesystem::path& path, const CoefficientField& orbit);

// Columns mu, lambda, residual, iterations.
struct LambdaPoint {
  double mu = 0.0;
  double lambda = 0.0;
  double residual = 0.0;
  int iterations = 0;
};
void write_lambda_curve_csv(const std::filesystem::path& path, const std::vector<LambdaPoint>& points);

// Columns t, x_front.
void write_front_trace_csv(const std::filesystem::path& path, const FrontTrace& trace);

// Columns x, v1, v2, m.
void write_profile_csv(const std::filesystem::path& path, const Profile& profile, int iteration);

// Columns c, classification, right_end_value, left_plateau.
// Reported values are the larger of the two components.
void write_bracket_trace_csv(const std::filesystem::path& path, const std::vector<TraceEntry>& trace);

} // namespace speedlab
