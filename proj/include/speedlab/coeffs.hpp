#pragma once

#include "speedlab/expr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace speedlab {

// Sample lattice of one space-time period cell [0, omega) x [0, ell).
struct PeriodGrid {
  double omega = 1.0;
  double ell = 1.0;
  int nt = 200;
  int nx = 64;

  double dt() const { return omega / nt; }
  double dx() const { return ell / nx; }
  double t(int j) const { return omega * j / nt; }
  double x(int k) const { return ell * k / nx; }

  // Throws ValidationError unless periods are positive and nt, nx >= 2.
  void validate() const;

  bool operator==(const PeriodGrid&) const = default;
};

// Samples of a (t, x)-periodic coefficient on a PeriodGrid, stored row-major
// in time. An expression-backed field can be resampled on a finer lattice.
class CoefficientField {
public:
  CoefficientField() = default;
  CoefficientField(PeriodGrid grid, std::vector<double> values);

  static CoefficientField sample(const Expr& expr, PeriodGrid grid);
  static CoefficientField constant(double value, PeriodGrid grid);

  const PeriodGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }

  // Indices wrap periodically in both directions.
  double operator()(long j, long k) const {
    return values_[static_cast<std::size_t>(wrap(j, grid_.nt) * grid_.nx + wrap(k, grid_.nx))];
  }

  // Value at fractional time-sample position tau, linear in time between samples.
  double at(double tau, long k) const;

  double min() const;
  double max() const;
  double max_abs() const;

  bool has_source() const { return source_.has_value(); }
  const std::optional<Expr>& source() const { return source_; }

  // Requires an expression source.
  CoefficientField resampled(int nt, int nx) const;

  // Same samples, tagged with the expression they were taken from.
  CoefficientField with_source(Expr source) const;

  static long wrap(long i, long n) {
    const long r = i % n;
    return r < 0 ? r + n : r;
  }

  friend CoefficientField operator+(const CoefficientField& a, const CoefficientField& b);
  friend CoefficientField operator-(const CoefficientField& a, const CoefficientField& b);
  friend CoefficientField operator*(const CoefficientField& a, const CoefficientField& b);
  friend CoefficientField operator+(const CoefficientField& a, double s);
  friend CoefficientField operator*(double s, const CoefficientField& a);

private:
  PeriodGrid grid_;
  std::vector<double> values_;
  std::optional<Expr> source_;
};

// Parses and samples; ParseError and EvalError propagate.
CoefficientField build_field(const std::string& expression, double omega, double ell, int nt, int nx);

// f(t, -x) on the same lattice (column k maps to (nx - k) mod nx).
CoefficientField reflect_x(const CoefficientField& f);

struct SymmetryFlag {
  bool holds = false;
  double deviation = 0.0;  // sup deviation relative to max|f|
};

struct SymmetryReport {
  SymmetryFlag even_in_x;
  SymmetryFlag odd_in_x;
  SymmetryFlag even_in_t;
  SymmetryFlag x_independent;
  SymmetryFlag t_independent;
};

struct MeanAndSymmetry {
  double mean = 0.0;
  SymmetryReport symmetry;
};

MeanAndSymmetry mean_and_symmetry(const CoefficientField& f, double tolerance = 1e-10);

} // namespace speedlab
