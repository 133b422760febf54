#include "speedlab/coeffs.hpp"

#include "speedlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace speedlab {

void PeriodGrid::validate() const {
  if (!(omega > 0.0) || !(ell > 0.0)) throw ValidationError("periods omega and ell must be positive");
  if (nt < 2 || nx < 2) throw ValidationError("grid needs nt >= 2 and nx >= 2");
}

CoefficientField::CoefficientField(PeriodGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  grid_.validate();
  if (values_.size() != static_cast<std::size_t>(grid_.nt) * grid_.nx) {
    throw ValidationError("field sample count does not match grid");
  }
}

CoefficientField CoefficientField::sample(const Expr& expr, PeriodGrid grid) {
  grid.validate();
  std::vector<double> values(static_cast<std::size_t>(grid.nt) * grid.nx);
  for (int j = 0; j < grid.nt; ++j) {
    for (int k = 0; k < grid.nx; ++k) values[static_cast<std::size_t>(j) * grid.nx + k] = expr.eval(grid.t(j), grid.x(k));
  }
  CoefficientField f(grid, std::move(values));
  f.source_ = expr;
  return f;
}

CoefficientField CoefficientField::constant(double value, PeriodGrid grid) { return sample(Expr(value), grid); }

double CoefficientField::at(double tau, long k) const {
  const double fl = std::floor(tau + 1e-9);
  const double frac = tau - fl;
  const long j = static_cast<long>(fl);
  if (frac < 1e-9) return (*this)(j, k);
  return (1.0 - frac) * (*this)(j, k) + frac * (*this)(j + 1, k);
}

double CoefficientField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double CoefficientField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double CoefficientField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

CoefficientField CoefficientField::resampled(int nt, int nx) const {
  if (!source_) throw ValidationError("field has no expression source and cannot be resampled");
  return sample(*source_, PeriodGrid{grid_.omega, grid_.ell, nt, nx});
}

CoefficientField CoefficientField::with_source(Expr source) const {
  CoefficientField f = *this;
  f.source_ = std::move(source);
  return f;
}

namespace {

void require_same_grid(const CoefficientField& a, const CoefficientField& b) {
  if (!(a.grid() == b.grid())) throw ValidationError("field arithmetic needs matching grids");
}

template <class Op>
std::vector<double> zip(const CoefficientField& a, const CoefficientField& b, Op op) {
  require_same_grid(a, b);
  std::vector<double> out(a.values().size());
  std::transform(a.values().begin(), a.values().end(), b.values().begin(), out.begin(), op);
  return out;
}

} // namespace

CoefficientField operator+(const CoefficientField& a, const CoefficientField& b) {
  CoefficientField f(a.grid_, zip(a, b, std::plus<>()));
  if (a.source_ && b.source_) f.source_ = *a.source_ + *b.source_;
  return f;
}

CoefficientField operator-(const CoefficientField& a, const CoefficientField& b) {
  CoefficientField f(a.grid_, zip(a, b, std::minus<>()));
  if (a.source_ && b.source_) f.source_ = *a.source_ - *b.source_;
  return f;
}

CoefficientField operator*(const CoefficientField& a, const CoefficientField& b) {
  CoefficientField f(a.grid_, zip(a, b, std::multiplies<>()));
  if (a.source_ && b.source_) f.source_ = *a.source_ * *b.source_;
  return f;
}

CoefficientField operator+(const CoefficientField& a, double s) {
  std::vector<double> out(a.values_);
  for (double& v : out) v += s;
  CoefficientField f(a.grid_, std::move(out));
  if (a.source_) f.source_ = *a.source_ + Expr(s);
  return f;
}

CoefficientField operator*(double s, const CoefficientField& a) {
  std::vector<double> out(a.values_);
  for (double& v : out) v *= s;
  CoefficientField f(a.grid_, std::move(out));
  if (a.source_) f.source_ = Expr(s) * *a.source_;
  return f;
}

CoefficientField build_field(const std::string& expression, double omega, double ell, int nt, int nx) {
  return CoefficientField::sample(Expr::parse(expression), PeriodGrid{omega, ell, nt, nx});
}

CoefficientField reflect_x(const CoefficientField& f) {
  const PeriodGrid& g = f.grid();
  std::vector<double> out(f.values().size());
  for (int j = 0; j < g.nt; ++j) {
    for (int k = 0; k < g.nx; ++k) out[static_cast<std::size_t>(j) * g.nx + k] = f(j, -k);
  }
  CoefficientField r(g, std::move(out));
  // Permuted samples are exact; the reflected source only serves resampling.
  return f.has_source() ? r.with_source(f.source()->reflect_x()) : r;
}

MeanAndSymmetry mean_and_symmetry(const CoefficientField& f, double tolerance) {
  const PeriodGrid& g = f.grid();
  const double mean = std::accumulate(f.values().begin(), f.values().end(), 0.0) / f.values().size();
  const double scale = f.max_abs();

  double even_x = 0, odd_x = 0, even_t = 0, x_ind = 0, t_ind = 0;
  for (int j = 0; j < g.nt; ++j) {
    for (int k = 0; k < g.nx; ++k) {
      const double v = f(j, k);
      even_x = std::max(even_x, std::abs(v - f(j, -k)));
      odd_x = std::max(odd_x, std::abs(v + f(j, -k)));
      even_t = std::max(even_t, std::abs(v - f(-j, k)));
      x_ind = std::max(x_ind, std::abs(v - f(j, 0)));
      t_ind = std::max(t_ind, std::abs(v - f(0, k)));
    }
  }
  auto flag = [&](double dev) {
    const double rel = scale > 0.0 ? dev / scale : 0.0;
    return SymmetryFlag{rel <= tolerance, rel};
  };
  return {mean, SymmetryReport{flag(even_x), flag(odd_x), flag(even_t), flag(x_ind), flag(t_ind)}};
}

} // namespace speedlab
