#include "speedlab/tridiag.hpp"

#include "speedlab/errors.hpp"

#include <cmath>

namespace speedlab {

namespace {

constexpr double pivot_floor = 1e-300;

void check_pivot(double p) {
  if (!(std::abs(p) > pivot_floor)) throw SingularSolve("vanishing pivot in tridiagonal solve");
}

} // namespace

void solve_tridiagonal(const Tridiagonal& m, std::vector<double>& rhs) {
  const std::size_t n = m.size();
  if (n == 0) return;
  std::vector<double> c(n);
  double p = m.diag[0];
  check_pivot(p);
  c[0] = n > 1 ? m.upper[0] / p : 0.0;
  rhs[0] /= p;
  for (std::size_t i = 1; i < n; ++i) {
    p = m.diag[i] - m.lower[i] * c[i - 1];
    check_pivot(p);
    c[i] = i + 1 < n ? m.upper[i] / p : 0.0;
    rhs[i] = (rhs[i] - m.lower[i] * rhs[i - 1]) / p;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

void solve_cyclic(const Tridiagonal& m, std::vector<double>& rhs) {
  const std::size_t n = m.size();
  if (n == 1) {
    const double p = m.diag[0] + m.lower[0] + m.upper[0];
    check_pivot(p);
    rhs[0] /= p;
    return;
  }
  if (n == 2) {
    // Both neighbours of each node are the other node.
    const double a = m.diag[0], b = m.lower[0] + m.upper[0];
    const double c = m.lower[1] + m.upper[1], d = m.diag[1];
    const double det = a * d - b * c;
    check_pivot(det);
    const double r0 = rhs[0], r1 = rhs[1];
    rhs[0] = (d * r0 - b * r1) / det;
    rhs[1] = (a * r1 - c * r0) / det;
    return;
  }
  // A = B + w z^T with w = (gamma, 0, ..., 0, lower[0])^T and
  // z = (1, 0, ..., 0, upper[n-1] / gamma)^T.
  const double alpha = m.upper[n - 1];
  const double beta = m.lower[0];
  const double gamma = -m.diag[0];
  Tridiagonal b = m;
  b.diag[0] -= gamma;
  b.diag[n - 1] -= alpha * beta / gamma;

  solve_tridiagonal(b, rhs);
  std::vector<double> w(n, 0.0);
  w[0] = gamma;
  w[n - 1] = alpha;
  solve_tridiagonal(b, w);
  const double denom = 1.0 + w[0] + beta / gamma * w[n - 1];
  check_pivot(denom);
  const double fact = (rhs[0] + beta / gamma * rhs[n - 1]) / denom;
  for (std::size_t i = 0; i < n; ++i) rhs[i] -= fact * w[i];
}

TridiagonalFactor::TridiagonalFactor(const Tridiagonal& m)
    : lower_(m.lower), inv_pivot_(m.size()), ratio_(m.size(), 0.0) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double p = m.diag[i] - (i > 0 ? m.lower[i] * ratio_[i - 1] : 0.0);
    check_pivot(p);
    inv_pivot_[i] = 1.0 / p;
    if (i + 1 < n) ratio_[i] = m.upper[i] / p;
  }
}

void TridiagonalFactor::solve(std::vector<double>& rhs) const {
  const std::size_t n = inv_pivot_.size();
  if (n == 0) return;
  rhs[0] *= inv_pivot_[0];
  for (std::size_t i = 1; i < n; ++i) rhs[i] = (rhs[i] - lower_[i] * rhs[i - 1]) * inv_pivot_[i];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= ratio_[i] * rhs[i + 1];
}

std::vector<double> multiply(const Tridiagonal& m, const std::vector<double>& u, bool periodic) {
  const std::size_t n = m.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = m.diag[i] * u[i];
    if (i > 0) s += m.lower[i] * u[i - 1];
    else if (periodic) s += m.lower[i] * u[n - 1];
    if (i + 1 < n) s += m.upper[i] * u[i + 1];
    else if (periodic) s += m.upper[i] * u[0];
    y[i] = s;
  }
  return y;
}

} // namespace speedlab
