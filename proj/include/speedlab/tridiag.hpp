#pragma once

#include <vector>

namespace speedlab {

// Row i reads lower[i]*u[i-1] + diag[i]*u[i] + upper[i]*u[i+1]. For a
// periodic system lower[0] couples to u[n-1] and upper[n-1] to u[0];
// otherwise those two entries are ignored.
struct Tridiagonal {
  std::vector<double> lower, diag, upper;

  explicit Tridiagonal(std::size_t n = 0) : lower(n), diag(n), upper(n) {}
  std::size_t size() const { return diag.size(); }
};

// Thomas algorithm. Throws SingularSolve on a vanishing pivot.
void solve_tridiagonal(const Tridiagonal& m, std::vector<double>& rhs);

// Periodic tridiagonal solve by Sherman-Morrison; n <= 2 is handled densely.
void solve_cyclic(const Tridiagonal& m, std::vector<double>& rhs);

// Thomas factorization kept for repeated solves with one matrix.
class TridiagonalFactor {
public:
  TridiagonalFactor() = default;
  explicit TridiagonalFactor(const Tridiagonal& m);

  void solve(std::vector<double>& rhs) const;
  std::size_t size() const { return inv_pivot_.size(); }

private:
  std::vector<double> lower_, inv_pivot_, ratio_;
};

// y = M u, honouring the periodic corners when periodic is set.
std::vector<double> multiply(const Tridiagonal& m, const std::vector<double>& u, bool periodic);

} // namespace speedlab
