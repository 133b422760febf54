#pragma once

#include "speedlab/coeffs.hpp"

#include <array>
#include <string>

namespace speedlab {

// Coefficient expressions of the two-species competition system
//   u_i,t = d_i u_i,xx - g_i u_i,x + u_i (b_i - a_i1 u_1 - a_i2 u_2).
struct ModelSpec {
  double omega = 1.0;
  double ell = 1.0;
  std::array<std::string, 2> d{"1", "1"};
  std::array<std::string, 2> g{"0", "0"};
  std::array<std::string, 2> b{"1", "1"};
  std::array<std::array<std::string, 2>, 2> a{{{"1", "1"}, {"1", "1"}}};
};

// A ModelSpec sampled on one period lattice.
class SystemSpec {
public:
  // Throws ValidationError when d_i <= 0, a_ii <= 0 or a_ij < 0 (i != j)
  // anywhere on the lattice.
  static SystemSpec build(const ModelSpec& model, int nt, int nx);

  const ModelSpec& model() const { return model_; }
  const PeriodGrid& grid() const { return grid_; }

  const CoefficientField& d(int i) const { return d_[i]; }
  const CoefficientField& g(int i) const { return g_[i]; }
  const CoefficientField& b(int i) const { return b_[i]; }
  const CoefficientField& a(int i, int j) const { return a_[i][j]; }

  // Same model on (factor*nt, factor*nx).
  SystemSpec refined(int factor = 2) const;

  // True when a12 or a21 is positive somewhere.
  bool coupled() const;

  // True when every coefficient is x-independent.
  bool x_independent() const;

  // Upper bound used by the blow-up guard: 10 * max b / min a_ii.
  double blowup_bound() const;

private:
  ModelSpec model_;
  PeriodGrid grid_;
  std::array<CoefficientField, 2> d_, g_, b_;
  std::array<std::array<CoefficientField, 2>, 2> a_;
};

} // namespace speedlab
