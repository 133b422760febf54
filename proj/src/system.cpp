#include "speedlab/system.hpp"

#include "speedlab/errors.hpp"

#include <algorithm>

namespace speedlab {

SystemSpec SystemSpec::build(const ModelSpec& model, int nt, int nx) {
  SystemSpec s;
  s.model_ = model;
  s.grid_ = PeriodGrid{model.omega, model.ell, nt, nx};
  s.grid_.validate();
  auto field = [&](const std::string& text, const char* name) {
    try {
      return build_field(text, model.omega, model.ell, nt, nx);
    } catch (const ParseError& e) {
      throw ParseError(std::string(name) + ": " + e.what(), e.position());
    } catch (const EvalError& e) {
      throw EvalError(std::string(name) + ": " + e.what());
    }
  };
  static constexpr const char* dn[] = {"d1", "d2"};
  static constexpr const char* gn[] = {"g1", "g2"};
  static constexpr const char* bn[] = {"b1", "b2"};
  static constexpr const char* an[2][2] = {{"a11", "a12"}, {"a21", "a22"}};
  for (int i = 0; i < 2; ++i) {
    s.d_[i] = field(model.d[i], dn[i]);
    s.g_[i] = field(model.g[i], gn[i]);
    s.b_[i] = field(model.b[i], bn[i]);
    for (int j = 0; j < 2; ++j) s.a_[i][j] = field(model.a[i][j], an[i][j]);
    if (!(s.d_[i].min() > 0.0)) throw NonEllipticError(std::string(dn[i]) + " must be positive everywhere");
    if (!(s.a_[i][i].min() > 0.0)) throw ValidationError(std::string(an[i][i]) + " must be positive everywhere");
    if (!(s.a_[i][1 - i].min() >= 0.0)) throw ValidationError(std::string(an[i][1 - i]) + " must be nonnegative");
  }
  return s;
}

SystemSpec SystemSpec::refined(int factor) const { return build(model_, factor * grid_.nt, factor * grid_.nx); }

bool SystemSpec::coupled() const { return a_[0][1].max() > 0.0 || a_[1][0].max() > 0.0; }

bool SystemSpec::x_independent() const {
  for (int i = 0; i < 2; ++i) {
    for (const CoefficientField* f : {&d_[i], &g_[i], &b_[i], &a_[i][0], &a_[i][1]}) {
      if (!mean_and_symmetry(*f).symmetry.x_independent.holds) return false;
    }
  }
  return true;
}

double SystemSpec::blowup_bound() const {
  const double bmax = std::max({b_[0].max(), b_[1].max(), 1e-12});
  const double amin = std::min(a_[0][0].min(), a_[1][1].min());
  return 10.0 * bmax / amin;
}

} // namespace speedlab
