#pragma once

#include <stdexcept>

#include "cmdnls/grid.hpp"
#include "cmdnls/halfline.hpp"
#include "cmdnls/hardy.hpp"

namespace cmdnls {

enum class SolveMode { automatic, dense, iterative };

struct FormulaSettings {
  SolveMode mode = SolveMode::automatic;
  double tol = 1e-10;
  int max_iter = 2000;
  int restart = 60;
  // automatic mode assembles the operator densely up to this many unknowns
  std::size_t dense_limit = 512;
  double max_condition = 1e12;
  std::size_t nodes_per_cell = 8;
  // I_+ route: frequency-ladder refinement and whether to Richardson-combine
  // it with the half-refined ladder (G_h is first order in the spacing).
  int refine = 2;
  bool richardson = true;
  std::size_t max_dense_ladder = 4096;
  double z_min = kDefaultZMin;
};

struct FormulaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FormulaValue {
  cplx u{};
  cplx wz{};   // e^{i eps t d^2} u0 at z
  cplx hz{};   // h(z) of the resolvent route (0 for the I_+ route)
  int iterations = 0;
  double residual = 0.0;
};

// Cached data for one (u0, t, eps): the propagated datum, the conjugate
// symbol and the half-line grid. Immutable; evaluations at different z may
// share it across threads.
class FormulaWorkspace {
 public:
  FormulaWorkspace(const Field& u0, double t, const FormulaSettings& s = {}, double eps = 1.0);

  const Field& u0() const { return u0_; }
  const Field& u0_bar() const { return u0bar_; }
  const Field& w() const { return w_; }
  double t() const { return t_; }
  double eps() const { return eps_; }
  const FormulaSettings& settings() const { return s_; }
  const HalfLine& halfline() const { return hl_; }

  void check(const Field& u0, double t) const;

 private:
  Field u0_, u0bar_, w_;
  double t_, eps_;
  FormulaSettings s_;
  HalfLine hl_;
};

// u(t, z) = w(z) - 2t h(z), (Id + 2t K R_z) h = K g.
FormulaValue explicit_eval(const FormulaWorkspace& ws, const UpperHalfPoint& z);
cplx explicit_eval(const Field& u0, double t, const UpperHalfPoint& z, const FormulaWorkspace& ws);

// u(t, z) = w(z) - (t / i pi) I_+[(G_h + 2 eps t D + 2t T_u T_ubar - z)^{-1} y].
FormulaValue explicit_eval_iplus(const FormulaWorkspace& ws, const UpperHalfPoint& z);
cplx explicit_eval_iplus(const Field& u0, double t, const UpperHalfPoint& z, const FormulaWorkspace& ws);

struct VValue {
  cplx difference{};  // explicit_eval - poisson_eval(w, z)
  cplx direct{};      // -2t h(z)
};
VValue v_eval(const FormulaWorkspace& ws, const UpperHalfPoint& z);

// eps-dispersion family; ws must have been built with the same eps.
FormulaValue zd_eps_eval(const FormulaWorkspace& ws, const UpperHalfPoint& z);
cplx zd_eps_eval(const Field& u0, double t, const UpperHalfPoint& z, double eps, const FormulaSettings& s = {});

struct LimitValue {
  cplx resolvent_route{};
  cplx iplus_route{};
};
LimitValue zd_limit_eval(const Field& u0, double t, const UpperHalfPoint& z, const FormulaSettings& s = {},
                         bool both_routes = true);

}  // namespace cmdnls
