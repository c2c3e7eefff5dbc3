#include "cmdnls/formula.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "cmdnls/krylov.hpp"
#include "cmdnls/ops.hpp"

namespace cmdnls {

FormulaWorkspace::FormulaWorkspace(const Field& u0, double t, const FormulaSettings& s, double eps)
    : u0_(u0),
      u0bar_(conjugate(u0)),
      w_(schrodinger_propagate(u0, eps * t)),
      t_(t),
      eps_(eps),
      s_(s),
      hl_(u0.grid(), s.nodes_per_cell) {
  if (!std::isfinite(t)) throw std::invalid_argument("formula: t must be finite");
  if (!(eps >= 0.0)) throw std::invalid_argument("formula: eps must be nonnegative");
}

void FormulaWorkspace::check(const Field& u0, double t) const {
  if (t != t_ || u0.grid() != u0_.grid() || u0.coeffs() != u0_.coeffs())
    throw std::invalid_argument("formula: workspace was built for a different (u0, t)");
}

namespace {

void require_floor(const FormulaWorkspace& ws, const UpperHalfPoint& z) {
  if (z.z().imag() < ws.settings().z_min)
    throw std::domain_error("formula: Im z below the configured floor");
}

// e^{i eps t d^2} acts on the Fourier side as e^{-i eps t eta^2}.
CVec apply_K(const FormulaWorkspace& ws, CVec h) {
  const auto& hl = ws.halfline();
  const double a = ws.eps() * ws.t();
  if (a != 0.0) hl.scale(h, [a](double e) { return std::exp(kI * (a * e * e)); });
  h = hl.toeplitz(ws.u0_bar(), h);
  h = hl.toeplitz(ws.u0(), h);
  if (a != 0.0) hl.scale(h, [a](double e) { return std::exp(-kI * (a * e * e)); });
  return h;
}

struct Solved {
  CVec x;
  int iterations = 0;
  double residual = 0.0;
};

Solved solve(const FormulaWorkspace& ws, const LinearMap& A, const CVec& b) {
  const auto& s = ws.settings();
  const std::size_t n = b.size();
  const bool dense = s.mode == SolveMode::dense || (s.mode == SolveMode::automatic && n <= s.dense_limit);
  if (norm2(b) == 0.0) return {CVec(n, cplx{}), 0, 0.0};
  if (!dense) {
    auto r = gmres(A, b, s.tol, s.restart, s.max_iter);
    if (!r.converged)
      throw FormulaError("near-singular formula operator: GMRES did not converge (residual " +
                         std::to_string(r.residual) + ")");
    return {std::move(r.x), r.iterations, r.residual};
  }
  Eigen::MatrixXcd M(n, n);
  CVec e(n, cplx{});
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const CVec col = A(e);
    for (std::size_t i = 0; i < n; ++i) M(i, j) = col[i];
    e[j] = 0.0;
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
  const double rc = lu.rcond();
  if (!(rc > 0.0) || 1.0 / rc > s.max_condition)
    throw FormulaError("near-singular formula operator: condition estimate " + std::to_string(1.0 / rc));
  Eigen::Map<const Eigen::VectorXcd> bv(b.data(), static_cast<Eigen::Index>(n));
  Eigen::VectorXcd xv = lu.solve(bv);
  CVec x(xv.data(), xv.data() + n);
  const CVec Ax = A(x);
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) r += std::norm(Ax[i] - b[i]);
  return {std::move(x), 0, std::sqrt(r) / norm2(b)};
}

}  // namespace

FormulaValue explicit_eval(const FormulaWorkspace& ws, const UpperHalfPoint& zp) {
  require_floor(ws, zp);
  const cplx z = zp.z();
  FormulaValue out;
  out.wz = poisson_eval(ws.w(), zp);
  out.u = out.wz;
  const double t = ws.t();
  if (t == 0.0) return out;
  const auto& hl = ws.halfline();
  const CVec g = hl.resolvent_periodic(ws.w(), z);
  const CVec Kg = apply_K(ws, g);
  LinearMap A = [&](const CVec& h) {
    CVec r = apply_K(ws, hl.resolvent(h, z));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = h[i] + 2.0 * t * r[i];
    return r;
  };
  const Solved s = solve(ws, A, Kg);
  out.hz = hl.eval(s.x, z);
  out.iterations = s.iterations;
  out.residual = s.residual;
  out.u = out.wz - 2.0 * t * out.hz;
  return out;
}

cplx explicit_eval(const Field& u0, double t, const UpperHalfPoint& z, const FormulaWorkspace& ws) {
  ws.check(u0, t);
  return explicit_eval(ws, z).u;
}

namespace {

cplx iplus_ladder(const FormulaWorkspace& ws, const CVec& y, cplx z, int r) {
  const auto& g = ws.u0().grid();
  const auto& s = ws.settings();
  const std::size_t n = g.N() / 2 * static_cast<std::size_t>(r);
  if (n > s.max_dense_ladder)
    throw FormulaError("I+ route: ladder of " + std::to_string(n) + " exceeds the dense memory guard");
  const double t = ws.t();
  Eigen::MatrixXcd A = g_matrix(g, r).matrix;
  const double sp = g.dxi() / r;
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    A(i, i) += 2.0 * ws.eps() * t * sp * static_cast<double>(k) - z;
  }
  const Eigen::MatrixXcd TT = toeplitz_matrix(ws.u0(), r).matrix * toeplitz_matrix(ws.u0_bar(), r).matrix;
  A += (2.0 * t) * TT;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const double rc = lu.rcond();
  if (!(rc > 0.0) || 1.0 / rc > s.max_condition)
    throw FormulaError("I+ route: near-singular ladder operator, condition estimate " + std::to_string(1.0 / rc));
  const CVec yl = ws.halfline().sub_cell_averages(y, r);
  Eigen::Map<const Eigen::VectorXcd> b(yl.data(), static_cast<Eigen::Index>(n));
  const Eigen::VectorXcd x = lu.solve(b);
  return x(0);
}

}  // namespace

FormulaValue explicit_eval_iplus(const FormulaWorkspace& ws, const UpperHalfPoint& zp) {
  require_floor(ws, zp);
  const cplx z = zp.z();
  FormulaValue out;
  out.wz = poisson_eval(ws.w(), zp);
  out.u = out.wz;
  const double t = ws.t();
  if (t == 0.0) return out;
  const auto& hl = ws.halfline();
  CVec y = hl.resolvent_periodic(ws.w(), z);
  const double a = ws.eps() * t;
  if (a != 0.0) hl.scale(y, [a](double e) { return std::exp(kI * (a * e * e)); });
  y = hl.toeplitz(ws.u0(), hl.toeplitz(ws.u0_bar(), y));
  if (norm2(y) == 0.0) return out;
  const auto& s = ws.settings();
  cplx ip = iplus_ladder(ws, y, z, s.refine);
  if (s.richardson && s.refine % 2 == 0) ip = 2.0 * ip - iplus_ladder(ws, y, z, s.refine / 2);
  out.u = out.wz - (t / (kI * kPi)) * ip;
  return out;
}

cplx explicit_eval_iplus(const Field& u0, double t, const UpperHalfPoint& z, const FormulaWorkspace& ws) {
  ws.check(u0, t);
  return explicit_eval_iplus(ws, z).u;
}

VValue v_eval(const FormulaWorkspace& ws, const UpperHalfPoint& z) {
  const FormulaValue f = explicit_eval(ws, z);
  return {f.u - poisson_eval(ws.w(), z), -2.0 * ws.t() * f.hz};
}

FormulaValue zd_eps_eval(const FormulaWorkspace& ws, const UpperHalfPoint& z) {
  if (!(ws.eps() > 0.0)) throw std::invalid_argument("zd_eps_eval: eps must be positive");
  return explicit_eval(ws, z);
}

cplx zd_eps_eval(const Field& u0, double t, const UpperHalfPoint& z, double eps, const FormulaSettings& s) {
  return zd_eps_eval(FormulaWorkspace(u0, t, s, eps), z).u;
}

LimitValue zd_limit_eval(const Field& u0, double t, const UpperHalfPoint& z, const FormulaSettings& s,
                         bool both_routes) {
  const FormulaWorkspace ws(u0, t, s, 0.0);
  LimitValue out;
  out.resolvent_route = explicit_eval(ws, z).u;
  out.iplus_route = both_routes ? explicit_eval_iplus(ws, z).u : out.resolvent_route;
  return out;
}

}  // namespace cmdnls
