#include "cmdnls/ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cmdnls/halfline.hpp"

namespace cmdnls {

Field derivative_D(const Field& f) {
  Field out = f;
  const auto& g = f.grid();
  for (std::size_t i = 0; i < g.N(); ++i) out.coeffs()[i] *= g.xi(i);
  return out;
}

namespace {

Projected project(const Field& f) {
  return {szego_project(f), negative_part_norm(f)};
}

// u T_{conj u} g, re-projected; residual accumulated.
Field u_tu(const Field& u, const Field& ubar, const Field& g, bool dealias, double& res) {
  auto p = project(multiply(u, szego_project(multiply(ubar, g, dealias)), dealias));
  res += p.residual;
  return p.field;
}

}  // namespace

Projected toeplitz_apply(const Field& b, const Field& f, bool dealias) {
  require_same_grid(b.grid(), f.grid(), "toeplitz_apply");
  // The discarded negative part is the definition of T_b, not a defect.
  return {szego_project(multiply(b, f, dealias)), 0.0};
}

Projected lax_L_apply(const Field& u, const Field& f, bool dealias) {
  require_same_grid(u.grid(), f.grid(), "lax_L_apply");
  double res = 0.0;
  Field out = u_tu(u, conjugate(u), f, dealias, res);
  out += derivative_D(f);
  return {std::move(out), res};
}

Projected lax_B_apply(const Field& u, const Field& du, const Field& f, bool dealias) {
  require_same_grid(u.grid(), f.grid(), "lax_B_apply");
  require_same_grid(u.grid(), du.grid(), "lax_B_apply");
  const Field ubar = conjugate(u);
  double res = 0.0;
  auto t1 = project(multiply(u, szego_project(multiply(conjugate(du), f, dealias)), dealias));
  auto t2 = project(multiply(du, szego_project(multiply(ubar, f, dealias)), dealias));
  Field t3 = u_tu(u, ubar, u_tu(u, ubar, f, dealias, res), dealias, res);
  res += t1.residual + t2.residual;
  Field out = t2.field;
  out -= t1.field;
  out += kI * t3;
  return {std::move(out), res};
}

Field schrodinger_propagate(const Field& f, double t) {
  Field out = f;
  if (t == 0.0) return out;
  const auto& g = f.grid();
  for (std::size_t i = 0; i < g.N(); ++i) {
    const double xi = g.xi(i);
    out.coeffs()[i] *= std::exp(-kI * (t * xi * xi));
  }
  return out;
}

Quotient difference_quotient(const Field& w, const UpperHalfPoint& zp, std::optional<cplx> wz) {
  const auto& g = w.grid();
  const cplx z = zp.z();
  const cplx c0 = w.coeffs()[0];
  Field wt = w;
  wt.coeffs()[0] = 0.0;
  const cplx wtz = wz ? *wz - c0 : poisson_eval(wt, zp);
  const CVec s = wt.samples();
  CVec q(g.N());
  double defect = 0.0;
  for (std::size_t j = 0; j < g.N(); ++j) {
    const cplx d = g.x(j) - z;
    q[j] = (s[j] - wtz) / d;
    defect = std::max(defect, std::abs(d * q[j] + wtz - s[j]));
  }
  Field qf = Field::from_samples(g, q);
  return {szego_project(qf), negative_part_norm(qf), defect, wtz + c0};
}

Quotient g_resolvent(const Field& f, const UpperHalfPoint& z, std::optional<cplx> fz) {
  return difference_quotient(f, z, fz);
}

namespace {

// Least-squares fit of 2L c_k, k < m, on the Gibbs profiles of a function
// with a 1/x tail cut at +-L; returns the jump (= f^(0+)) coefficient.
cplx gibbs_fit(const Field& f, int m) {
  const double L = f.grid().L();
  constexpr int ncol = 5;
  Eigen::MatrixXd A(m, ncol);
  Eigen::VectorXcd y(m);
  for (int k = 0; k < m; ++k) {
    const double pk = kPi * k;
    const double si = sine_integral(pk);
    const double c2 = std::cos(pk) - pk * (0.5 * kPi - si);
    A(k, 0) = 0.5 + si / kPi;
    A(k, 1) = (kPi / L) * (k + c2 / (kPi * kPi));
    A(k, 2) = 0.5 * (pk / L) * (pk / L);
    A(k, 3) = (k % 2) ? -1.0 : 1.0;
    A(k, 4) = 0.5 - si / kPi;
    y(k) = 2.0 * L * f.coeffs()[static_cast<std::size_t>(k)];
  }
  const Eigen::MatrixXcd Ac = A.cast<cplx>();
  Eigen::VectorXcd sol = Ac.colPivHouseholderQr().solve(y);
  return sol(0);
}

}  // namespace

IPlus i_plus(const Field& f, int terms) {
  if (terms < 5) throw std::invalid_argument("i_plus: at least 5 coefficients are fitted");
  if (static_cast<std::size_t>(terms + 1) > f.grid().N() / 2)
    throw std::invalid_argument("i_plus: grid too small for the requested fit");
  const cplx a = gibbs_fit(f, terms);
  const cplx b = gibbs_fit(f, terms + 1);
  return {a, std::abs(a - b)};
}

cplx reproduce_at(const Field& f, const UpperHalfPoint& z, Extension ext) {
  if (ext == Extension::decaying) {
    auto q = g_resolvent(f, z);
    return i_plus(q.field).value / (2.0 * kPi * kI);
  }
  HalfLine hl(f.grid());
  const CVec r = hl.resolvent_periodic(f, z.z());
  return f.coeffs()[0] + hl.i_plus(r) / (2.0 * kPi * kI);
}

FreqOperator g_matrix(const GridSpec& g, int refine) {
  if (refine < 1) throw std::invalid_argument("g_matrix: refine must be >= 1");
  const Eigen::Index K = static_cast<Eigen::Index>(g.N() / 2) * refine;
  const double s = g.dxi() / refine;
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(K, K);
  for (Eigen::Index k = 0; k < K; ++k) {
    G(k, k) = -kI / s;
    if (k + 1 < K) G(k, k + 1) = kI / s;
  }
  return {g, refine, std::move(G)};
}

FreqOperator d_matrix(const GridSpec& g, int refine) {
  if (refine < 1) throw std::invalid_argument("d_matrix: refine must be >= 1");
  const Eigen::Index K = static_cast<Eigen::Index>(g.N() / 2) * refine;
  const double s = g.dxi() / refine;
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(K, K);
  for (Eigen::Index k = 0; k < K; ++k) D(k, k) = s * static_cast<double>(k);
  return {g, refine, std::move(D)};
}

FreqOperator toeplitz_matrix(const Field& b, int refine) {
  if (refine < 1) throw std::invalid_argument("toeplitz_matrix: refine must be >= 1");
  const auto& g = b.grid();
  const Eigen::Index K = static_cast<Eigen::Index>(g.N() / 2) * refine;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(K, K);
  for (std::size_t idx = 0; idx < g.N(); ++idx) {
    const cplx bm = b.coeffs()[idx];
    if (bm == cplx{}) continue;
    const Eigen::Index sh = static_cast<Eigen::Index>(g.k(idx)) * refine;
    for (Eigen::Index j = std::max<Eigen::Index>(0, sh); j < K && j - sh < K; ++j) S(j, j - sh) += bm;
  }
  return {g, refine, std::move(S)};
}

}  // namespace cmdnls
