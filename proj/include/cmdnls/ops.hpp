#pragma once

#include <optional>

#include <Eigen/Dense>

#include "cmdnls/grid.hpp"
#include "cmdnls/hardy.hpp"

namespace cmdnls {

// D = (1/i) d/dx: coefficients times xi_k.
Field derivative_D(const Field& f);

// Field together with the norm removed when re-projecting products that are
// Hardy in the continuum (aliasing/truncation defect). T_b itself reports 0:
// there the projection is the definition.
struct Projected {
  Field field;
  double residual = 0.0;
};

// T_b f = Pi(b f).
Projected toeplitz_apply(const Field& b, const Field& f, bool dealias = true);
// L_u f = D f + Pi(u Pi(conj(u) f)).
Projected lax_L_apply(const Field& u, const Field& f, bool dealias = true);
// B_u f = -u T_{conj(du)} f + du T_{conj(u)} f + i (u T_{conj(u)})^2 f, du = u_x.
Projected lax_B_apply(const Field& u, const Field& du, const Field& f, bool dealias = true);

// e^{i t d_x^2}: coefficients times e^{-i t xi_k^2}.
Field schrodinger_propagate(const Field& f, double t);

// Sample-space difference quotient (w(x_j) - w(z)) / (x_j - z), projected.
// The zero-mode background cancels exactly and is never evaluated; w(z) is
// poisson_eval unless supplied. `pointwise_defect` reports
// max_j |(x_j - z) q_j + w(z) - w_j| before projection.
struct Quotient {
  Field field;
  double residual = 0.0;
  double pointwise_defect = 0.0;
  cplx wz{};
};
Quotient difference_quotient(const Field& w, const UpperHalfPoint& z,
                             std::optional<cplx> wz = std::nullopt);
// (G - z)^{-1} f in its closed difference-quotient form.
Quotient g_resolvent(const Field& f, const UpperHalfPoint& z,
                     std::optional<cplx> fz = std::nullopt);

// I_+(f) = f^(0+) for samples of a decaying line function. The torus
// coefficients of the restriction to [-L, L) carry a Gibbs signature from the
// cut 1/x tail; 2L c_k for k < m is fitted on the jump, slope, curvature,
// endpoint-sample and opposite-jump profiles and the jump coefficient returned.
// `spread` is the change when one more coefficient enters the fit.
struct IPlus {
  cplx value{};
  double spread = 0.0;
};
IPlus i_plus(const Field& f, int terms = 5);

// How the samples of a Field are read as a function on the line.
enum class Extension {
  periodic,  // the 2L-periodic function defined by the coefficients
  decaying,  // the line function whose restriction to [-L, L) was sampled
};

// f(z) = (1/2 pi i) I_+((G - z)^{-1} f).
cplx reproduce_at(const Field& f, const UpperHalfPoint& z, Extension ext);

// Dense operator on the Hardy ladder c_0 ... c_{K-1}, spacing dxi / refine.
struct FreqOperator {
  GridSpec grid;
  int refine = 1;
  Eigen::MatrixXcd matrix;
  std::size_t size() const { return static_cast<std::size_t>(matrix.rows()); }
  double spacing() const { return grid.dxi() / refine; }
};

// G_h: (G_h c)_k = i (c_{k+1} - c_k) / spacing with c_K = 0.
FreqOperator g_matrix(const GridSpec& g, int refine = 1);
FreqOperator d_matrix(const GridSpec& g, int refine = 1);
// Multiplication by the torus symbol b followed by truncation to the ladder.
FreqOperator toeplitz_matrix(const Field& b, int refine = 1);

}  // namespace cmdnls
