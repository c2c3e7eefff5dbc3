#pragma once

#include <functional>
#include <vector>

#include "cmdnls/grid.hpp"

namespace cmdnls {

// Fourier-side representation of L^2_+ functions on the line:
// h^(eta) sampled on [0, cells * dxi) at `nodes` Gauss-Legendre points per
// cell, the cells aligned with the torus ladder xi_k = k dxi. Coefficient
// vectors are cell-major (index cell * nodes + node).
//
// The resolvent of a 2L-periodic Hardy function and Toeplitz operators with
// torus symbols act exactly on this grid (cell shifts); the resolvent of a
// general element is a running integral done with per-cell integration
// matrices. This is what lets the explicit formula be evaluated for
// periodized data without the O(1/L) wrap-around of the 1/(x - z) tail.
class HalfLine {
 public:
  explicit HalfLine(const GridSpec& g, std::size_t nodes = 8, std::size_t cells = 0);

  const GridSpec& grid() const { return grid_; }
  std::size_t cells() const { return cells_; }
  std::size_t nodes() const { return p_; }
  std::size_t size() const { return cells_ * p_; }
  double width() const { return d_; }
  double eta(std::size_t j, std::size_t q) const { return eta_[j * p_ + q]; }
  const std::vector<double>& etas() const { return eta_; }

  // Transform of (f - f(z)) / (x - z) for the periodic function with
  // coefficients c_k, k >= 0; the zero mode drops out.
  CVec resolvent_periodic(const Field& f, cplx z) const;
  // (R_z h)^(eta) = i int_eta^inf e^{i z (s - eta)} h^(s) ds.
  CVec resolvent(const CVec& h, cplx z) const;
  // Pi(b h) for a torus symbol b: (T_b h)(eta) = sum_m b_m h(eta - xi_m).
  // Symbol coefficients below `drop * max|b_m|` are skipped.
  CVec toeplitz(const Field& b, const CVec& h, double drop = 1e-17) const;
  void scale(CVec& h, const std::function<cplx(double)>& mult) const;

  // h(z) = (1/2 pi) int_0^inf e^{i z eta} h^(eta) d eta.
  cplx eval(const CVec& h, cplx z) const;
  // h^(0+) by extrapolating the first cell's interpolant.
  cplx i_plus(const CVec& h) const;
  // Averages of h^ over `r` equal sub-cells of every cell (length cells * r).
  CVec sub_cell_averages(const CVec& h, int r) const;

 private:
  GridSpec grid_;
  std::size_t p_, cells_;
  double d_;
  std::vector<double> t_, w_, eta_;
  std::vector<double> wint_;  // p x p: int_{t_q}^{1} l_r(t) dt
  std::vector<double> ext_;   // l_r(-1)
};

double sine_integral(double x);

}  // namespace cmdnls
