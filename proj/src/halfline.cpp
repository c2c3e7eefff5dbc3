#include "cmdnls/halfline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <boost/math/special_functions/sinc.hpp>

namespace cmdnls {

double sine_integral(double x) {
  if (x == 0.0) return 0.0;
  auto f = [](double t) { return boost::math::sinc_pi(t); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, x, 15, 1e-15);
}

namespace {

double legendre(int n, double t) { return boost::math::legendre_p(n, t); }

// int_t^1 P_n(s) ds
double legendre_tail(int n, double t) {
  if (n == 0) return 1.0 - t;
  return -(legendre(n + 1, t) - legendre(n - 1, t)) / (2.0 * n + 1.0);
}

}  // namespace

HalfLine::HalfLine(const GridSpec& g, std::size_t nodes, std::size_t cells)
    : grid_(g), p_(nodes), cells_(cells ? cells : g.N() / 2), d_(g.dxi()) {
  if (p_ < 2 || p_ > 32) throw std::invalid_argument("halfline: nodes per cell must be in [2, 32]");
  const int p = static_cast<int>(p_);
  auto zeros = boost::math::legendre_p_zeros<double>(p);
  for (double z : zeros) {
    t_.push_back(z);
    if (z != 0.0) t_.push_back(-z);
  }
  std::sort(t_.begin(), t_.end());
  for (double t : t_) {
    const double dp = boost::math::legendre_p_prime(p, t);
    w_.push_back(2.0 / ((1.0 - t * t) * dp * dp));
  }

  Eigen::MatrixXd V(p, p);
  for (int q = 0; q < p; ++q)
    for (int n = 0; n < p; ++n) V(q, n) = legendre(n, t_[q]);
  const Eigen::MatrixXd Vi = V.inverse();  // l_r(t) = sum_n Vi(n, r) P_n(t)

  wint_.assign(p_ * p_, 0.0);
  for (int q = 0; q < p; ++q)
    for (int r = 0; r < p; ++r) {
      double s = 0.0;
      for (int n = 0; n < p; ++n) s += Vi(n, r) * legendre_tail(n, t_[q]);
      wint_[q * p + r] = s;
    }
  ext_.assign(p_, 0.0);
  for (int r = 0; r < p; ++r) {
    double s = 0.0;
    for (int n = 0; n < p; ++n) s += Vi(n, r) * (n % 2 ? -1.0 : 1.0);
    ext_[r] = s;
  }

  eta_.resize(size());
  for (std::size_t j = 0; j < cells_; ++j)
    for (std::size_t q = 0; q < p_; ++q)
      eta_[j * p_ + q] = (static_cast<double>(j) + 0.5 * (t_[q] + 1.0)) * d_;
}

CVec HalfLine::resolvent_periodic(const Field& f, cplx z) const {
  require_same_grid(grid_, f.grid(), "halfline resolvent");
  const std::size_t K = grid_.N() / 2;
  auto c = [&](std::size_t k) { return k < K ? f.coeffs()[k] : cplx{}; };
  const cplx e = std::exp(kI * z * d_);
  CVec T(cells_ + 1, cplx{});
  for (std::size_t j = cells_; j-- > 0;) T[j] = e * (c(j + 1) + T[j + 1]);
  CVec out(size());
  for (std::size_t j = 0; j < cells_; ++j) {
    const double a = static_cast<double>(j) * d_;
    for (std::size_t q = 0; q < p_; ++q)
      out[j * p_ + q] = 2.0 * kPi * kI * std::exp(kI * z * (a - eta_[j * p_ + q])) * T[j];
  }
  return out;
}

CVec HalfLine::resolvent(const CVec& h, cplx z) const {
  if (h.size() != size()) throw std::invalid_argument("halfline: size mismatch");
  const double half = 0.5 * d_;
  CVec part(size()), cellint(cells_);
  std::vector<cplx> F(p_), ph(p_);
  for (std::size_t q = 0; q < p_; ++q) ph[q] = std::exp(kI * z * (half * (t_[q] + 1.0)));
  for (std::size_t j = 0; j < cells_; ++j) {
    cplx ci{};
    for (std::size_t r = 0; r < p_; ++r) {
      F[r] = ph[r] * h[j * p_ + r];
      ci += w_[r] * F[r];
    }
    cellint[j] = ci * half;
    for (std::size_t q = 0; q < p_; ++q) {
      cplx s{};
      for (std::size_t r = 0; r < p_; ++r) s += wint_[q * p_ + r] * F[r];
      part[j * p_ + q] = s * half;
    }
  }
  const cplx e = std::exp(kI * z * d_);
  CVec out(size());
  cplx Q{};  // Q_{j+1}
  for (std::size_t j = cells_; j-- > 0;) {
    for (std::size_t q = 0; q < p_; ++q) {
      // e^{iz(a - eta)} = 1 / ph[q]
      const cplx back = 1.0 / ph[q];
      out[j * p_ + q] = kI * back * (part[j * p_ + q] + e * Q);
    }
    Q = cellint[j] + e * Q;
  }
  return out;
}

CVec HalfLine::toeplitz(const Field& b, const CVec& h, double drop) const {
  require_same_grid(grid_, b.grid(), "halfline toeplitz");
  const auto& c = b.coeffs();
  double mx = 0.0;
  for (const auto& v : c) mx = std::max(mx, std::abs(v));
  CVec out(size(), cplx{});
  if (mx == 0.0) return out;
  const long M = static_cast<long>(cells_);
  for (std::size_t idx = 0; idx < c.size(); ++idx) {
    const cplx bm = c[idx];
    if (std::abs(bm) <= drop * mx) continue;
    const long m = grid_.k(idx);
    const long j0 = std::max(0L, m), j1 = std::min(M, M + m);
    if (j0 >= j1) continue;
    cplx* dst = out.data() + j0 * static_cast<long>(p_);
    const cplx* src = h.data() + (j0 - m) * static_cast<long>(p_);
    const std::size_t n = static_cast<std::size_t>(j1 - j0) * p_;
    for (std::size_t i = 0; i < n; ++i) dst[i] += bm * src[i];
  }
  return out;
}

void HalfLine::scale(CVec& h, const std::function<cplx(double)>& mult) const {
  for (std::size_t i = 0; i < size(); ++i) h[i] *= mult(eta_[i]);
}

cplx HalfLine::eval(const CVec& h, cplx z) const {
  cplx s{};
  for (std::size_t j = 0; j < cells_; ++j)
    for (std::size_t q = 0; q < p_; ++q) {
      const std::size_t i = j * p_ + q;
      if (h[i] != cplx{}) s += w_[q] * std::exp(kI * z * eta_[i]) * h[i];
    }
  return s * (0.5 * d_) / (2.0 * kPi);
}

cplx HalfLine::i_plus(const CVec& h) const {
  cplx s{};
  for (std::size_t r = 0; r < p_; ++r) s += ext_[r] * h[r];
  return s;
}

CVec HalfLine::sub_cell_averages(const CVec& h, int r) const {
  if (r < 1) throw std::invalid_argument("halfline: refinement must be >= 1");
  const int p = static_cast<int>(p_);
  Eigen::MatrixXd V(p, p);
  for (int q = 0; q < p; ++q)
    for (int n = 0; n < p; ++n) V(q, n) = legendre(n, t_[q]);
  const Eigen::MatrixXd Vi = V.inverse();
  // A(s, r') = average over sub-cell s of l_{r'}
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(r, p);
  for (int s = 0; s < r; ++s) {
    const double lo = -1.0 + 2.0 * s / r, hi = -1.0 + 2.0 * (s + 1) / r;
    for (int i = 0; i < p; ++i) {
      const double x = lo + 0.5 * (t_[i] + 1.0) * (hi - lo);
      for (int rr = 0; rr < p; ++rr) {
        double l = 0.0;
        for (int n = 0; n < p; ++n) l += Vi(n, rr) * legendre(n, x);
        A(s, rr) += 0.5 * w_[i] * l;
      }
    }
  }
  CVec out(cells_ * static_cast<std::size_t>(r));
  for (std::size_t j = 0; j < cells_; ++j)
    for (int s = 0; s < r; ++s) {
      cplx v{};
      for (int rr = 0; rr < p; ++rr) v += A(s, rr) * h[j * p_ + rr];
      out[j * r + s] = v;
    }
  return out;
}

}  // namespace cmdnls
