#include "cmdnls/krylov.hpp"

#include <cmath>
#include <stdexcept>

namespace cmdnls {

double norm2(const CVec& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

namespace {

cplx dot(const CVec& a, const CVec& b) {  // <a, b> = sum conj(a) b
  cplx s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

CVec residual(const LinearMap& A, const CVec& b, const CVec& x) {
  CVec r = A(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return r;
}

}  // namespace

KrylovResult gmres(const LinearMap& A, const CVec& b, double tol, int restart, int max_iter) {
  if (restart < 1 || max_iter < 1) throw std::invalid_argument("gmres: restart and max_iter must be positive");
  const std::size_t n = b.size();
  KrylovResult out{CVec(n, cplx{}), 0, 0.0, false};
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    out.converged = true;
    return out;
  }
  const int m = restart;
  std::vector<CVec> V(m + 1);
  std::vector<std::vector<cplx>> H(m + 1, std::vector<cplx>(m, cplx{}));
  std::vector<cplx> cs(m), sn(m), gvec(m + 1);

  CVec r = b;
  double beta = bnorm;
  while (out.iterations < max_iter) {
    for (auto& row : H) std::fill(row.begin(), row.end(), cplx{});
    std::fill(gvec.begin(), gvec.end(), cplx{});
    V[0] = r;
    for (auto& v : V[0]) v /= beta;
    gvec[0] = beta;
    int j = 0;
    for (; j < m && out.iterations < max_iter; ++j) {
      ++out.iterations;
      CVec w = A(V[j]);
      for (int i = 0; i <= j; ++i) {
        H[i][j] = dot(V[i], w);
        for (std::size_t k = 0; k < n; ++k) w[k] -= H[i][j] * V[i][k];
      }
      const double hn = norm2(w);
      H[j + 1][j] = hn;
      V[j + 1] = std::move(w);
      if (hn > 0.0)
        for (auto& v : V[j + 1]) v /= hn;
      for (int i = 0; i < j; ++i) {
        const cplx t = std::conj(cs[i]) * H[i][j] + std::conj(sn[i]) * H[i + 1][j];
        H[i + 1][j] = -sn[i] * H[i][j] + cs[i] * H[i + 1][j];
        H[i][j] = t;
      }
      const double a = std::abs(H[j][j]), bb = std::abs(H[j + 1][j]);
      const double rho = std::hypot(a, bb);
      if (rho == 0.0) {
        cs[j] = 1.0;
        sn[j] = 0.0;
      } else {
        cs[j] = H[j][j] / rho;
        sn[j] = H[j + 1][j] / rho;
      }
      H[j][j] = rho;
      H[j + 1][j] = 0.0;
      gvec[j + 1] = -sn[j] * gvec[j];
      gvec[j] = std::conj(cs[j]) * gvec[j];
      if (std::abs(gvec[j + 1]) <= tol * bnorm || hn == 0.0) {
        ++j;
        break;
      }
    }
    // back substitution on the j x j triangle
    std::vector<cplx> y(j);
    for (int i = j - 1; i >= 0; --i) {
      cplx s = gvec[i];
      for (int k = i + 1; k < j; ++k) s -= H[i][k] * y[k];
      y[i] = s / H[i][i];
    }
    for (int i = 0; i < j; ++i)
      for (std::size_t k = 0; k < n; ++k) out.x[k] += y[i] * V[i][k];
    r = residual(A, b, out.x);
    beta = norm2(r);
    out.residual = beta / bnorm;
    if (out.residual <= tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace cmdnls
