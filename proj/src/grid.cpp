#include "cmdnls/grid.hpp"

#include <algorithm>
#include <cmath>

#include "cmdnls/fft.hpp"

namespace cmdnls {

GridSpec::GridSpec(double L, std::size_t N) : L_(L), N_(N) {
  if (!(L > 0.0) || !std::isfinite(L)) throw GridError("grid: half-length L must be positive");
  if (N < 8 || N % 2 != 0) throw GridError("grid: N must be even and at least 8");
}

GridSpec make_grid(double L, std::size_t N) { return GridSpec(L, N); }

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where) {
  if (a != b) throw GridError(std::string(where) + ": grid mismatch");
}

Field::Field(const GridSpec& g) : grid_(g), c_(g.N(), cplx{}) {}

Field::Field(const GridSpec& g, CVec coeffs) : grid_(g), c_(std::move(coeffs)) {
  if (c_.size() != g.N()) throw GridError("field: coefficient count does not match grid");
}

// x_j = -L + j dx gives c_k = (-1)^k fft(u)_k / N.
Field Field::from_samples(const GridSpec& g, const CVec& samples) {
  if (samples.size() != g.N()) throw GridError("field: sample count does not match grid");
  CVec c = fft::forward(samples);
  const double inv = 1.0 / static_cast<double>(g.N());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= (i % 2 ? -inv : inv);
  return Field(g, std::move(c));
}

Field Field::constant(const GridSpec& g, cplx c) {
  Field f(g);
  f.c_[0] = c;
  return f;
}

Field Field::mode(const GridSpec& g, long k, cplx amp) {
  const long h = static_cast<long>(g.N() / 2);
  if (k < -h || k >= h) throw GridError("field: wavenumber outside the ladder");
  Field f(g);
  f.coeff(k) = amp;
  return f;
}

CVec Field::samples() const {
  CVec c(c_);
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return fft::backward(c);
}

Field& Field::operator+=(const Field& o) {
  require_same_grid(grid_, o.grid_, "field +");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  require_same_grid(grid_, o.grid_, "field -");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Field& Field::operator*=(cplx s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx s, Field a) { return a *= s; }

cplx inner(const Field& f, const Field& g) {
  require_same_grid(f.grid(), g.grid(), "inner");
  cplx s{};
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) s += f.coeffs()[i] * std::conj(g.coeffs()[i]);
  return 2.0 * f.grid().L() * s;
}

double l2_norm(const Field& f) {
  double s = 0.0;
  for (const auto& c : f.coeffs()) s += std::norm(c);
  return std::sqrt(2.0 * f.grid().L() * s);
}

double sup_norm(const Field& f) {
  double m = 0.0;
  for (const auto& v : f.samples()) m = std::max(m, std::abs(v));
  return m;
}

double negative_part_max(const Field& f) {
  double m = 0.0;
  const auto& g = f.grid();
  for (std::size_t i = g.N() / 2; i < g.N(); ++i) m = std::max(m, std::abs(f.coeffs()[i]));
  return m;
}

double negative_part_norm(const Field& f) {
  double s = 0.0;
  const auto& g = f.grid();
  for (std::size_t i = g.N() / 2; i < g.N(); ++i) s += std::norm(f.coeffs()[i]);
  return std::sqrt(2.0 * g.L() * s);
}

}  // namespace cmdnls
