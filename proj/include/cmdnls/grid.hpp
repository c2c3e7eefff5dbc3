#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmdnls {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr cplx kI{0.0, 1.0};

struct GridError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Torus [-L, L) with N equispaced samples, x_j = -L + j*dx.
class GridSpec {
 public:
  GridSpec(double L, std::size_t N);

  double L() const { return L_; }
  std::size_t N() const { return N_; }
  double dx() const { return 2.0 * L_ / static_cast<double>(N_); }
  double dxi() const { return kPi / L_; }

  double x(std::size_t j) const { return -L_ + static_cast<double>(j) * dx(); }

  // Signed wavenumber of storage slot idx (FFT order): 0..N/2-1, -N/2..-1.
  long k(std::size_t idx) const {
    return idx < N_ / 2 ? static_cast<long>(idx)
                        : static_cast<long>(idx) - static_cast<long>(N_);
  }
  std::size_t slot(long k) const {
    return static_cast<std::size_t>(k >= 0 ? k : k + static_cast<long>(N_));
  }
  double xi(std::size_t idx) const { return dxi() * static_cast<double>(k(idx)); }

  std::size_t hardy_size() const { return N_ / 2; }

  bool operator==(const GridSpec& o) const { return L_ == o.L_ && N_ == o.N_; }
  bool operator!=(const GridSpec& o) const { return !(*this == o); }

 private:
  double L_;
  std::size_t N_;
};

GridSpec make_grid(double L, std::size_t N);

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where);

// Sample vector with its spectral view u(x) = sum_k c_k e^{i xi_k x}.
// The coefficients are the stored representation (FFT order); samples are
// produced on demand.
class Field {
 public:
  explicit Field(const GridSpec& g);
  Field(const GridSpec& g, CVec coeffs);

  static Field from_samples(const GridSpec& g, const CVec& samples);
  static Field constant(const GridSpec& g, cplx c);
  static Field mode(const GridSpec& g, long k, cplx amp = 1.0);

  const GridSpec& grid() const { return grid_; }
  const CVec& coeffs() const { return c_; }
  CVec& coeffs() { return c_; }
  cplx coeff(long k) const { return c_[grid_.slot(k)]; }
  cplx& coeff(long k) { return c_[grid_.slot(k)]; }
  CVec samples() const;

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(cplx s);

 private:
  GridSpec grid_;
  CVec c_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx s, Field a);

// Discrete inner product <f, g> = sum_j f_j conj(g_j) dx = 2L sum_k c_k conj(d_k).
cplx inner(const Field& f, const Field& g);
double l2_norm(const Field& f);
double sup_norm(const Field& f);

// Maximum modulus of the k < 0 coefficients.
double negative_part_max(const Field& f);
double negative_part_norm(const Field& f);

}  // namespace cmdnls
