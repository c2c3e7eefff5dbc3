#pragma once

#include <iosfwd>
#include <string>

#include "cmdnls/grid.hpp"

namespace cmdnls {

inline constexpr double kDefaultZMin = 1e-3;
inline constexpr double kSpectralTol = 1e-12;

// Evaluation point in the upper half-plane with an enforced floor on Im z.
class UpperHalfPoint {
 public:
  UpperHalfPoint(cplx z, double z_min = kDefaultZMin);
  cplx z() const { return z_; }
  operator cplx() const { return z_; }

 private:
  cplx z_;
};

// Szego projector: zero all k < 0 coefficients, keep k >= 0 (zero mode included).
Field szego_project(const Field& f);
// Complement (Id - Pi) f.
Field negative_part(const Field& f);
bool is_hardy(const Field& f, double tol = kSpectralTol);

// Multiplier -i sign(xi_k); annihilates the zero mode.
Field hilbert_transform(const Field& f);

// Holomorphic extension sum_{k>=0} c_k e^{i z xi_k}. Exact for the 2L-periodic
// function the coefficients describe; negative modes are ignored.
cplx poisson_eval(const Field& f, const UpperHalfPoint& z);

// Direct trapezoidal quadrature of the Poisson kernel over [-L, L): the
// line-function reading of the samples (decaying data), error O(L^-3) for a
// 1/x tail instead of the O(1/L) periodization error of poisson_eval.
cplx poisson_quadrature(const Field& f, const UpperHalfPoint& z);

// Pointwise product; dealias = exact 3/2 zero padding, otherwise aliased
// product on the N-point grid. The unpaired -N/2 mode is zeroed either way.
Field multiply(const Field& a, const Field& b, bool dealias = true);
Field conjugate(const Field& f);
Field real_part(const Field& f);
Field abs2_minus_one(const Field& u, bool dealias = true);
Field d_dx(const Field& f);
Field zero_unpaired_mode(Field f);

namespace detail {
// Band [-N/2+1, N/2-1] of f zero-padded to M > N points and transformed to
// samples (no grid-offset phase; only products are formed there).
CVec pad_to_samples(const Field& f, std::size_t M);
// Inverse of the above, truncated back to the band of g.
Field from_padded_samples(const GridSpec& g, const CVec& samples);
}  // namespace detail

// Bit-exact little-endian snapshot: "CMDN", u32 version, u64 N, f64 L, f64 t,
// then N (re, im) f64 sample pairs.
struct Snapshot {
  double t = 0.0;
  Field field;
  CVec samples;  // as stored, bit for bit
};
void write_snapshot(std::ostream& os, const Field& f, double t);
void write_snapshot(const std::string& path, const Field& f, double t);
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::string& path);

}  // namespace cmdnls
