#include "cmdnls/hardy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <type_traits>

#include "cmdnls/fft.hpp"

namespace cmdnls {

UpperHalfPoint::UpperHalfPoint(cplx z, double z_min) : z_(z) {
  if (!(z.imag() >= z_min) || !std::isfinite(z.real()))
    throw std::domain_error("evaluation point must satisfy Im z >= z_min (" +
                            std::to_string(z_min) + ")");
}

Field szego_project(const Field& f) {
  Field out = f;
  const auto& g = f.grid();
  for (std::size_t i = g.N() / 2; i < g.N(); ++i) out.coeffs()[i] = 0.0;
  return out;
}

Field negative_part(const Field& f) {
  Field out = f;
  const auto& g = f.grid();
  for (std::size_t i = 0; i < g.N() / 2; ++i) out.coeffs()[i] = 0.0;
  return out;
}

bool is_hardy(const Field& f, double tol) { return negative_part_max(f) <= tol; }

Field hilbert_transform(const Field& f) {
  Field out = f;
  const auto& g = f.grid();
  auto& c = out.coeffs();
  c[0] = 0.0;
  for (std::size_t i = 1; i < g.N(); ++i) c[i] *= (g.k(i) > 0 ? -kI : kI);
  return out;
}

cplx poisson_eval(const Field& f, const UpperHalfPoint& zp) {
  const cplx z = zp.z();
  const auto& g = f.grid();
  const auto& c = f.coeffs();
  cplx s{};
  for (std::size_t k = g.N() / 2; k-- > 0;)
    if (c[k] != cplx{}) s += c[k] * std::exp(kI * z * g.xi(k));
  return s;
}

cplx poisson_quadrature(const Field& f, const UpperHalfPoint& zp) {
  const cplx z = zp.z();
  const auto& g = f.grid();
  const CVec u = f.samples();
  const double y = z.imag();
  cplx s{};
  for (std::size_t j = 0; j < g.N(); ++j) {
    const double d = g.x(j) - z.real();
    s += u[j] * (y / (kPi * (d * d + y * y)));
  }
  return s * g.dx();
}

namespace detail {

CVec pad_to_samples(const Field& f, std::size_t M) {
  const std::size_t N = f.grid().N(), h = N / 2;
  const auto& c = f.coeffs();
  CVec p(M, cplx{});
  for (std::size_t i = 0; i < h; ++i) p[i] = c[i];
  for (std::size_t i = h + 1; i < N; ++i) p[M - N + i] = c[i];
  CVec s(M);
  fft::backward(p.data(), s.data(), M);
  return s;
}

Field from_padded_samples(const GridSpec& g, const CVec& s) {
  const std::size_t N = g.N(), h = N / 2, M = s.size();
  CVec p(M);
  fft::forward(s.data(), p.data(), M);
  const double inv = 1.0 / static_cast<double>(M);
  Field out(g);
  auto& c = out.coeffs();
  for (std::size_t i = 0; i < h; ++i) c[i] = p[i] * inv;
  for (std::size_t i = h + 1; i < N; ++i) c[i] = p[M - N + i] * inv;
  return out;
}

}  // namespace detail

using detail::from_padded_samples;
using detail::pad_to_samples;

Field multiply(const Field& a, const Field& b, bool dealias) {
  require_same_grid(a.grid(), b.grid(), "multiply");
  const auto& g = a.grid();
  if (!dealias) {
    CVec sa = a.samples();
    const CVec sb = b.samples();
    for (std::size_t j = 0; j < sa.size(); ++j) sa[j] *= sb[j];
    return zero_unpaired_mode(Field::from_samples(g, sa));
  }
  const std::size_t M = 3 * g.N() / 2;
  CVec sa = pad_to_samples(a, M);
  const CVec sb = pad_to_samples(b, M);
  for (std::size_t j = 0; j < M; ++j) sa[j] *= sb[j];
  return from_padded_samples(g, sa);
}

// Coefficients of conj(u) are conj(c_{-k}).
Field conjugate(const Field& f) {
  const auto& g = f.grid();
  const std::size_t N = g.N();
  Field out(g);
  const auto& c = f.coeffs();
  auto& d = out.coeffs();
  for (std::size_t i = 0; i < N; ++i) d[i] = std::conj(c[(N - i) % N]);
  return out;
}

Field real_part(const Field& f) {
  Field out = f;
  out += conjugate(f);
  out *= 0.5;
  return out;
}

Field abs2_minus_one(const Field& u, bool dealias) {
  Field q = real_part(multiply(conjugate(u), u, dealias));
  q.coeffs()[0] -= 1.0;
  return q;
}

Field d_dx(const Field& f) {
  Field out = f;
  const auto& g = f.grid();
  for (std::size_t i = 0; i < g.N(); ++i) out.coeffs()[i] *= kI * g.xi(i);
  return out;
}

Field zero_unpaired_mode(Field f) {
  f.coeffs()[f.grid().N() / 2] = 0.0;
  return f;
}

namespace {

template <class T>
void put_le(std::ostream& os, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
  unsigned char b[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(T)))
    throw std::runtime_error("snapshot: truncated input");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

}  // namespace

void write_snapshot(std::ostream& os, const Field& f, double t) {
  os.write("CMDN", 4);
  put_le<std::uint32_t>(os, 1);
  put_le<std::uint64_t>(os, f.grid().N());
  put_le<double>(os, f.grid().L());
  put_le<double>(os, t);
  for (const auto& v : f.samples()) {
    put_le<double>(os, v.real());
    put_le<double>(os, v.imag());
  }
  if (!os) throw std::runtime_error("snapshot: write failed");
}

void write_snapshot(const std::string& path, const Field& f, double t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("snapshot: cannot open " + path);
  write_snapshot(os, f, t);
}

Snapshot read_snapshot(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "CMDN", 4) != 0)
    throw std::runtime_error("snapshot: bad magic");
  const auto version = get_le<std::uint32_t>(is);
  if (version != 1) throw std::runtime_error("snapshot: unsupported version");
  const auto N = get_le<std::uint64_t>(is);
  const double L = get_le<double>(is);
  const double t = get_le<double>(is);
  GridSpec g(L, static_cast<std::size_t>(N));
  CVec s(g.N());
  for (auto& v : s) {
    const double re = get_le<double>(is);
    const double im = get_le<double>(is);
    v = {re, im};
  }
  Field f = Field::from_samples(g, s);
  return Snapshot{t, std::move(f), std::move(s)};
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open " + path);
  return read_snapshot(is);
}

}  // namespace cmdnls
