#include "cmdnls/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cmdnls/hardy.hpp"

namespace cmdnls {

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("solver: dt must be positive");
  if (!std::isfinite(t_final)) throw std::invalid_argument("solver: t_final must be finite");
  if (snapshot_stride < 1) throw std::invalid_argument("solver: snapshot_stride must be >= 1");
  if (!(leak_tol > 0.0)) throw std::invalid_argument("solver: leak_tol must be positive");
}

const Field& Trajectory::at(double t, double tol) const {
  for (const auto& s : snapshots)
    if (std::abs(s.t - t) <= tol) return s.field;
  std::ostringstream os;
  os << "trajectory: no snapshot at t = " << t;
  throw std::out_of_range(os.str());
}

bool Trajectory::has(double t, double tol) const {
  for (const auto& s : snapshots)
    if (std::abs(s.t - t) <= tol) return true;
  return false;
}

Field nonlinearity(const Field& u, bool dealias) {
  const auto& g = u.grid();
  if (!dealias) {
    Field q = szego_project(real_part(multiply(conjugate(u), d_dx(u), false)));
    Field out = multiply(u, q, false);
    out *= -4.0;
    return out;
  }
  // Fused padded evaluation: 5 transforms of length 3N/2, same coefficients
  // as composing multiply/real_part/szego_project.
  const std::size_t M = 3 * g.N() / 2;
  const CVec U = detail::pad_to_samples(u, M);
  const CVec Ux = detail::pad_to_samples(d_dx(u), M);
  CVec s(M);
  for (std::size_t j = 0; j < M; ++j) s[j] = (std::conj(U[j]) * Ux[j]).real();
  Field q = szego_project(detail::from_padded_samples(g, s));
  CVec P = detail::pad_to_samples(q, M);
  for (std::size_t j = 0; j < M; ++j) P[j] *= U[j];
  Field out = detail::from_padded_samples(g, P);
  out *= -4.0;
  return out;
}

Field rhs(const Field& u, bool dealias) {
  Field out = nonlinearity(u, dealias);
  const auto& g = u.grid();
  for (std::size_t i = 0; i < g.N(); ++i) {
    const double xi = g.xi(i);
    out.coeffs()[i] -= kI * (xi * xi) * u.coeffs()[i];
  }
  return zero_unpaired_mode(std::move(out));
}

namespace {

bool finite(const Field& f) {
  for (const auto& c : f.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

struct Stepper {
  GridSpec g;
  double dt;
  bool dealias;
  CVec E, Eh;

  Stepper(const GridSpec& grid, double h, bool d) : g(grid), dt(h), dealias(d), E(grid.N()), Eh(grid.N()) {
    for (std::size_t i = 0; i < g.N(); ++i) {
      const double xi = g.xi(i);
      E[i] = std::exp(-kI * (xi * xi * dt));
      Eh[i] = std::exp(-kI * (xi * xi * dt * 0.5));
    }
  }

  // Returns the new state; k1 (the nonlinearity at u) is exposed for the
  // rhs-norm diagnostic.
  Field operator()(const Field& u, Field* k1_out = nullptr) const {
    const std::size_t N = g.N();
    const CVec& c = u.coeffs();
    Field k1 = nonlinearity(u, dealias);
    Field a(g);
    for (std::size_t i = 0; i < N; ++i) a.coeffs()[i] = Eh[i] * (c[i] + 0.5 * dt * k1.coeffs()[i]);
    Field k2 = nonlinearity(a, dealias);
    for (std::size_t i = 0; i < N; ++i) a.coeffs()[i] = Eh[i] * c[i] + 0.5 * dt * k2.coeffs()[i];
    Field k3 = nonlinearity(a, dealias);
    for (std::size_t i = 0; i < N; ++i) a.coeffs()[i] = E[i] * c[i] + dt * Eh[i] * k3.coeffs()[i];
    Field k4 = nonlinearity(a, dealias);
    Field out(g);
    for (std::size_t i = 0; i < N; ++i)
      out.coeffs()[i] = E[i] * c[i] + (dt / 6.0) * (E[i] * k1.coeffs()[i] +
                                                    2.0 * Eh[i] * (k2.coeffs()[i] + k3.coeffs()[i]) +
                                                    k4.coeffs()[i]);
    out = zero_unpaired_mode(std::move(out));
    if (k1_out) *k1_out = std::move(k1);
    return out;
  }
};

double relative_leak(const Field& u) {
  const double n = l2_norm(u);
  return n > 0.0 ? negative_part_norm(u) / n : 0.0;
}

}  // namespace

Field step(const Field& u, double dt, bool dealias) {
  if (dt == 0.0) return u;
  Field out = Stepper(u.grid(), dt, dealias)(u);
  if (!finite(out)) throw InstabilityError("blow-up or instability in step", 0.0, u);
  return out;
}

Trajectory evolve(const Field& u0, const SolverConfig& cfg) {
  cfg.validate();
  const auto& g = u0.grid();
  const double T = std::abs(cfg.t_final);
  const double sgn = cfg.t_final < 0.0 ? -1.0 : 1.0;
  const double tol = 1e-9 * std::max(1.0, T);

  long n = static_cast<long>(std::floor(T / cfg.dt + 1e-9));
  double last = T - static_cast<double>(n) * cfg.dt;
  if (last <= tol) last = 0.0;
  const long nsteps = n + (last > 0.0 ? 1 : 0);

  std::vector<long> extra;
  for (double ts : cfg.snapshot_times) {
    const double k = std::abs(ts) / cfg.dt;
    const long kr = std::lround(k);
    if (ts * sgn < -tol || std::abs(k - static_cast<double>(kr)) > 1e-6 || kr > n)
      throw std::invalid_argument("solver: snapshot time is not a whole number of steps inside the run");
    extra.push_back(kr);
  }
  auto wanted = [&](long k) {
    if (k % cfg.snapshot_stride == 0 || k == nsteps) return true;
    for (long e : extra)
      if (e == k) return true;
    return false;
  };
  auto time_of = [&](long k) { return k == nsteps ? cfg.t_final : sgn * static_cast<double>(k) * cfg.dt; };

  Trajectory tr{g, is_hardy(u0), {}, {}};
  tr.snapshots.push_back({0.0, u0});
  const Stepper full(g, sgn * cfg.dt, cfg.dealias);

  Field u = u0;
  for (long k = 0; k < nsteps; ++k) {
    const double tk = time_of(k);
    Field k1(g);
    Field next = (k == n) ? Stepper(g, sgn * last, cfg.dealias)(u, &k1) : full(u, &k1);
    for (std::size_t i = 0; i < g.N(); ++i) {
      const double xi = g.xi(i);
      k1.coeffs()[i] -= kI * (xi * xi) * u.coeffs()[i];
    }
    tr.steps.push_back({tk, l2_norm(k1), relative_leak(u)});
    if (!finite(next)) throw InstabilityError("blow-up or instability at t = " + std::to_string(tk), tk, u);
    u = std::move(next);
    if (tr.hardy) {
      const double leak = relative_leak(u);
      if (leak > cfg.leak_tol)
        throw ChiralityLeakError("chirality leak " + std::to_string(leak) + " exceeds tolerance at t = " +
                                 std::to_string(time_of(k + 1)));
    }
    if (wanted(k + 1)) tr.snapshots.push_back({time_of(k + 1), u});
  }
  return tr;
}

}  // namespace cmdnls
