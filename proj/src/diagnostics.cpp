#include "cmdnls/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "cmdnls/hardy.hpp"
#include "cmdnls/ops.hpp"

namespace cmdnls {

double mass_defect(const Field& u) { return l2_norm(abs2_minus_one(u)); }

double i1(const Field& u) {
  Field r = multiply(u, szego_project(abs2_minus_one(u)));
  r += derivative_D(u);
  return l2_norm(r);
}

double i2(const Field& u) {
  const Field q = abs2_minus_one(u);
  const Field Pq = szego_project(q);
  const Field ubar = conjugate(u);
  const Field Du = derivative_D(u);
  const Field uPq = multiply(u, Pq);
  Field r = derivative_D(Du);
  r += multiply(u, szego_project(multiply(ubar, Du)));
  r += derivative_D(uPq);
  r += Du;
  r += multiply(u, szego_project(multiply(real_part(multiply(ubar, u)), Pq)));
  r += uPq;
  return l2_norm(r);
}

double x2_norm(const Field& u) {
  const Field d1 = d_dx(u);
  return sup_norm(u) + l2_norm(d1) + l2_norm(d_dx(d1));
}

double chirality_leak(const Field& u) {
  const double n = l2_norm(u);
  return n > 0.0 ? negative_part_norm(u) / n : 0.0;
}

InvariantReport invariant_report(const Field& u, double t) {
  InvariantReport r;
  r.t = t;
  r.i1 = i1(u);
  r.i2 = i2(u);
  r.mass_defect = mass_defect(u);
  r.x2_norm = x2_norm(u);
  r.leak = chirality_leak(u);
  r.lb_slack = r.i1 * r.i1 - r.mass_defect * r.mass_defect / 6.0;
  return r;
}

void write_report_header(std::ostream& os) { os << "t,i1,i2,mass_defect,x2_norm,leak,lb_slack\n"; }

void write_report_row(std::ostream& os, const InvariantReport& r) {
  os << std::setprecision(17) << r.t << ',' << r.i1 << ',' << r.i2 << ',' << r.mass_defect << ',' << r.x2_norm
     << ',' << r.leak << ',' << r.lb_slack << '\n';
}

GaugeField gauge_transform(const Field& u) {
  const auto& g = u.grid();
  const Field q = abs2_minus_one(u);
  const double mean = q.coeffs()[0].real();
  // Spectral antiderivative of q - mean, pinned to vanish at x = 0.
  Field A(g);
  cplx at0{};
  for (std::size_t i = 1; i < g.N(); ++i) {
    A.coeffs()[i] = q.coeffs()[i] / (kI * g.xi(i));
    at0 += A.coeffs()[i];
  }
  A.coeffs()[0] = -at0;
  const CVec a = A.samples();
  CVec us = u.samples();
  CVec per(g.N()), v(g.N());
  for (std::size_t j = 0; j < g.N(); ++j) {
    per[j] = us[j] * std::exp(0.5 * kI * a[j].real());
    v[j] = per[j] * std::exp(0.5 * kI * mean * g.x(j));
  }
  return {Field::from_samples(g, per), 0.5 * mean, std::move(v)};
}

double i1_gauge(const GaugeField& v) {
  const Field& p = v.periodic;
  Field r = d_dx(p);
  r += (kI * v.slope) * p;
  Field h = multiply(p, hilbert_transform(abs2_minus_one(p)));
  h *= 0.5;
  r -= h;
  return l2_norm(r);
}

double i1_gauge(const Field& v) { return i1_gauge(GaugeField{v, 0.0, {}}); }

std::pair<cplx, cplx> hilbert_identity(const Field& q) {
  Field absD = q;
  const auto& g = q.grid();
  for (std::size_t i = 0; i < g.N(); ++i) absD.coeffs()[i] *= std::abs(g.xi(i));
  return {inner(d_dx(q), hilbert_transform(q)), -inner(q, absD)};
}

double lax_residual(const Trajectory& traj, double t, const Field& f, double dt_fd) {
  if (!(dt_fd > 0.0)) throw std::invalid_argument("lax_residual: dt_fd must be positive");
  if (!traj.has(t - dt_fd) || !traj.has(t) || !traj.has(t + dt_fd))
    throw std::out_of_range("lax_residual: t +- dt_fd not available in the trajectory");
  const Field& um = traj.at(t - dt_fd);
  const Field& u = traj.at(t);
  const Field& up = traj.at(t + dt_fd);
  Field lhs = lax_L_apply(up, f).field;
  lhs -= lax_L_apply(um, f).field;
  lhs *= 1.0 / (2.0 * dt_fd);
  const Field du = d_dx(u);
  Field comm = lax_B_apply(u, du, lax_L_apply(u, f).field).field;
  comm -= lax_L_apply(u, lax_B_apply(u, du, f).field).field;
  lhs -= comm;
  return l2_norm(lhs);
}

double d_E(const Field& u, const Field& v) {
  require_same_grid(u.grid(), v.grid(), "d_E");
  const Field d = u - v;
  const Field d1 = d_dx(d);
  Field m = real_part(multiply(conjugate(u), u));
  m -= real_part(multiply(conjugate(v), v));
  return sup_norm(d) + l2_norm(d1) + l2_norm(d_dx(d1)) + l2_norm(m);
}

std::pair<double, double> check_sum_bound(const Field& v, const Field& w) {
  require_same_grid(v.grid(), w.grid(), "check_sum_bound");
  const auto& g = v.grid();
  const CVec vs = v.samples(), ws = w.samples();
  double lhs = 0.0, qv = 0.0, vinf = 0.0, w2 = 0.0, w4 = 0.0;
  for (std::size_t j = 0; j < g.N(); ++j) {
    const double s = std::norm(vs[j] + ws[j]) - 1.0;
    const double a = std::norm(vs[j]) - 1.0;
    const double b = std::norm(ws[j]);
    lhs += s * s;
    qv += a * a;
    vinf = std::max(vinf, std::abs(vs[j]));
    w2 += b;
    w4 += b * b;
  }
  const double dx = g.dx();
  return {std::sqrt(lhs * dx), std::sqrt(qv * dx) + 2.0 * vinf * std::sqrt(w2 * dx) + std::sqrt(w4 * dx)};
}

std::vector<LinearGroupPoint> check_linear_group_bound(const Field& f, const std::vector<double>& ts) {
  const auto& g = f.grid();
  const double fp = l2_norm(d_dx(f));
  if (!(fp > 0.0)) throw std::invalid_argument("check_linear_group_bound: f' must be nonzero");
  std::vector<LinearGroupPoint> out;
  for (double t : ts) {
    double l2 = 0.0, h2 = 0.0;
    for (std::size_t i = 0; i < g.N(); ++i) {
      const double xi = g.xi(i);
      // |e^{-i t xi^2} - 1| = 2 |sin(t xi^2 / 2)|, free of cancellation at tiny t
      const double m = 2.0 * std::abs(std::sin(0.5 * t * xi * xi));
      const double a = std::norm(f.coeffs()[i]) * m * m;
      l2 += a;
      h2 += a * (1.0 + xi * xi) * (1.0 + xi * xi);
    }
    l2 = std::sqrt(2.0 * g.L() * l2);
    h2 = std::sqrt(2.0 * g.L() * h2);
    out.push_back({t, t == 0.0 ? 0.0 : l2 / (std::sqrt(std::abs(t)) * fp), h2});
  }
  return out;
}

double linear_group_constant() {
  // sup_s 2|sin(s^2/2)|/s = sup_y sqrt(2) sin(y)/sqrt(y), attained at tan y = 2y.
  double y = 1.1;
  for (int i = 0; i < 50; ++i) {
    const double f = std::tan(y) - 2.0 * y;
    const double df = 1.0 / (std::cos(y) * std::cos(y)) - 2.0;
    y -= f / df;
  }
  return std::sqrt(2.0) * std::sin(y) / std::sqrt(y);
}

}  // namespace cmdnls
