#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "cmdnls/evolve.hpp"
#include "cmdnls/grid.hpp"

namespace cmdnls {

double mass_defect(const Field& u);
// ||D u + u Pi(|u|^2 - 1)||
double i1(const Field& u);
// Norm of the six-term field
// D^2u + u T_ubar Du + D(u Pi(q)) + Du + u Pi(|u|^2 Pi(q)) + u Pi(q), q = |u|^2 - 1.
double i2(const Field& u);
// sup|u| + ||u'|| + ||u''||
double x2_norm(const Field& u);
// ||(Id - Pi) u|| / ||u||
double chirality_leak(const Field& u);

struct InvariantReport {
  double t = 0.0;
  double i1 = 0.0;
  double i2 = 0.0;
  double mass_defect = 0.0;
  double x2_norm = 0.0;
  double leak = 0.0;
  double lb_slack = 0.0;  // i1^2 - mass_defect^2 / 6
};
InvariantReport invariant_report(const Field& u, double t);
void write_report_header(std::ostream& os);
void write_report_row(std::ostream& os, const InvariantReport& r);

// v = u e^{(i/2) int_0^x (|u|^2 - 1)}. The mean of |u|^2 - 1 integrates to a
// linear phase that is not periodic; v is stored as e^{i slope x} times the
// periodic part, and `samples` holds v on [-L, L).
struct GaugeField {
  Field periodic;
  double slope = 0.0;
  CVec samples;
};
GaugeField gauge_transform(const Field& u);
// ||d_x v - (1/2) v H(|v|^2 - 1)||, with d_x v taken by the product rule on
// the linear phase and spectrally on the periodic part.
double i1_gauge(const GaugeField& v);
// Same for a periodic sample vector.
double i1_gauge(const Field& v);

// <d_x q, H q> and -<q, |D| q>.
std::pair<cplx, cplx> hilbert_identity(const Field& q);

double lax_residual(const Trajectory& traj, double t, const Field& f, double dt_fd);

// ||u - v||_inf + ||u' - v'|| + ||u'' - v''|| + || |u|^2 - |v|^2 ||
double d_E(const Field& u, const Field& v);

// (|| |v+w|^2 - 1 ||, || |v|^2 - 1 || + 2 ||v||_inf ||w|| + ||w||_{L^4}^2), discrete norms.
std::pair<double, double> check_sum_bound(const Field& v, const Field& w);

struct LinearGroupPoint {
  double t = 0.0;
  double ratio = 0.0;    // ||e^{it d^2} f - f|| / (sqrt|t| ||f'||)
  double h2_diff = 0.0;  // ||e^{it d^2} f - f||_{H^2}
};
std::vector<LinearGroupPoint> check_linear_group_bound(const Field& f, const std::vector<double>& ts);
// sup_s |e^{-i s^2} - 1| / s, the sharp constant of the ratio above.
double linear_group_constant();

}  // namespace cmdnls
