#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cmdnls/diagnostics.hpp"
#include "cmdnls/hardy.hpp"
#include "cmdnls/ops.hpp"
#include "cmdnls/runner.hpp"
#include "oracle.hpp"

using namespace cmdnls;

namespace {
const GridSpec P(kPi, 16);  // xi_1 = 1
const double d = 0.1;
Field u_delta() { return Field::constant(P, 1.0) + Field::mode(P, 1, d); }
const double s2L = std::sqrt(2 * kPi);
}  // namespace

TEST(MassDefect, Examples) {
  EXPECT_EQ(mass_defect(Field::constant(P, 1.0)), 0.0);
  EXPECT_NEAR(mass_defect(Field(P)), s2L, 1e-14);
  EXPECT_NEAR(mass_defect(u_delta()), std::sqrt(2 * kPi * (d * d * d * d + 2 * d * d)), 1e-14);
}

TEST(I1, Examples) {
  EXPECT_EQ(i1(Field::constant(P, 1.0)), 0.0);
  EXPECT_EQ(i1(Field(P)), 0.0);
  // D u + u Pi(|u|^2 - 1) = d^2 + (2d + d^3) e^{ix} + d^2 e^{2ix}
  const double a = 2 * d + d * d * d;
  EXPECT_NEAR(i1(u_delta()), std::sqrt(2 * kPi * (2 * d * d * d * d + a * a)), 1e-14);
  EXPECT_NEAR(i1(u_delta()), 0.50508, 1e-5);
}

TEST(I2, Examples) {
  EXPECT_EQ(i2(Field::constant(P, 1.0)), 0.0);
  EXPECT_EQ(i2(Field(P)), 0.0);
  // exact rational trig-polynomial expansion of the six terms:
  // 401/10000 + 60701/100000 e^{ix} + 301/5000 e^{2ix} + 1/1000 e^{3ix}
  const double c[] = {401.0 / 10000, 60701.0 / 100000, 301.0 / 5000, 1.0 / 1000};
  double s = 0.0;
  for (double v : c) s += v * v;
  EXPECT_NEAR(i2(u_delta()), std::sqrt(2 * kPi * s), 1e-14);
}

TEST(X2Norm, SingleMode) {
  // sup|u| + ||u'|| + ||u''|| for 1 + d e^{ix}
  EXPECT_NEAR(x2_norm(u_delta()), 1 + d + 2 * d * s2L, 1e-14);
}

TEST(ChiralityLeak, Relative) {
  EXPECT_EQ(chirality_leak(u_delta()), 0.0);
  const Field f = Field::mode(P, 1) + Field::mode(P, -1);
  EXPECT_NEAR(chirality_leak(f), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(InvariantReport, CsvRow) {
  const auto r = invariant_report(u_delta(), 0.5);
  EXPECT_EQ(r.t, 0.5);
  EXPECT_NEAR(r.lb_slack, r.i1 * r.i1 - r.mass_defect * r.mass_defect / 6, 1e-15);
  std::ostringstream os;
  write_report_header(os);
  write_report_row(os, r);
  const std::string s = os.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "t,i1,i2,mass_defect,x2_norm,leak,lb_slack");
  EXPECT_EQ(std::count(s.begin(), s.end(), ','), 12);
}

TEST(Gauge, TrivialCases) {
  const GridSpec g(50.0, 256);
  const auto v = gauge_transform(Field::constant(g, 1.0));
  EXPECT_EQ(v.slope, 0.0);
  EXPECT_LT(l2_norm(v.periodic - Field::constant(g, 1.0)), 1e-15);
  EXPECT_LT(i1_gauge(Field::constant(g, 1.0)), 1e-15);
  EXPECT_EQ(i1_gauge(Field(g)), 0.0);
  // |u| = 1 pointwise: the phase vanishes
  const Field m = Field::mode(g, 3, cplx{0.6, 0.8});
  EXPECT_LT(l2_norm(gauge_transform(m).periodic - m), 1e-14);
}

TEST(Gauge, ModulusPreserved) {
  const GridSpec g(50.0, 1024);
  const Field u = build_datum(gaussian_datum(0.1), g);
  const auto v = gauge_transform(u);
  const CVec s = u.samples();
  for (std::size_t j = 0; j < g.N(); ++j) EXPECT_NEAR(std::abs(v.samples[j]), std::abs(s[j]), 1e-12);
}

TEST(Gauge, IdentityOnBalancedDatum) {
  const GridSpec g(50.0, 1024);
  InitialDatum dd = gaussian_datum(0.1);
  dd.balance_mass = true;
  const Field u = build_datum(dd, g);
  EXPECT_LT(std::abs(i1(u) - i1_gauge(gauge_transform(u))), 1e-8 * (1 + i1(u)));
}

TEST(Gauge, MeanDefectOnUnbalancedDatum) {
  // with torus mean m of |u|^2 - 1 the identity becomes ||D u + u (Pi q - m/2)||
  const GridSpec g(50.0, 1024);
  const Field u = build_datum(gaussian_datum(0.1), g);
  Field q = abs2_minus_one(u);
  const cplx m = q.coeff(0);
  EXPECT_GT(std::abs(m), 1e-4);
  Field pq = szego_project(q);
  pq.coeff(0) -= 0.5 * m;
  const double want = l2_norm(derivative_D(u) + multiply(u, pq));
  EXPECT_NEAR(i1_gauge(gauge_transform(u)), want, 1e-10);
  EXPECT_GT(std::abs(i1(u) - want), 1e-3);
}

TEST(HilbertIdentity, Cosine) {
  const Field q = 0.5 * (Field::mode(P, 2) + Field::mode(P, -2));  // cos 2x
  const auto [a, b] = hilbert_identity(q);
  // <d_x q, H q> = <-2 sin 2x, sin 2x> = -2 pi = -<cos 2x, 2 cos 2x>
  EXPECT_NEAR(a.real(), -2 * kPi, 1e-13);
  EXPECT_LT(std::abs(a - b), 1e-13);
}

TEST(HilbertIdentity, RandomData) {
  const GridSpec g(10.0, 128);
  std::mt19937 rng(5);
  std::normal_distribution<double> nd;
  CVec s(g.N());
  for (std::size_t j = 0; j < g.N(); ++j) s[j] = nd(rng) * std::exp(-g.x(j) * g.x(j) / 8);
  const Field q = zero_unpaired_mode(Field::from_samples(g, s));
  const auto [a, b] = hilbert_identity(q);
  EXPECT_LT(std::abs(a - b), 1e-12 * std::abs(b));
}

TEST(DE, Examples) {
  const Field u = u_delta(), one = Field::constant(P, 1.0);
  EXPECT_EQ(d_E(u, u), 0.0);
  const GridSpec g(50.0, 256);
  const Field a = build_datum(gaussian_datum(0.1), g), b = build_datum(two_bump_datum(), g);
  EXPECT_NEAR(d_E(a, b), d_E(b, a), 1e-15);
  EXPECT_NEAR(d_E(one, u), d + 2 * d * s2L + std::sqrt(2 * kPi * (d * d * d * d + 2 * d * d)), 1e-14);
}

TEST(SumBound, Examples) {
  const Field one = Field::constant(P, 1.0);
  const auto [l0, r0] = check_sum_bound(u_delta(), Field(P));
  EXPECT_NEAR(l0, r0, 1e-15);
  const auto [l, r] = check_sum_bound(one, Field::mode(P, 1, d));
  EXPECT_NEAR(l, std::sqrt(2 * kPi * (d * d * d * d + 2 * d * d)), 1e-14);
  EXPECT_NEAR(r, 2 * d * s2L + d * d * s2L, 1e-14);
}

TEST(SumBound, RandomPairs) {
  const GridSpec g(10.0, 64);
  std::mt19937 rng(9);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 200; ++trial) {
    CVec a(g.N()), b(g.N());
    const double s = std::exp(nd(rng));
    for (std::size_t j = 0; j < g.N(); ++j) {
      const double env = std::exp(-g.x(j) * g.x(j) / 10);
      a[j] = 1.0 + s * cplx{nd(rng), nd(rng)} * env;
      b[j] = s * cplx{nd(rng), nd(rng)} * env;
    }
    const auto [l, r] = check_sum_bound(Field::from_samples(g, a), Field::from_samples(g, b));
    EXPECT_LE(l, r * (1 + 1e-12));
  }
}

TEST(LinearGroup, SingleModeClosedForm) {
  const Field f = Field::mode(P, 1);
  for (const auto& p : check_linear_group_bound(f, {0.0, 1e-3, 0.5, 2.0})) {
    const double want = p.t == 0 ? 0.0 : std::abs(std::exp(-kI * p.t) - 1.0) / std::sqrt(p.t);
    EXPECT_NEAR(p.ratio, want, 1e-13);
  }
  EXPECT_THROW(check_linear_group_bound(Field::constant(P, 1.0), {0.1}), std::invalid_argument);
}

TEST(LinearGroup, ConstantIsTheSupremum) {
  double best = 0.0;
  for (int i = 1; i <= 400000; ++i) {
    const double s = i * 1e-5;
    best = std::max(best, std::abs(std::exp(-kI * s * s) - 1.0) / s);
  }
  EXPECT_NEAR(linear_group_constant(), best, 1e-9);
  EXPECT_NEAR(linear_group_constant(), 1.2038, 1e-4);
}

TEST(LaxResidual, Examples) {
  const GridSpec g(50.0, 256);
  SolverConfig c;
  c.dt = 1e-2;
  c.t_final = 0.2;
  c.snapshot_stride = 1;
  const Trajectory one = evolve(Field::constant(g, 1.0), c);
  const Field f = szego_project(Field::from_samples(g, oracle::sample(g, [](double x) { return std::exp(-x * x); })));
  EXPECT_LT(lax_residual(one, 0.1, f, 0.05), 1e-13);
  const Trajectory tr = evolve(build_datum(gaussian_datum(0.1), g), c);
  EXPECT_EQ(lax_residual(tr, 0.1, Field(g), 0.05), 0.0);
  EXPECT_THROW(lax_residual(tr, 0.1, f, 0.5), std::out_of_range);
  const double r1 = lax_residual(tr, 0.1, f, 0.08), r2 = lax_residual(tr, 0.1, f, 0.04);
  EXPECT_NEAR(r1 / r2, 4.0, 0.5);
}
