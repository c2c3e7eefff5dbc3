#include <gtest/gtest.h>

#include <vector>

#include "cmdnls/evolve.hpp"
#include "cmdnls/formula.hpp"
#include "cmdnls/runner.hpp"

using namespace cmdnls;

namespace {
const GridSpec G(50.0, 512);
Field gaussian() { return build_datum(gaussian_datum(0.1), G); }

// time-stepping oracle at one time
Field solved(const Field& u0, double t) {
  SolverConfig c;
  c.dt = 1e-3;
  c.t_final = t;
  c.snapshot_stride = 1000000;
  return evolve(u0, c).snapshots.back().field;
}
}  // namespace

TEST(ExplicitEval, ConstantDatum) {
  const Field one = Field::constant(G, 1.0);
  for (double t : {0.1, 1.0, 3.0}) {
    const FormulaWorkspace ws(one, t);
    for (cplx z : {cplx{0, 1}, cplx{2, 0.5}}) {
      EXPECT_LT(std::abs(explicit_eval(ws, z).u - 1.0), 1e-14);
      EXPECT_LT(std::abs(explicit_eval_iplus(ws, z).u - 1.0), 1e-14);
    }
  }
}

TEST(ExplicitEval, TimeZeroIsPoisson) {
  const Field u0 = gaussian();
  const FormulaWorkspace ws(u0, 0.0);
  for (cplx z : {cplx{0, 1}, cplx{1, 1}}) {
    EXPECT_LT(std::abs(explicit_eval(ws, z).u - poisson_eval(u0, z)), 1e-15);
    EXPECT_LT(std::abs(explicit_eval_iplus(ws, z).u - poisson_eval(u0, z)), 1e-15);
  }
}

TEST(ExplicitEval, MatchesTimeStepping) {
  const Field u0 = gaussian();
  const double t = 0.25;
  const Field ut = solved(u0, t);
  const FormulaWorkspace ws(u0, t);
  for (cplx z : {cplx{0, 1}, cplx{1, 1}, cplx{-2, 0.5}}) {
    const cplx want = poisson_eval(ut, z);
    EXPECT_LT(std::abs(explicit_eval(ws, z).u - want), 1e-6);
    EXPECT_LT(std::abs(explicit_eval_iplus(ws, z).u - want), 1e-4);
  }
  EXPECT_EQ(explicit_eval(u0, t, cplx{0, 1}, ws), explicit_eval(ws, cplx{0, 1}).u);
}

TEST(ExplicitEval, DenseAndIterativeAgree) {
  const Field u0 = gaussian();
  FormulaSettings d, it;
  d.mode = SolveMode::dense;
  it.mode = SolveMode::iterative;
  const FormulaWorkspace wd(u0, 0.5, d), wi(u0, 0.5, it);
  const auto a = explicit_eval(wd, cplx{1, 1});
  const auto b = explicit_eval(wi, cplx{1, 1});
  EXPECT_LT(std::abs(a.u - b.u), 1e-9);
  EXPECT_GT(b.iterations, 0);
  EXPECT_LT(b.residual, 1e-10);
}

TEST(ExplicitEval, WorkspaceMismatchRejected) {
  const Field u0 = gaussian();
  const FormulaWorkspace ws(u0, 0.5);
  EXPECT_THROW(explicit_eval(u0, 0.25, cplx{0, 1}, ws), std::invalid_argument);
  EXPECT_THROW(explicit_eval(Field::constant(G, 1.0), 0.5, cplx{0, 1}, ws), std::invalid_argument);
}

TEST(ExplicitEval, LowPointRejected) {
  const FormulaWorkspace ws(gaussian(), 0.5);
  EXPECT_THROW(explicit_eval(ws, UpperHalfPoint(cplx{0, 1e-6})), std::domain_error);
}

TEST(ExplicitEvalIplus, LadderGuard) {
  FormulaSettings s;
  s.max_dense_ladder = 100;
  const FormulaWorkspace ws(gaussian(), 0.5, s);
  EXPECT_THROW(explicit_eval_iplus(ws, cplx{0, 1}), FormulaError);
}

TEST(VEval, BothPathsAgree) {
  const Field u0 = gaussian();
  const FormulaWorkspace ws(u0, 0.25);
  const VValue v = v_eval(ws, cplx{0, 1});
  EXPECT_LT(std::abs(v.difference - v.direct), 1e-10);
  const FormulaWorkspace w0(u0, 0.0);
  EXPECT_EQ(v_eval(w0, cplx{0, 1}).difference, cplx{});
  const FormulaWorkspace w1(Field::constant(G, 1.0), 0.4);
  EXPECT_LT(std::abs(v_eval(w1, cplx{0, 1}).difference), 1e-15);
}

TEST(ZeroDispersion, EpsOneIsTheEquation) {
  const Field u0 = gaussian();
  const FormulaWorkspace ws(u0, 0.5);
  EXPECT_LT(std::abs(zd_eps_eval(u0, 0.5, cplx{0, 2}, 1.0) - explicit_eval(ws, cplx{0, 2}).u), 1e-15);
  EXPECT_LT(std::abs(zd_eps_eval(Field::constant(G, 1.0), 0.5, cplx{0, 2}, 0.25) - 1.0), 1e-14);
  EXPECT_THROW(zd_eps_eval(u0, 0.5, cplx{0, 2}, 0.0), std::invalid_argument);
}

TEST(ZeroDispersion, LimitRoutes) {
  const Field u0 = gaussian();
  const auto l0 = zd_limit_eval(u0, 0.0, cplx{0, 2});
  EXPECT_LT(std::abs(l0.resolvent_route - poisson_eval(u0, cplx{0, 2})), 1e-15);
  const auto c = zd_limit_eval(Field::constant(G, 1.0), 0.5, cplx{0, 2});
  EXPECT_LT(std::abs(c.resolvent_route - 1.0), 1e-14);
  EXPECT_LT(std::abs(c.iplus_route - 1.0), 1e-14);
  const auto l = zd_limit_eval(u0, 0.5, cplx{0, 2});
  EXPECT_LT(std::abs(l.resolvent_route - l.iplus_route), 1e-4);
}

TEST(ZeroDispersion, ConvergesLinearlyInEps) {
  const Field u0 = gaussian();
  const cplx lim = zd_limit_eval(u0, 0.5, cplx{0, 2}, {}, false).resolvent_route;
  std::vector<double> d;
  for (double e : {1.0, 0.5, 0.25, 0.125, 0.0625}) d.push_back(std::abs(zd_eps_eval(u0, 0.5, cplx{0, 2}, e) - lim));
  // first order in eps: halving ratios increase toward 2 as the O(eps^2) part dies out
  for (std::size_t i = 1; i < d.size(); ++i) EXPECT_LT(d[i], d[i - 1]);
  for (std::size_t i = 2; i < d.size(); ++i) EXPECT_GE(d[i - 1] / d[i], d[i - 2] / d[i - 1] - 1e-3);
  EXPECT_NEAR(d[3] / d[4], 2.0, 0.1);
}
