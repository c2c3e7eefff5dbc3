#include <gtest/gtest.h>

#include "cmdnls/hardy.hpp"
#include "oracle.hpp"

using namespace cmdnls;

namespace {
const GridSpec G(50.0, 256);
double xi1() { return G.dxi(); }
Field sampled(double (*f)(double)) {
  CVec s(G.N());
  for (std::size_t j = 0; j < G.N(); ++j) s[j] = f(G.x(j));
  return Field::from_samples(G, s);
}
}  // namespace

TEST(UpperHalfPoint, EnforcesFloor) {
  EXPECT_NO_THROW(UpperHalfPoint(cplx{0.0, 1.0}));
  EXPECT_THROW(UpperHalfPoint(cplx{0.0, 0.0}), std::domain_error);
  EXPECT_THROW(UpperHalfPoint(cplx{1.0, -1.0}), std::domain_error);
  EXPECT_THROW(UpperHalfPoint(cplx{0.0, 0.5}, 0.6), std::domain_error);
}

TEST(Szego, Examples) {
  EXPECT_LT(l2_norm(szego_project(Field::mode(G, -1))), 1e-15);
  EXPECT_LT(l2_norm(szego_project(Field::constant(G, 1.0)) - Field::constant(G, 1.0)), 1e-15);
  const Field c = sampled([](double x) { return std::cos(kPi / 50 * x); });
  EXPECT_LT(l2_norm(szego_project(c) - 0.5 * Field::mode(G, 1)), 1e-13);
  EXPECT_LT(l2_norm(szego_project(c) + negative_part(c) - c), 1e-15);
  EXPECT_TRUE(is_hardy(szego_project(c)));
  EXPECT_FALSE(is_hardy(c));
}

TEST(Hilbert, ClassicalPairs) {
  const Field c = sampled([](double x) { return std::cos(kPi / 50 * x); });
  const Field s = sampled([](double x) { return std::sin(kPi / 50 * x); });
  EXPECT_LT(l2_norm(hilbert_transform(c) - s), 1e-13);
  EXPECT_LT(l2_norm(hilbert_transform(s) + c), 1e-13);
  EXPECT_LT(l2_norm(hilbert_transform(Field::constant(G, 1.0))), 1e-15);
}

TEST(Poisson, Examples) {
  EXPECT_LT(std::abs(poisson_eval(Field::constant(G, 1.0), cplx{0.3, 0.7}) - 1.0), 1e-15);
  const GridSpec g(kPi, 16);
  EXPECT_LT(std::abs(poisson_eval(Field::mode(g, 1), cplx{0.0, 1.0}) - std::exp(-1.0)), 1e-15);
}

TEST(Poisson, DecayingRationalAtTwoI) {
  // 1/(x + i) extends to 1/(z + i); at z = 2i that is -i/3.
  const GridSpec g(200.0, 4096);
  const Field f = Field::from_samples(g, oracle::sample(g, [](double x) { return 1.0 / (x + kI); }));
  const cplx want = -kI / 3.0;
  // periodic reading: O(1/L) wrap-around of the tail
  EXPECT_LT(std::abs(poisson_eval(f, cplx{0, 2}) - want), 5.0 / g.L());
  // line reading: O(L^-3)
  EXPECT_LT(std::abs(poisson_quadrature(f, cplx{0, 2}) - want), 1e-6);
}

TEST(Poisson, QuadratureMatchesPeriodicForGaussian) {
  const Field f = szego_project(sampled([](double x) { return std::exp(-x * x); }));
  for (cplx z : {cplx{0, 1}, cplx{1, 2}, cplx{-3, 0.5}})
    EXPECT_LT(std::abs(poisson_eval(f, z) - poisson_quadrature(szego_project(f), z)), 5e-3);
}

TEST(Multiply, DealiasedProductIsExactForBandLimited) {
  const GridSpec g(kPi, 16);
  // modes 0..5 times modes 0..2 lands in 0..7, outside the N = 16 band [-7, 7] nowhere
  Field a = Field::mode(g, 5, 0.5) + Field::mode(g, 1, 1.0);
  Field b = Field::mode(g, 2, 2.0) + Field::mode(g, -1, cplx{0, 1});
  const Field p = multiply(a, b);
  const Field want = Field::mode(g, 7, 1.0) + Field::mode(g, 4, cplx{0, 0.5}) + Field::mode(g, 3, 2.0) +
                     Field::mode(g, 0, cplx{0, 1});
  EXPECT_LT(l2_norm(p - want), 1e-14);
}

TEST(Multiply, DealiasingDropsOutOfBandModes) {
  const GridSpec g(kPi, 16);
  const Field a = Field::mode(g, 5), b = Field::mode(g, 5);
  EXPECT_LT(l2_norm(multiply(a, b, true)), 1e-14);                                // 10 is out of band
  EXPECT_LT(l2_norm(multiply(a, b, false) - Field::mode(g, -6)), 1e-14);          // aliased to -6
}

TEST(Multiply, AgreesWithSampleProductForSmoothData) {
  const GridSpec g(50.0, 1024);  // sech needs xi_max ~ 30 to be resolved to roundoff
  const Field a = Field::from_samples(g, oracle::sample(g, [](double x) { return cplx{std::exp(-x * x / 4)}; }));
  const Field b = Field::from_samples(g, oracle::sample(g, [](double x) { return cplx{1.0 / std::cosh(x)}; }));
  const CVec sa = a.samples(), sb = b.samples();
  CVec s(g.N());
  for (std::size_t j = 0; j < g.N(); ++j) s[j] = sa[j] * sb[j];
  EXPECT_LT(oracle::max_diff(multiply(a, b).samples(), s), 1e-12);
}

TEST(Pointwise, ConjugateRealAbs2) {
  const Field u = Field::constant(G, 1.0) + Field::mode(G, 1, 0.1);
  const CVec s = u.samples();
  const CVec c = conjugate(u).samples(), r = real_part(u).samples(), q = abs2_minus_one(u).samples();
  for (std::size_t j = 0; j < G.N(); ++j) {
    EXPECT_LT(std::abs(c[j] - std::conj(s[j])), 1e-15);
    EXPECT_LT(std::abs(r[j] - s[j].real()), 1e-15);
    EXPECT_LT(std::abs(q[j] - (std::norm(s[j]) - 1.0)), 1e-14);
  }
}

TEST(Derivative, Mode) {
  EXPECT_LT(l2_norm(d_dx(Field::mode(G, 3)) - Field::mode(G, 3, kI * 3.0 * xi1())), 1e-15);
}

TEST(UnpairedMode, Zeroed) {
  const GridSpec g(kPi, 8);
  Field f = Field::mode(g, -4, 1.0) + Field::mode(g, 1, 1.0);
  EXPECT_LT(l2_norm(zero_unpaired_mode(f) - Field::mode(g, 1)), 1e-15);
}
