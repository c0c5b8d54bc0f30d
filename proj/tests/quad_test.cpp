#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "catsim/errors.hpp"
#include "catsim/fock.hpp"
#include "catsim/quad.hpp"

using namespace catsim;

namespace {

const double kPiQuarter = std::pow(std::numbers::pi, -0.25);

// Fock expansion sum_n c_n phi_n(x) of a one-mode state.
cplx expand_x(const FockVector& v, double x) {
  const auto phi = hermite_fns(v.dims[0] - 1, x);
  cplx acc = 0.0;
  for (int n = 0; n < v.dims[0]; ++n) acc += v.amps[n] * phi[n];
  return acc;
}

}  // namespace

TEST(Quad, HermiteValues) {
  EXPECT_NEAR(hermite_fn(0, 0.0), kPiQuarter, 1e-15);
  EXPECT_NEAR(hermite_fn(1, 0.0), 0.0, 1e-15);
  // phi_2(x) = (2x^2 - 1) e^{-x^2/2} / sqrt(2 sqrt(pi)).
  const double x = 0.7;
  EXPECT_NEAR(hermite_fn(2, x), (2 * x * x - 1) * std::exp(-x * x / 2) / std::sqrt(2 * std::sqrt(std::numbers::pi)),
              1e-14);
  EXPECT_THROW(hermite_fn(501, 0.1), OverflowGuard);
}

TEST(Quad, HermiteOrthonormality) {
  const QuadGrid g = gauss_hermite(200);
  double worst = 0.0;
  for (int m = 0; m <= 30; ++m) {
    for (int n = m; n <= 30; ++n) {
      const double v = g.integrate([&](double x) { return hermite_fn(m, x) * hermite_fn(n, x); });
      worst = std::max(worst, std::abs(v - (m == n ? 1.0 : 0.0)));
    }
  }
  EXPECT_LT(worst, 1e-8);
  EXPECT_NEAR(g.integrate([](double x) { return std::pow(hermite_fn(5, x), 2); }), 1.0, 1e-9);
}

TEST(Quad, TrapezoidOrthonormality) {
  const QuadGrid g = trapezoid(-14.0, 14.0, 0.05);
  double worst = 0.0;
  for (int m = 0; m <= 30; m += 3) {
    for (int n = 0; n <= 30; n += 5) {
      const double v = g.integrate([&](double x) { return hermite_fn(m, x) * hermite_fn(n, x); });
      worst = std::max(worst, std::abs(v - (m == n ? 1.0 : 0.0)));
    }
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(Quad, ClassicalRuleIsExactForPolynomials) {
  const QuadGrid g = gauss_hermite_classical(6);
  // int e^{-x^2} x^4 dx = 3 sqrt(pi) / 4
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], 4);
  EXPECT_NEAR(s, 0.75 * std::sqrt(std::numbers::pi), 1e-13);
}

TEST(Quad, IntegrateGhConverges) {
  const double v = integrate_gh([](double x) { return std::exp(-0.25 * x * x); });
  EXPECT_NEAR(v, std::sqrt(4.0 * std::numbers::pi), 1e-9);
}

TEST(Quad, CatWavefunctionPeakValue) {
  const double a = 1.1;
  const double c = std::sqrt(2.0) * a;
  const double np = 2 + 2 * std::exp(-2 * a * a);
  const double nm = 2 - 2 * std::exp(-2 * a * a);
  EXPECT_NEAR(cat_wavefunction(a, 1, Basis::x, c).real(), kPiQuarter / std::sqrt(np) * (1 + std::exp(-4 * a * a)),
              1e-14);
  // (|-a> - |a>) is negative on the right-hand hump.
  EXPECT_NEAR(cat_wavefunction(a, -1, Basis::x, c).real(), -kPiQuarter / std::sqrt(nm) * (1 - std::exp(-4 * a * a)),
              1e-14);
  EXPECT_EQ(cat_wavefunction(a, -1, Basis::p, 0.0), cplx(0.0));
}

TEST(Quad, CatWavefunctionNorms) {
  const QuadGrid g = gauss_hermite(200, 1.5);
  for (int parity : {1, -1}) {
    for (Basis b : {Basis::x, Basis::p}) {
      const double n = g.integrate([&](double x) { return std::norm(cat_wavefunction(2.0, parity, b, x)); });
      EXPECT_NEAR(n, 1.0, 1e-8);
    }
  }
}

TEST(Quad, CoherentWavefunction) {
  EXPECT_NEAR(std::abs(coherent_wavefunction_x(0.0, 0.3) - kPiQuarter * std::exp(-0.045)), 0.0, 1e-15);
  const QuadGrid g = gauss_hermite(200, 2.0);
  const cplx a(1.0, 2.0);
  EXPECT_NEAR(g.integrate([&](double x) { return std::norm(coherent_wavefunction_x(a, x)); }), 1.0, 1e-8);
  const FockVector c = coherent_state(1.3, 40);
  EXPECT_NEAR(std::abs(expand_x(c, 0.7) - coherent_wavefunction_x(1.3, 0.7)), 0.0, 1e-7);
}

TEST(Quad, FockExpansionMatchesClosedForms) {
  for (double a : {0.5, 1.5, 3.0}) {
    const FockVector even = cat_state(a, 0.0, 60);
    const FockVector odd = cat_state(a, std::numbers::pi, 60);
    const FockVector coh = coherent_state(cplx(a, -0.5 * a), 60);
    for (double x = -5.0; x <= 5.0; x += 0.5) {
      EXPECT_NEAR(std::abs(expand_x(even, x) - cat_wavefunction(a, 1, Basis::x, x)), 0.0, 1e-7);
      // cat_state fixes a positive first amplitude; the odd closed form has -a first.
      EXPECT_NEAR(std::abs(expand_x(odd, x) + cat_wavefunction(a, -1, Basis::x, x)), 0.0, 1e-7);
      EXPECT_NEAR(std::abs(expand_x(coh, x) - coherent_wavefunction_x(cplx(a, -0.5 * a), x)), 0.0, 1e-7);
    }
  }
}
