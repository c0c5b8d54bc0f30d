#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "catsim/errors.hpp"
#include "catsim/fock.hpp"
#include "catsim/subtraction.hpp"

using namespace catsim;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_normalized(const FockVector& v) { EXPECT_NEAR(v.amps.squaredNorm(), 1.0, 1e-9); }

// Brute-force exp of the two-mode splitter generator on the full product space.
Eigen::MatrixXcd brute_splitter(int d, double T) {
  const Eigen::MatrixXd a = annihilation(d);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd a1 = Eigen::kroneckerProduct(a, id);
  const Eigen::MatrixXd a2 = Eigen::kroneckerProduct(id, a);
  const Eigen::MatrixXd gen = std::acos(std::sqrt(T)) * (a1 * a2.transpose() - a1.transpose() * a2);
  return gen.exp().cast<cplx>();
}

}  // namespace

TEST(Fock, CoherentVacuumAndMean) {
  const FockVector z = coherent_state(0.0, 10);
  EXPECT_NEAR(std::abs(z.amps[0]), 1.0, 1e-15);
  const FockVector c = coherent_state(2.0);
  expect_normalized(c);
  EXPECT_NEAR(mean_photon(c), 4.0, 1e-8);
}

TEST(Fock, CoherentOverlapTiny) {
  const int d = default_dim(2.0);
  const double f = fidelity(coherent_state(-2.0, d), coherent_state(2.0, d));
  EXPECT_NEAR(f, std::exp(-16.0), 1e-12);
  EXPECT_NEAR(f, 1.125e-7, 1e-9);
}

TEST(Fock, TruncationIsReported) {
  EXPECT_THROW(coherent_state(4.0, 10), TruncationError);
  EXPECT_THROW(cat_state(3.0, 0.0, 8), TruncationError);
}

TEST(Fock, CatParityAndNormalization) {
  const FockVector even = cat_state(2.0, 0.0);
  const FockVector odd = cat_state(2.0, kPi);
  expect_normalized(even);
  expect_normalized(odd);
  for (int n = 0; n < even.dims[0]; ++n) {
    if (n % 2 == 1) EXPECT_EQ(even.amps[n], cplx(0.0));
    if (n % 2 == 0) EXPECT_EQ(odd.amps[n], cplx(0.0));
  }
  EXPECT_NEAR(fidelity(even, odd), 0.0, 1e-15);
  EXPECT_NEAR(mean_photon(even), 4.0 * std::tanh(4.0), 1e-9);
  EXPECT_NEAR(parity_expectation(odd), -1.0, 1e-12);
}

TEST(Fock, CatNormalizationConstant) {
  // |amp_0| of the even cat is 2 e^{-a^2/2} / sqrt(N_+).
  const double a = 1.3;
  const FockVector even = cat_state(a, 0.0);
  const double n_plus = 2.0 + 2.0 * std::exp(-2.0 * a * a);
  EXPECT_NEAR(std::abs(even.amps[0]), 2.0 * std::exp(-0.5 * a * a) / std::sqrt(n_plus), 1e-12);
}

TEST(Fock, CanonicalPhase) {
  const FockVector c = cat_state(1.0, kPi / 2);
  int first = 0;
  while (std::abs(c.amps[first]) == 0.0) ++first;
  EXPECT_NEAR(c.amps[first].imag(), 0.0, 1e-15);
  EXPECT_GT(c.amps[first].real(), 0.0);
}

TEST(Fock, SqueezedVacuumMatchesSqueezer) {
  for (double s : {-0.7, 0.3, 1.0}) {
    const FockVector closed = squeezed_vacuum(-std::tanh(s));
    const FockVector op = apply_squeeze(vacuum(closed.dims[0]), s);
    expect_normalized(op);
    EXPECT_GT(fidelity(closed, op), 1.0 - 1e-8) << s;
    EXPECT_NEAR(parity_expectation(closed), 1.0, 1e-12);
  }
  EXPECT_NEAR(std::abs(squeezed_vacuum(0.0, 4).amps[0]), 1.0, 1e-15);
}

TEST(Fock, SqueezedVacuumBestEvenCat) {
  const FockVector sq = squeezed_vacuum(0.883);
  const int d = std::max(sq.dims[0], default_dim(2.0));
  EXPECT_NEAR(fidelity(pad(sq, {d}), cat_state(2.0, 0.0, d)), 0.588, 2e-3);
}

TEST(Fock, SqueezedSinglePhoton) {
  const FockVector k = apply_squeeze(fock_state(1, 40), -0.31);
  EXPECT_NEAR(fidelity(k, cat_state(1.0, kPi, 40)), 0.997, 1e-3);
}

TEST(Fock, BeamSplitterCoherentAction) {
  const double T = 0.7;
  const cplx a = 1.0;
  const cplx b = 0.5;
  const int d = 24;
  const FockVector in = tensor(coherent_state(a, d), coherent_state(b, d));
  const FockVector out = beam_splitter(in, T);
  const FockVector expect = tensor(coherent_state(a * std::sqrt(T) - b * std::sqrt(1 - T), d),
                                   coherent_state(b * std::sqrt(T) + a * std::sqrt(1 - T), d));
  EXPECT_GT(fidelity(out, expect), 1.0 - 1e-8);
  EXPECT_NEAR(std::abs(inner(out, expect)), 1.0, 1e-8);
  EXPECT_NEAR(mean_photon(out), std::norm(a) + std::norm(b), 1e-9);
  expect_normalized(out);
  const FockVector same = beam_splitter(in, 1.0);
  EXPECT_LT((same.amps - in.amps).norm(), 1e-12);
}

TEST(Fock, BeamSplitterMatchesBruteForce) {
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  const int d = 6;
  FockVector v{{d, d}, Eigen::VectorXcd(d * d)};
  // Low-number support so no amplitude leaves the truncation.
  v.amps.setZero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j + i < 3; ++j) v.amps[i * d + j] = cplx(g(rng), g(rng));
  v = normalized(v);
  for (double T : {0.1, 0.5, 0.83}) {
    const Eigen::VectorXcd ref = brute_splitter(d, T) * v.amps;
    EXPECT_LT((beam_splitter(v, T).amps - ref).norm(), 1e-8) << T;
  }
}

TEST(Fock, TwoModeSqueezerVacuum) {
  // exp[r(a1 a2 - a1^dag a2^dag)]|00> = sum_n (-tanh r)^n / cosh r |nn>.
  const double r = 0.4;
  const int d = 40;
  const FockVector out = two_mode_squeeze(tensor(vacuum(d), vacuum(d)), r);
  for (int n = 0; n < 6; ++n) {
    EXPECT_NEAR(out.amps[n * d + n].real(), std::pow(-std::tanh(r), n) / std::cosh(r), 1e-10);
  }
  expect_normalized(out);
}

TEST(Fock, FidelityForms) {
  const FockVector a = cat_state(1.0, 0.3, 30);
  const FockVector b = coherent_state(cplx(0.4, 0.2), 30);
  EXPECT_NEAR(fidelity(a, a), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-15);
  EXPECT_NEAR(fidelity(a, to_density(b)), fidelity(a, b), 1e-12);
  EXPECT_NEAR(fidelity(to_density(a), to_density(b)), fidelity(a, b), 1e-8);
  EXPECT_THROW(fidelity(a, coherent_state(0.1, 20)), DimensionMismatch);
}

TEST(Fock, ReducedAndTraceOut) {
  const int d = 20;
  const FockVector prod = tensor(coherent_state(0.8, d), fock_state(2, d));
  const FockDensity r0 = reduced_mode(prod, 0);
  EXPECT_NEAR(r0.trace(), 1.0, 1e-12);
  EXPECT_GT(fidelity(coherent_state(0.8, d), r0), 1 - 1e-12);
  const FockDensity r1 = trace_out(to_density(prod), 0);
  EXPECT_NEAR(r1.mat(2, 2).real(), 1.0, 1e-12);
}

TEST(Fock, ProjectMode) {
  const int d = 20;
  const FockVector prod = tensor(fock_state(1, d), coherent_state(1.0, d));
  const FockVector rest = project_mode(prod, 0, 1);
  EXPECT_NEAR(rest.amps.squaredNorm(), 1.0, 1e-12);
  EXPECT_NEAR(project_mode(prod, 0, 0).amps.squaredNorm(), 0.0, 1e-15);
}

TEST(Fock, SubtractedSeriesMean) {
  // Direct evaluation of the m = 2 series at lambda*T = 0.5.
  const double lt = 0.5;
  double num = 0.0;
  double den = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int n = 2 * k;
    const double lc = std::lgamma(n + 3.0) - 0.5 * std::lgamma(n + 1.0) - std::lgamma(k + 2.0) +
                      (k + 1) * std::log(lt / 2.0);
    const double p = std::exp(2.0 * lc);
    num += n * p;
    den += p;
  }
  EXPECT_NEAR(mean_photon(subtracted_state(lt, 2, 120)), num / den, 1e-10);
}

TEST(Fock, PhotonDistribution) {
  const auto p = photon_distribution(coherent_state(1.2, 30));
  double s = 0.0;
  for (double x : p) s += x;
  EXPECT_NEAR(s, 1.0, 1e-10);
  EXPECT_NEAR(p[0], std::exp(-1.44), 1e-12);
}
