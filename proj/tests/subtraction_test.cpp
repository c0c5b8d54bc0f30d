#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "catsim/channels.hpp"
#include "catsim/errors.hpp"
#include "catsim/fock.hpp"
#include "catsim/subtraction.hpp"

using namespace catsim;

namespace {

constexpr double kPi = std::numbers::pi;

FockVector even_cat(double a, int d) { return cat_state(a, 0.0, d); }
FockVector odd_cat(double a, int d) { return cat_state(a, kPi, d); }

// Squeeze, split, project the tapped mode onto m.
double pipeline_probability(double lam, double T, int m, int d) {
  const FockVector two = beam_splitter(tensor(squeezed_vacuum(lam, d), vacuum(d)), T, 0, 1);
  return project_mode(two, 1, m).amps.squaredNorm();
}

}  // namespace

TEST(Subtraction, ZeroCountIsSqueezedVacuum) {
  const FockVector a = subtracted_state(0.4, 0, 40);
  EXPECT_GT(fidelity(a, squeezed_vacuum(0.4, 40)), 1 - 1e-12);
}

TEST(Subtraction, ParityLaw) {
  for (int m = 0; m <= 7; ++m) {
    const FockVector v = subtracted_state(0.5, m, 60);
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    for (int n = m % 2 == 0 ? 1 : 0; n < 60; n += 2) EXPECT_EQ(std::abs(v.amps[n]), 0.0) << m << " " << n;
  }
}

TEST(Subtraction, SmallProductExpansion) {
  const double lt = 0.01;
  const FockVector v = subtracted_state(lt, 4, 20);
  FockVector approx{{20}, Eigen::VectorXcd::Zero(20)};
  approx.amps[0] = 1.0;
  approx.amps[2] = lt * 5.0 / std::sqrt(2.0);
  approx = normalized(approx);
  EXPECT_NEAR(std::abs(v.amps[2] / v.amps[0]), lt * 5.0 / std::sqrt(2.0), 1e-6);
  EXPECT_GT(fidelity(v, approx), 1 - 1e-6);
}

TEST(Subtraction, IdealFidelities) {
  const int d = 60;
  EXPECT_NEAR(fidelity(subtracted_state(0.613, 2, d), even_cat(2.0, d)), 0.891, 2e-3);
  EXPECT_NEAR(fidelity(subtracted_state(0.469, 4, d), even_cat(2.0, d)), 0.950, 2e-3);
  EXPECT_NEAR(fidelity(subtracted_state(0.380, 6, d), even_cat(2.0, d)), 0.971, 2e-3);
  EXPECT_NEAR(fidelity(squeezed_vacuum(0.883, 200), even_cat(2.0, 200)), 0.588, 2e-3);
}

TEST(Subtraction, SqueezedVacuumOrthogonalToOddCats) {
  for (double a : {0.5, 1.0, 2.0}) {
    EXPECT_LT(fidelity(squeezed_vacuum(0.6, 60), odd_cat(a, 60)), 1e-12);
  }
}

TEST(Subtraction, ProbabilityTrivialLimits) {
  EXPECT_DOUBLE_EQ(subtraction_probability(0.0, 0.5, 0), 1.0);
  EXPECT_DOUBLE_EQ(subtraction_probability(0.0, 0.5, 3), 0.0);
  EXPECT_DOUBLE_EQ(subtraction_probability(0.6, 1.0, 2), 0.0);
  EXPECT_NEAR(subtraction_probability(0.6, 1.0, 0), 1.0, 1e-15);
}

TEST(Subtraction, ProbabilitiesSumToOne) {
  double s = 0.0;
  for (int m = 0; m <= 60; ++m) s += subtraction_probability(0.7, 0.8, m);
  EXPECT_NEAR(s, 1.0, 1e-8);
}

TEST(Subtraction, ProbabilityMatchesFockPipeline) {
  // Larger lambda needs more than 60 levels for the splitter to stay inside
  // the truncation bound; 0.9 needs over 200.
  for (double lam : {-0.6, 0.2, 0.5, 0.6}) {
    for (double T : {0.3, 0.8}) {
      for (int m : {0, 1, 2, 3, 5}) {
        EXPECT_NEAR(subtraction_probability(lam, T, m), pipeline_probability(lam, T, m, 60), 1e-7)
            << lam << " " << T << " " << m;
      }
    }
  }
  EXPECT_NEAR(subtraction_probability(0.8, 0.6, 2), pipeline_probability(0.8, 0.6, 2, 100), 1e-7);
}

TEST(Subtraction, ConditionedStateMatchesFockPipeline) {
  const int d = 60;
  const FockVector two = beam_splitter(tensor(squeezed_vacuum(0.6, d), vacuum(d)), 0.7, 0, 1);
  const FockVector out = normalized(project_mode(two, 1, 3));
  EXPECT_GT(fidelity(out, subtracted_state(0.42, 3, d)), 1 - 1e-10);
}

TEST(Subtraction, InefficientUnitEfficiencyIsPure) {
  SubtractionConfig cfg;
  cfg.lam = 0.7;
  cfg.T = 0.8;
  cfg.m = 2;
  cfg.dim = 60;
  const auto [rho, p] = subtracted_state_inefficient(cfg);
  EXPECT_NEAR(p, subtraction_probability(0.7, 0.8, 2), 1e-12);
  EXPECT_GT(fidelity(subtracted_state(0.56, 2, 60), rho), 1 - 1e-10);
}

TEST(Subtraction, InefficientWeightsMatchDetectorPmf) {
  SubtractionConfig cfg;
  cfg.lam = 0.7;
  cfg.T = 0.6;
  cfg.det.eta = 0.7;
  std::vector<double> pn;
  for (int n = 0; n <= 150; ++n) pn.push_back(subtraction_probability(cfg.lam, cfg.T, n));
  const std::vector<double> reg = detector_pmf(pn, cfg.det);
  for (int m : {0, 1, 2, 4}) {
    cfg.m = m;
    EXPECT_NEAR(subtracted_state_inefficient(cfg).second, reg[m], 1e-9) << m;
  }
}

TEST(Subtraction, InefficiencyRecoversIdealMaximumNearUnitT) {
  // With T close to 1 extra tapped photons are rare, so eta < 1 only costs
  // probability.
  const double lt_opt[] = {0.613, 0.469, 0.380};
  const int ms[] = {2, 4, 6};
  for (int i = 0; i < 3; ++i) {
    const double ideal = fidelity(subtracted_state(lt_opt[i], ms[i], 60), even_cat(2.0, 60));
    SubtractionConfig cfg;
    cfg.T = 0.999;
    cfg.lam = lt_opt[i] / cfg.T;
    cfg.m = ms[i];
    cfg.det.eta = 0.9;
    cfg.dim = 60;
    const auto [rho, p] = subtracted_state_inefficient(cfg);
    EXPECT_NEAR(fidelity(even_cat(2.0, 60), rho), ideal, 1e-3) << ms[i];
  }
}

TEST(Subtraction, InefficientRejectsDarkCounts) {
  SubtractionConfig cfg;
  cfg.lam = 0.5;
  cfg.T = 0.5;
  cfg.det.dark_mean = 0.1;
  EXPECT_THROW(subtracted_state_inefficient(cfg), InvalidArgument);
}

TEST(Subtraction, FullModelIdealLimit) {
  SubtractionConfig cfg;
  cfg.lam = 0.7;
  cfg.T = 0.8;
  cfg.m = 3;
  cfg.dim = 70;
  const auto [rho, p] = subtraction_full_model(cfg);
  EXPECT_NEAR(p, subtraction_probability(0.7, 0.8, 3), 1e-7);
  EXPECT_GT(fidelity(subtracted_state(0.56, 3, 70), rho), 1 - 1e-7);
  EXPECT_NEAR(rho.trace(), 1.0, 1e-10);
}

TEST(Subtraction, FullModelMatchesInefficientMixture) {
  SubtractionConfig cfg;
  cfg.lam = 0.6;
  cfg.T = 0.7;
  cfg.m = 2;
  cfg.det.eta = 0.75;
  cfg.dim = 60;
  const auto [a, pa] = subtraction_full_model(cfg);
  const auto [b, pb] = subtracted_state_inefficient(cfg);
  EXPECT_NEAR(pa, pb, 1e-9);
  EXPECT_LT((a.mat - b.mat).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Subtraction, FullModelMonotoneInImperfection) {
  const double lam = 0.5, T = 0.9;
  const int m = 2;
  const double darks[] = {0.0, 1e-3, 1e-2};
  const double nus[] = {1.0, 0.95, 0.85};
  double f[3][3];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      SubtractionConfig cfg;
      cfg.lam = lam;
      cfg.T = T;
      cfg.m = m;
      cfg.nu = nus[j];
      cfg.det.eta = 0.9;
      cfg.det.dark_mean = darks[i];
      const FockDensity rho = subtraction_full_model(cfg).first;
      f[i][j] = fidelity(even_cat(1.5, rho.dims[0]), rho);
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i > 0) EXPECT_LE(f[i][j], f[i - 1][j] + 1e-12);
      if (j > 0) EXPECT_LE(f[i][j], f[i][j - 1] + 1e-12);
    }
  }
}

TEST(Subtraction, RepresentativeExperiments) {
  SubtractionConfig e1;
  e1.lam = lam_from_r(-0.514);
  e1.T = 0.922;
  e1.m = 1;
  e1.nu = 0.85;
  e1.det = {0.8, 5e-4};
  const auto [r1, p1] = subtraction_full_model(e1);
  EXPECT_NEAR(fidelity(odd_cat(1.25, r1.dims[0]), r1), 0.727, 0.01);
  EXPECT_NEAR(p1, 0.0143, 1e-3);

  SubtractionConfig e2;
  e2.lam = lam_from_r(-0.722);
  e2.T = 0.982;
  e2.m = 2;
  e2.nu = 0.95;
  e2.det = {0.9, 2e-4};
  const auto [r2, p2] = subtraction_full_model(e2);
  EXPECT_NEAR(fidelity(even_cat(2.0, r2.dims[0]), r2), 0.737, 0.01);
  EXPECT_NEAR(p2, 2.1e-4, 3e-5);
}

TEST(Subtraction, VarianceRelations) {
  const VarianceDb pure = subtraction_variances_db(0.5, 1.0);
  EXPECT_NEAR(pure.x_db, 10 * std::log10(std::exp(-1.0)), 1e-12);
  EXPECT_NEAR(pure.p_db, 10 * std::log10(std::exp(1.0)), 1e-12);
  const VarianceDb none = subtraction_variances_db(0.7, 0.0);
  EXPECT_NEAR(none.x_db, 0.0, 1e-12);
  const VarianceDb e2 = subtraction_variances_db(0.722, 0.95);
  EXPECT_NEAR(e2.p_db, 6.11, 0.05);
  EXPECT_NEAR(e2.x_db, -5.62, 0.05);
}

TEST(Subtraction, InvalidArguments) {
  EXPECT_THROW(subtracted_state(1.0, 2), InvalidArgument);
  EXPECT_THROW(subtracted_state(0.0, 2), ZeroProbabilityEvent);
  EXPECT_THROW(subtracted_state(0.8, 2, 4), TruncationError);
  EXPECT_THROW(subtraction_probability(0.5, 1.5, 1), InvalidArgument);
}

TEST(Kitten, ZeroSqueezingIsSinglePhoton) {
  const FockVector k = kitten_state(0.0, 10);
  EXPECT_NEAR(std::abs(k.amps[1]), 1.0, 1e-15);
  for (double a : {0.3, 1.0, 1.7}) {
    EXPECT_NEAR(kitten_fidelity(0.0, a), fidelity(fock_state(1, 40), odd_cat(a, 40)), 1e-9);
  }
}

TEST(Kitten, ClosedFormMatchesFock) {
  for (double r : {-0.3, 0.1, 0.31, 0.6}) {
    for (double a : {0.5, 1.0, 1.5}) {
      const int d = 80;
      EXPECT_NEAR(kitten_fidelity(r, a), fidelity(kitten_state(r, d), odd_cat(a, d)), 1e-7) << r << " " << a;
    }
  }
}

TEST(Kitten, IsSqueezedSinglePhoton) {
  const FockVector k = kitten_state(0.4, 60);
  const FockVector s = apply_squeeze(fock_state(1, 60), -0.4);
  EXPECT_GT(fidelity(k, s), 1 - 1e-10);
}

TEST(Kitten, PaperValues) {
  EXPECT_NEAR(kitten_fidelity(0.31, 1.0), 0.997, 1e-3);
  const double r = kitten_optimal_r(0.5);
  const double f = kitten_fidelity(r, 0.5);
  const int d = 30;
  EXPECT_NEAR(fidelity(odd_cat(0.5, d), kitten_mixed(0.4, r, d)), 0.60, 0.01);
  EXPECT_NEAR(fidelity(odd_cat(0.5, d), kitten_mixed(0.05, r, d)), 0.950, 0.005);
  EXPECT_NEAR(fidelity(odd_cat(0.5, d), kitten_mixed(0.4, r, d)), 0.6 * f, 1e-9);
}

TEST(Kitten, MixedLimits) {
  const FockDensity rho = kitten_mixed(0.0, 0.2, 30);
  EXPECT_GT(fidelity(kitten_state(0.2, 30), rho), 1 - 1e-12);
  const FockDensity mix = kitten_mixed(0.3, 0.2, 30);
  EXPECT_NEAR(mix.trace(), 1.0, 1e-12);
  EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(mix.mat).eigenvalues().minCoeff(), -1e-12);
  EXPECT_THROW(kitten_mixed(1.2, 0.2, 30), InvalidArgument);
}
