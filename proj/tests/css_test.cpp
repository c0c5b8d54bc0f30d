#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "catsim/css.hpp"
#include "catsim/errors.hpp"
#include "catsim/fock.hpp"

using namespace catsim;

namespace {

constexpr double kPi = std::numbers::pi;

Css random_css(int terms, int modes, double amax, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Css s{modes, {}};
  for (int k = 0; k < terms; ++k) {
    CssTerm t{cplx(u(rng), u(rng)), {}};
    for (int m = 0; m < modes; ++m) t.amps.push_back(cplx(u(rng), u(rng)) * (amax / std::sqrt(2.0)));
    s.terms.push_back(t);
  }
  return s;
}

// Unnormalized Fock expansion, for comparing norms.
Eigen::VectorXcd raw_fock(const Css& s, int d) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<long>(std::pow(d, s.modes)));
  for (const auto& t : s.terms) {
    Eigen::VectorXcd k = coherent_state(t.amps[0], d).amps;
    for (int m = 1; m < s.modes; ++m) {
      const Eigen::VectorXcd c = coherent_state(t.amps[m], d).amps;
      Eigen::VectorXcd nk(k.size() * d);
      for (long i = 0; i < k.size(); ++i) nk.segment(i * d, d) = k[i] * c;
      k = nk;
    }
    v += t.coeff * k;
  }
  return v;
}

}  // namespace

TEST(Css, CoherentOverlaps) {
  EXPECT_NEAR(std::abs(coherent_overlap(cplx(0.3, 0.7), cplx(0.3, 0.7)) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::norm(coherent_overlap(-2.0, 2.0)), 1.125e-7, 1e-9);
  const cplx a(0.4, -0.3);
  const cplx b(-0.2, 0.9);
  const cplx ref = coherent_state(a, 30).amps.dot(coherent_state(b, 30).amps);
  EXPECT_NEAR(std::abs(coherent_overlap(a, b) - ref), 0.0, 1e-12);
}

TEST(Css, InnerMatchesFock) {
  const Css a = random_css(3, 1, 2.0, 1);
  const Css b = random_css(3, 1, 2.0, 2);
  const cplx ref = raw_fock(a, 40).dot(raw_fock(b, 40));
  EXPECT_NEAR(std::abs(css_inner(a, b) - ref), 0.0, 1e-9);
  const double f = std::norm(css_inner(css_normalize(a), css_normalize(b)));
  EXPECT_NEAR(f, fidelity(css_to_fock(a, 40), css_to_fock(b, 40)), 1e-8);
  EXPECT_THROW(css_inner(a, random_css(1, 2, 1.0, 3)), ModeMismatch);
}

TEST(Css, NormMatchesFockForFourTerms) {
  const Css s = random_css(4, 2, 2.0, 5);
  EXPECT_NEAR(css_norm2(s), raw_fock(s, 32).squaredNorm(), 1e-8);
  EXPECT_NEAR(css_norm2(css_normalize(s)), 1.0, 1e-12);
}

TEST(Css, CatMatchesFock) {
  for (double phi : {0.0, kPi, 1.1}) {
    const FockVector a = css_to_fock(css_cat(1.8, phi), 40);
    EXPECT_GT(fidelity(a, cat_state(1.8, phi, 40)), 1 - 1e-9);
  }
  const FockVector coh = css_to_fock(css_coherent({cplx(0.5, 1.0)}), 30);
  EXPECT_GT(fidelity(coh, coherent_state(cplx(0.5, 1.0), 30)), 1 - 1e-12);
}

TEST(Css, CrossRepresentationUpToThree) {
  for (unsigned seed = 10; seed < 14; ++seed) {
    const Css s = css_normalize(random_css(3, 1, 3.0, seed));
    const FockVector f = css_to_fock(s, 60);
    const FockVector g = css_to_fock(s, 60);
    EXPECT_NEAR(std::abs(inner(f, g)), 1.0, 1e-12);
    const Css t = css_coherent({cplx(0.7, -0.4)});
    EXPECT_NEAR(std::norm(css_inner(t, s)), fidelity(css_to_fock(t, 60), f), 1e-7);
  }
}

TEST(Css, BeamSplitter) {
  const Css s = css_coherent({2.0, 0.0});
  const Css h = css_beam_splitter(s, 0, 1, 0.5);
  EXPECT_NEAR(std::abs(h.terms[0].amps[0] - 2.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h.terms[0].amps[1] - 2.0 / std::sqrt(2.0)), 0.0, 1e-15);
  const Css r = random_css(3, 2, 1.5, 21);
  const Css same = css_beam_splitter(r, 0, 1, 1.0);
  for (std::size_t k = 0; k < r.size(); ++k) EXPECT_EQ(same.terms[k].amps, r.terms[k].amps);
  EXPECT_NEAR(css_norm2(css_beam_splitter(r, 1, 0, 0.3)), css_norm2(r), 1e-12);
}

TEST(Css, BeamSplitterMatchesFock) {
  const int d = 26;
  const Css s = css_normalize(random_css(3, 2, 1.5, 31));
  const FockVector viaCss = css_to_fock(css_beam_splitter(s, 0, 1, 0.35), d);
  const FockVector viaFock = beam_splitter(css_to_fock(s, d), 0.35, 0, 1);
  EXPECT_GT(fidelity(viaCss, viaFock), 1 - 1e-8);
}

TEST(Css, GrowthSplittersTermByTerm) {
  // Kittens alpha = beta = 1 and |sqrt 2> through both splitters.
  const double a = 1.0;
  const double g = std::sqrt(2.0);
  Css s = css_tensor(css_tensor(css_cat(a, 0.0), css_cat(a, 0.0)), css_coherent({g}));
  s = css_beam_splitter(css_beam_splitter(s, 0, 1, 0.5), 2, 0, 0.5);
  // Equal-sign terms end with |1,+-sqrt2,1>; mixed-sign ones with vacuum in a counted mode.
  for (const auto& t : s.terms) {
    const bool vac0 = std::abs(t.amps[0]) < 1e-12;
    const bool vac2 = std::abs(t.amps[2]) < 1e-12;
    if (!vac0 && !vac2) {
      EXPECT_NEAR(std::abs(t.amps[0] - 1.0), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(t.amps[2] - 1.0), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(t.amps[1]), std::sqrt(2.0), 1e-12);
    } else {
      EXPECT_NEAR(std::abs(t.amps[1]), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(t.amps[vac0 ? 2 : 0]), 2.0, 1e-12);
    }
  }
  const int d = 24;
  const FockVector in = tensor(tensor(cat_state(a, 0.0, d), cat_state(a, 0.0, d)), coherent_state(g, d));
  const FockVector out = beam_splitter(beam_splitter(in, 0.5, 0, 1), 0.5, 2, 0);
  EXPECT_GT(fidelity(out, css_to_fock(s, d)), 1 - 1e-8);
}

TEST(Css, Displace) {
  const Css s = css_cat(1.2, 0.5);
  const Css same = css_displace(s, 0, 0.0);
  EXPECT_NEAR(std::abs(css_inner(s, same) - 1.0), 0.0, 1e-14);
  const Css moved = css_displace(css_coherent({0.0}), 0, cplx(0.3, 0.4));
  EXPECT_NEAR(std::norm(css_inner(moved, css_coherent({cplx(0.3, 0.4)}))), 1.0, 1e-14);
  EXPECT_NEAR(css_norm2(css_displace(s, 0, cplx(-0.7, 2.0))), 1.0, 1e-12);
  // Displacement matches the Fock-basis operator exp(delta a^dag - conj(delta) a).
  const int d = 40;
  const cplx delta(0.5, -0.2);
  const Eigen::MatrixXd a = annihilation(d + 20);
  Eigen::MatrixXcd gen = delta * a.transpose().cast<cplx>() - std::conj(delta) * a.cast<cplx>();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(gen);
  const Eigen::MatrixXcd u =
      es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() * es.eigenvectors().inverse();
  Eigen::VectorXcd big = Eigen::VectorXcd::Zero(d + 20);
  big.head(d) = css_to_fock(s, d).amps;
  const Eigen::VectorXcd viaOp = (u * big).head(d);
  const FockVector viaCss = css_to_fock(css_displace(s, 0, delta), d);
  EXPECT_NEAR(std::abs(viaOp.dot(viaCss.amps)), 1.0, 1e-8);
}

TEST(Css, DisplacedPairBecomesCat) {
  const double beta = 30.0;
  const double theta = 2.0 * std::asin(0.1);
  const cplx e = std::polar(1.0, -theta);
  Css pair{1, {CssTerm{1.0, {beta * e}}, CssTerm{1.0, {cplx(beta)}}}};
  pair = css_normalize(css_displace(pair, 0, -beta * (1.0 + e) / 2.0));
  const cplx gamma = beta * (1.0 - e) / 2.0;
  EXPECT_NEAR(std::abs(gamma), 3.0, 1e-12);
  double best = 0.0;
  for (int k = 0; k < 3600; ++k) best = std::max(best, std::norm(css_inner(css_cat(gamma, 2 * kPi * k / 3600), pair)));
  EXPECT_GT(best, 0.999);
}

TEST(Css, ProjectFock) {
  auto [rest, w] = css_project_fock(css_coherent({cplx(1.1, 0.2)}), 0, 0);
  EXPECT_EQ(rest.modes, 0);
  EXPECT_NEAR(w, std::exp(-std::norm(cplx(1.1, 0.2))), 1e-14);
  const Css s = css_normalize(css_tensor(css_cat(1.5, 0.3), css_coherent({0.8})));
  double total = 0.0;
  for (int n = 0; n <= 40; ++n) total += css_project_fock(s, 0, n).second;
  EXPECT_NEAR(total, 1.0, 1e-9);
  auto [two, p] = css_project_fock(s, 0, 3);
  EXPECT_EQ(two.modes, 1);
  EXPECT_NEAR(css_norm2(two), p, 1e-14);
}

TEST(Css, DedupMergesAndCaps) {
  Css s{1, {CssTerm{1.0, {0.5}}, CssTerm{2.0, {0.5}}, CssTerm{1.0, {-0.5}}}};
  const Css d = css_dedup(s);
  EXPECT_EQ(d.size(), 2u);
  Css big{1, {}};
  for (std::size_t k = 0; k <= kCssTermCap; ++k) big.terms.push_back(CssTerm{1.0, {cplx(0.001 * k)}});
  EXPECT_THROW(css_dedup(big), TermCountOverflow);
}

TEST(Css, ToFockTruncation) { EXPECT_THROW(css_to_fock(css_coherent({3.0}), 10), TruncationError); }
