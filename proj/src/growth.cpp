// Copyright 2026 The catsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "catsim/growth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>

#include "catsim/errors.hpp"
#include "catsim/subtraction.hpp"

namespace catsim {

namespace {

void validate(const GrowthConfig& cfg) {
  if (!(cfg.alpha > 0.0) || !(cfg.beta > 0.0)) throw InvalidArgument("growth", "alpha and beta must be positive");
  if (cfg.fock_cutoff < 1) throw InvalidArgument("growth", "fock_cutoff must be positive");
  cfg.det.validate();
}

// Three-mode CSS right before counting.
Css growth_css(const GrowthConfig& cfg) {
  const double a2 = cfg.alpha * cfg.alpha + cfg.beta * cfg.beta;
  const double gamma = 2.0 * cfg.alpha * cfg.beta / std::sqrt(a2);
  Css s = css_tensor(css_tensor(css_cat(cfg.alpha, cfg.phi), css_cat(cfg.beta, cfg.varphi)), css_coherent({gamma}));
  s = css_beam_splitter(s, 0, 1, cfg.beta * cfg.beta / a2);
  return css_beam_splitter(s, 2, 0, 0.5);
}

// Probability of at least one registered count given n photons.
double accept_weight(int n, const DetectorModel& det) {
  return 1.0 - std::pow(1.0 - det.eta, n) * std::exp(-det.dark_mean);
}

// <a| E |b> for E = sum_n w(n)|n><n| over n <= cutoff.
cplx povm_element(cplx a, cplx b, const std::vector<double>& w) {
  const cplx ab = std::conj(a) * b;
  cplx term = std::exp(-0.5 * (std::norm(a) + std::norm(b)));
  cplx acc = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) {
    if (n > 0) term *= ab / static_cast<double>(n);
    acc += w[n] * term;
  }
  return acc;
}

// Output-mode operator sum_jk R(k, j) |b_j><b_k| after acceptance.
struct Accepted {
  std::vector<cplx> b;
  Eigen::MatrixXcd r;  // r(k, j)
  double trace = 0.0;
};

Accepted accept(const GrowthConfig& cfg, bool closed_ideal) {
  const Css s = growth_css(cfg);
  const int nt = static_cast<int>(s.size());
  std::vector<double> w(cfg.fock_cutoff + 1);
  for (int n = 0; n <= cfg.fock_cutoff; ++n) w[n] = accept_weight(n, cfg.det);
  if (!closed_ideal) {
    double worst = 0.0;
    for (const auto& t : s.terms) {
      for (int mode : {0, 2}) {
        const double mu = std::norm(t.amps[mode]);
        if (mu > 0.0) worst = std::max(worst, boost::math::gamma_p(cfg.fock_cutoff + 1.0, mu));
      }
    }
    if (worst > 1e-10) {
      throw CutoffInsufficient("growth", "photon-number tail " + std::to_string(worst) + " beyond fock_cutoff");
    }
  }
  auto elem = [&](cplx a, cplx b) {
    if (closed_ideal) return coherent_overlap(a, b) - std::exp(-0.5 * (std::norm(a) + std::norm(b)));
    return povm_element(a, b, w);
  };
  Accepted out;
  out.r.resize(nt, nt);
  for (const auto& t : s.terms) out.b.push_back(t.amps[1]);
  cplx tr = 0.0;
  for (int k = 0; k < nt; ++k) {
    for (int j = 0; j < nt; ++j) {
      const auto& tk = s.terms[k];
      const auto& tj = s.terms[j];
      out.r(k, j) = tj.coeff * std::conj(tk.coeff) * elem(tk.amps[0], tj.amps[0]) * elem(tk.amps[2], tj.amps[2]);
      tr += out.r(k, j) * coherent_overlap(out.b[k], out.b[j]);
    }
  }
  out.trace = tr.real();
  if (!(out.trace > 1e-300)) throw ZeroProbabilityEvent("growth", "acceptance probability vanishes");
  return out;
}

int min_dim(double mu_max, double tail) {
  int d = 8;
  while (mu_max > 0.0 && boost::math::gamma_p(static_cast<double>(d), mu_max) > tail) ++d;
  return d;
}

// One round on two identical inputs held as weighted pure components.
struct Mixture {
  std::vector<double> w;
  std::vector<FockVector> v;
};

std::pair<FockDensity, double> grow_round(const Mixture& in, double alpha_in, int dim, const DetectorModel& det) {
  const double gamma = std::sqrt(2.0) * alpha_in;
  const FockVector coh = coherent_state(gamma, dim);
  std::vector<double> aw(dim);
  for (int n = 0; n < dim; ++n) aw[n] = accept_weight(n, det);
  FockDensity rho{{dim}, Eigen::MatrixXcd::Zero(dim, dim)};
  const long d2 = static_cast<long>(dim) * dim;
  for (std::size_t i = 0; i < in.v.size(); ++i) {
    for (std::size_t j = 0; j < in.v.size(); ++j) {
      FockVector psi = tensor(tensor(in.v[i], in.v[j]), coh);
      psi = beam_splitter(psi, 0.5, 0, 1);
      psi = beam_splitter(psi, 0.5, 2, 0);
      const double wij = in.w[i] * in.w[j];
      Eigen::MatrixXcd x(dim, (dim - 1) * (dim - 1));
      long col = 0;
      for (int n0 = 1; n0 < dim; ++n0) {
        for (int n2 = 1; n2 < dim; ++n2, ++col) {
          const double s = std::sqrt(wij * aw[n0] * aw[n2]);
          for (int n1 = 0; n1 < dim; ++n1) x(n1, col) = s * psi.amps[n0 * d2 + static_cast<long>(n1) * dim + n2];
        }
      }
      rho.mat.noalias() += x * x.adjoint();
    }
  }
  const double p = rho.trace();
  if (!(p > 1e-300)) throw ZeroProbabilityEvent("growth", "acceptance probability vanishes");
  rho.mat /= p;
  return {rho, p};
}

Mixture eigen_components(const FockDensity& rho, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho.mat + rho.mat.adjoint()));
  const double top = es.eigenvalues().maxCoeff();
  Mixture m;
  double kept = 0.0;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    if (es.eigenvalues()[k] > rel_tol * top) kept += es.eigenvalues()[k];
  }
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    const double ev = es.eigenvalues()[k];
    if (ev <= rel_tol * top) continue;
    m.w.push_back(ev / kept);
    m.v.push_back(FockVector{rho.dims, es.eigenvectors().col(k)});
  }
  return m;
}

FockVector resized(const FockVector& v, int dim) {
  FockVector out{{dim}, Eigen::VectorXcd::Zero(dim)};
  const int n = std::min(dim, v.dims[0]);
  out.amps.head(n) = v.amps.head(n);
  return out;
}

}  // namespace

GrowthIdeal grow_ideal(const GrowthConfig& cfg) {
  validate(cfg);
  const Css s = growth_css(cfg);
  const double a = std::sqrt(cfg.alpha * cfg.alpha + cfg.beta * cfg.beta);
  // Terms with vacuum in a counted mode are removed by the projector;
  // the survivors share their counted-mode amplitudes.
  Css out{1, {}};
  for (const auto& t : s.terms) {
    if (std::abs(t.amps[0]) > 1e-12 && std::abs(t.amps[2]) > 1e-12) out.terms.push_back(CssTerm{t.coeff, {t.amps[1]}});
  }
  GrowthIdeal g;
  g.amplitude = a;
  g.probability = accept(cfg, true).trace;
  g.output = css_normalize(css_dedup(out));
  return g;
}

double grow_probability_formula(double alpha, double beta, double phi, double varphi) {
  const double a2 = alpha * alpha;
  const double b2 = beta * beta;
  const double q = -std::expm1(-2.0 * a2 * b2 / (a2 + b2));
  return q * q * (1.0 + std::cos(phi + varphi) * std::exp(-2.0 * (a2 + b2))) /
         (2.0 * (1.0 + std::cos(phi) * std::exp(-2.0 * a2)) * (1.0 + std::cos(varphi) * std::exp(-2.0 * b2)));
}

SchemeReport grow_with_detectors(const GrowthConfig& cfg, double target_alpha, int target_parity) {
  validate(cfg);
  const Accepted acc = accept(cfg, false);
  const Css target = css_cat(target_alpha, target_parity >= 0 ? 0.0 : std::numbers::pi);
  std::vector<cplx> o(acc.b.size());
  for (std::size_t j = 0; j < acc.b.size(); ++j) o[j] = css_inner(target, css_coherent({acc.b[j]}));
  cplx num = 0.0;
  for (std::size_t k = 0; k < o.size(); ++k) {
    for (std::size_t j = 0; j < o.size(); ++j) num += acc.r(k, j) * o[j] * std::conj(o[k]);
  }
  SchemeReport rep;
  rep.fidelity = std::clamp(num.real() / acc.trace, 0.0, 1.0);
  rep.set_probability(acc.trace);
  rep.params = {{"alpha", cfg.alpha},       {"beta", cfg.beta},          {"phi", cfg.phi},
                {"varphi", cfg.varphi},     {"eta", cfg.det.eta},        {"d", cfg.det.dark_mean},
                {"fock_cutoff", static_cast<double>(cfg.fock_cutoff)}};
  rep.target_alpha = target_alpha;
  rep.target_phase = target_parity >= 0 ? 0.0 : std::numbers::pi;
  return rep;
}

FockDensity grow_accept_density(const GrowthConfig& cfg, int dim) {
  validate(cfg);
  const Accepted acc = accept(cfg, false);
  double amax = 0.0;
  for (cplx b : acc.b) amax = std::max(amax, std::abs(b));
  if (dim <= 0) dim = default_dim(amax);
  std::vector<Eigen::VectorXcd> kets;
  for (cplx b : acc.b) kets.push_back(coherent_state(b, dim).amps);
  FockDensity rho{{dim}, Eigen::MatrixXcd::Zero(dim, dim)};
  for (std::size_t k = 0; k < kets.size(); ++k) {
    for (std::size_t j = 0; j < kets.size(); ++j) rho.mat += acc.r(k, j) * kets[j] * kets[k].adjoint();
  }
  rho.mat /= rho.trace();
  return rho;
}

std::vector<SchemeReport> grow_iterate(const KittenSpec& initial, int iterations, const DetectorModel& det) {
  det.validate();
  if (!(initial.p >= 0.0 && initial.p <= 1.0)) throw InvalidArgument("growth", "vacuum fraction outside [0,1]");
  if (!(initial.alpha0 > 0.0)) throw InvalidArgument("growth", "alpha0 must be positive");
  if (iterations < 0) throw InvalidArgument("growth", "negative iteration count");
  const double r = kitten_optimal_r(initial.alpha0);
  const FockVector k1 = kitten_state(r);
  int dim = std::max(k1.dims[0], default_dim(initial.alpha0));
  Mixture mix;
  mix.w = {1.0 - initial.p, initial.p};
  mix.v = {resized(k1, dim), resized(squeezed_vacuum(std::tanh(r), squeezed_dim(std::tanh(r))), dim)};
  std::vector<SchemeReport> out;
  {
    FockDensity rho{{dim}, Eigen::MatrixXcd::Zero(dim, dim)};
    for (std::size_t i = 0; i < mix.v.size(); ++i) rho.mat += mix.w[i] * mix.v[i].amps * mix.v[i].amps.adjoint();
    SchemeReport rep;
    rep.fidelity = fidelity(cat_state(initial.alpha0, std::numbers::pi, dim), rho);
    rep.set_probability(1.0);
    rep.params = {{"iteration", 0.0}, {"p", initial.p}, {"r", r}, {"cumulative", 1.0}, {"dim", double(dim)}};
    rep.target_alpha = initial.alpha0;
    rep.target_phase = std::numbers::pi;
    out.push_back(rep);
  }
  double alpha = initial.alpha0;
  double cumulative = 1.0;
  for (int it = 1; it <= iterations; ++it) {
    // Largest amplitude any mode reaches is 2 alpha.
    const int need = min_dim(4.0 * alpha * alpha, 1e-16) + 4;
    dim = std::max(need, 16);
    for (auto& v : mix.v) v = resized(v, dim);
    auto [rho, p] = grow_round(mix, alpha, dim, det);
    alpha *= std::sqrt(2.0);
    cumulative = p * cumulative * cumulative;
    SchemeReport rep;
    rep.fidelity = fidelity(cat_state(alpha, 0.0, dim), rho);
    rep.set_probability(p);
    rep.params = {{"iteration", double(it)}, {"p", initial.p}, {"r", r}, {"cumulative", cumulative}, {"dim", double(dim)}};
    rep.target_alpha = alpha;
    rep.target_phase = 0.0;
    out.push_back(rep);
    if (it < iterations) mix = eigen_components(rho, 1e-12);
  }
  return out;
}

}  // namespace catsim
