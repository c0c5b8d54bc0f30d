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

#include "catsim/subtraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/tools/minima.hpp>

#include "catsim/errors.hpp"

namespace catsim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log|c_n| and sign for the subtracted state, n = photons left in mode 1.
std::pair<double, double> sub_log_amp(double lam_t, int m, int n) {
  const int N = n + m;
  if (N % 2 != 0) return {kNegInf, 0.0};
  const int h = N / 2;
  if (lam_t == 0.0) return {h == 0 ? 0.0 : kNegInf, 1.0};
  const double lc = std::lgamma(N + 1.0) - 0.5 * std::lgamma(n + 1.0) - std::lgamma(h + 1.0) +
                    h * std::log(std::abs(lam_t) / 2.0);
  const double sg = (lam_t < 0.0 && h % 2 == 1) ? -1.0 : 1.0;
  return {lc, sg};
}

double binom_pmf(int n, int x, double eta) {
  if (x < 0 || x > n) return 0.0;
  if (eta >= 1.0) return x == n ? 1.0 : 0.0;
  if (eta <= 0.0) return x == 0 ? 1.0 : 0.0;
  return boost::math::pdf(boost::math::binomial_distribution<double>(n, eta), x);
}

}  // namespace

FockVector subtracted_state(double lam_t, int m, int dim) {
  if (!(std::abs(lam_t) < 1.0)) throw InvalidArgument("subtraction", "|lambda T| must be below 1");
  if (m < 0) throw InvalidArgument("subtraction", "negative photon count");
  if (lam_t == 0.0 && m > 0) throw ZeroProbabilityEvent("subtraction", "no photons reach the counter");
  // Amplitudes decay geometrically; collect until far below the peak.
  std::vector<double> lc;
  std::vector<double> sg;
  double peak = kNegInf;
  for (int n = 0; n < 20000; ++n) {
    const auto [l, s] = sub_log_amp(lam_t, m, n);
    lc.push_back(l);
    sg.push_back(s);
    peak = std::max(peak, l);
    if (n > 2 * m + 4 && l > kNegInf && l < peak - 40.0) break;
  }
  std::vector<double> p(lc.size());
  double total = 0.0;
  for (std::size_t n = 0; n < lc.size(); ++n) {
    p[n] = lc[n] == kNegInf ? 0.0 : std::exp(2.0 * (lc[n] - peak));
    total += p[n];
  }
  int need = static_cast<int>(lc.size());
  double tail = 0.0;
  for (int n = static_cast<int>(lc.size()) - 1; n >= 0; --n) {
    if (tail + p[n] >= kTailBound * total) break;
    tail += p[n];
    need = n;
  }
  need = std::max(need, m % 2 == 0 ? 1 : 2);
  if (dim <= 0) dim = need;
  if (dim < need) throw TruncationError("subtraction", "subtracted_state: dim below " + std::to_string(need));
  FockVector v{{dim}, Eigen::VectorXcd::Zero(dim)};
  for (int n = 0; n < dim && n < static_cast<int>(lc.size()); ++n) {
    if (p[n] > 0.0) v.amps[n] = sg[n] * std::exp(lc[n] - peak);
  }
  return canonical_phase(normalized(v));
}

double subtraction_probability(double lam, double T, int m) {
  if (!(std::abs(lam) < 1.0)) throw InvalidArgument("subtraction", "|lambda| must be below 1");
  if (!(T >= 0.0 && T <= 1.0)) throw InvalidArgument("subtraction", "T outside [0,1]");
  if (m < 0) return 0.0;
  const double lt = lam * T;
  const double den = 1.0 - lt * lt;
  const double pre = std::sqrt((1.0 - lam * lam) / den);
  double acc = 0.0;
  for (int k = 0; 2 * k <= m; ++k) {
    // m!/((m-2k)! k!^2) 2^{-2k} lam^{2m-2k} T^{m-2k} (1-T)^m / den^m
    const double lcomb = std::lgamma(m + 1.0) - std::lgamma(m - 2.0 * k + 1.0) - 2.0 * std::lgamma(k + 1.0) -
                         2.0 * k * std::log(2.0);
    const double term = std::exp(lcomb) * std::pow(lam * lam, m - k) * std::pow(T, m - 2 * k) *
                        std::pow(1.0 - T, m) / std::pow(den, m);
    acc += term;
  }
  return pre * acc;
}

std::vector<FockDensity> split_branches(const FockDensity& rho, double T) {
  if (rho.modes() != 1) throw ModeMismatch("subtraction", "split_branches: one-mode input expected");
  const int d = rho.dims[0];
  const double lt = T > 0.0 ? 0.5 * std::log(T) : kNegInf;
  const double lr = T < 1.0 ? 0.5 * std::log(1.0 - T) : kNegInf;
  // <k, j| B |n, 0> = sqrt(C(n, k)) T^{k/2} (1-T)^{j/2}, n = k + j.
  auto amp = [&](int k, int j) {
    if (j == 0 && T == 1.0) return 1.0;
    if (k == 0 && T == 0.0) return 1.0;
    const double lb = 0.5 * (std::lgamma(k + j + 1.0) - std::lgamma(k + 1.0) - std::lgamma(j + 1.0));
    return std::exp(lb + (k > 0 ? k * lt : 0.0) + (j > 0 ? j * lr : 0.0));
  };
  std::vector<FockDensity> out(d, FockDensity{{d}, Eigen::MatrixXcd::Zero(d, d)});
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k + j < d; ++k) {
      const double ak = amp(k, j);
      if (ak == 0.0) continue;
      for (int l = 0; l + j < d; ++l) out[j].mat(k, l) = ak * amp(l, j) * rho.mat(k + j, l + j);
    }
  }
  return out;
}

std::pair<FockDensity, double> subtracted_state_inefficient(const SubtractionConfig& cfg) {
  cfg.det.validate();
  if (cfg.det.dark_mean != 0.0 || cfg.nu != 1.0) {
    throw InvalidArgument("subtraction", "subtracted_state_inefficient: use the full model for d > 0 or nu < 1");
  }
  const double lt = cfg.lam * cfg.T;
  // True counts n >= m until the remaining probability is negligible.
  std::vector<std::pair<int, double>> terms;
  double cum = 0.0;
  double total = 0.0;
  for (int n = 0; n < 2000; ++n) {
    const double pn = subtraction_probability(cfg.lam, cfg.T, n);
    cum += pn;
    if (n >= cfg.m) {
      const double w = pn * binom_pmf(n, cfg.m, cfg.det.eta);
      if (w > 0.0) terms.emplace_back(n, w);
      total += w;
    }
    if (n > cfg.m && 1.0 - cum < 1e-13) break;
  }
  if (!(total > 1e-300)) throw ZeroProbabilityEvent("subtraction", "registered count has zero probability");
  int dim = cfg.dim;
  if (dim <= 0) {
    for (const auto& [n, w] : terms) {
      if (w > 1e-16 * total) dim = std::max(dim, subtracted_state(lt, n).dims[0]);
    }
  }
  FockDensity rho{{dim}, Eigen::MatrixXcd::Zero(dim, dim)};
  for (const auto& [n, w] : terms) {
    if (w <= 1e-16 * total) continue;
    // Fill every requested level when the caller's dim allows it.
    FockVector v = subtracted_state(lt, n);
    if (v.dims[0] < dim) v = subtracted_state(lt, n, dim);
    if (v.dims[0] > dim) {
      v.amps.conservativeResize(dim);
      v.dims[0] = dim;
    }
    v = pad(v, {dim});
    rho.mat += (w / total) * v.amps * v.amps.adjoint();
  }
  return {rho, total};
}

std::pair<FockDensity, double> subtraction_full_model(const SubtractionConfig& cfg) {
  cfg.det.validate();
  if (!(cfg.nu >= 0.0 && cfg.nu <= 1.0)) throw InvalidArgument("subtraction", "nu outside [0,1]");
  if (!(std::abs(cfg.lam) < 1.0)) throw InvalidArgument("subtraction", "|lambda| must be below 1");
  if (!(cfg.T >= 0.0 && cfg.T <= 1.0)) throw InvalidArgument("subtraction", "T outside [0,1]");
  if (cfg.m < 0) throw InvalidArgument("subtraction", "negative photon count");
  const int need = squeezed_dim(cfg.lam);
  const int d = cfg.dim > 0 ? cfg.dim : need;
  FockDensity rho = loss_channel(squeezed_vacuum(cfg.lam, d), cfg.nu, 0);
  const auto branches = split_branches(rho, cfg.T);
  FockDensity out{{d}, Eigen::MatrixXcd::Zero(d, d)};
  for (int j = 0; j < d; ++j) {
    const double w = registration_weight(j, cfg.m, cfg.det);
    if (w > 0.0) out.mat += w * branches[j].mat;
  }
  const double p = out.trace();
  if (!(p > 1e-300)) throw ZeroProbabilityEvent("subtraction", "registered count has zero probability");
  out.mat /= p;
  return {out, p};
}

VarianceDb subtraction_variances_db(double r, double nu) {
  const double vx = 0.5 * (1.0 - nu) + 0.5 * nu * std::exp(-2.0 * r);
  const double vp = 0.5 * (1.0 - nu) + 0.5 * nu * std::exp(2.0 * r);
  return {10.0 * std::log10(2.0 * vx), 10.0 * std::log10(2.0 * vp)};
}

FockVector kitten_state(double r, int dim) {
  const double t = std::tanh(r);
  const int need = std::max(4, squeezed_dim(t) + 2);
  if (dim <= 0) dim = need;
  if (dim < need) throw TruncationError("subtraction", "kitten_state: dim below " + std::to_string(need));
  FockVector v{{dim}, Eigen::VectorXcd::Zero(dim)};
  const double lpre = -1.5 * std::log(std::cosh(r));
  for (int k = 0; 2 * k + 1 < dim; ++k) {
    double l = lpre + 0.5 * std::lgamma(2.0 * k + 2.0) - std::lgamma(k + 1.0);
    double sgn = 1.0;
    if (k > 0) {
      if (t == 0.0) break;
      l += k * std::log(std::abs(t) / 2.0);
      if (t < 0.0 && k % 2 == 1) sgn = -1.0;
    }
    v.amps[2 * k + 1] = sgn * std::exp(l);
  }
  return normalized(v);
}

double kitten_fidelity(double r, double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("subtraction", "kitten_fidelity: alpha must be positive");
  const double a2 = alpha * alpha;
  const double c = std::cosh(r);
  return 2.0 * a2 * std::exp(a2 * (std::tanh(r) - 1.0)) / (c * c * c * (-std::expm1(-2.0 * a2)));
}

double kitten_optimal_r(double alpha) {
  const auto res = boost::math::tools::brent_find_minima([&](double r) { return -kitten_fidelity(r, alpha); },
                                                         -2.0, 2.0, 50);
  return res.first;
}

FockDensity kitten_mixed(double p, double r, int dim) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("subtraction", "kitten_mixed: p outside [0,1]");
  const FockVector one = kitten_state(r, dim);
  const int d = one.dims[0];
  // The same squeezer acting on vacuum: lambda = -tanh(-r).
  const FockVector zero = squeezed_vacuum(std::tanh(r), d);
  FockDensity rho{{d}, p * zero.amps * zero.amps.adjoint() + (1.0 - p) * one.amps * one.amps.adjoint()};
  return rho;
}

}  // namespace catsim
