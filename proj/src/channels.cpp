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

#include "catsim/channels.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/poisson.hpp>

#include "catsim/errors.hpp"

namespace catsim {

namespace {

double binom_pmf(int n, int x, double eta) {
  if (x < 0 || x > n) return 0.0;
  if (eta <= 0.0) return x == 0 ? 1.0 : 0.0;
  if (eta >= 1.0) return x == n ? 1.0 : 0.0;
  return boost::math::pdf(boost::math::binomial_distribution<double>(n, eta), x);
}

long dims_product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1L, std::multiplies<long>());
}

}  // namespace

void DetectorModel::validate() const {
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidArgument("channels", "detector efficiency outside [0,1]");
  if (!(dark_mean >= 0.0)) throw InvalidArgument("channels", "negative dark-count mean");
}

FockDensity loss_channel(const FockDensity& rho, double eta, int mode) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidArgument("channels", "loss_channel: eta outside [0,1]");
  if (mode < 0 || mode >= rho.modes()) throw ModeMismatch("channels", "loss_channel: mode out of range");
  if (eta == 1.0) return rho;
  const int d = rho.dims[mode];
  FockDensity out{rho.dims, Eigen::MatrixXcd::Zero(rho.mat.rows(), rho.mat.cols())};
  for (int k = 0; k < d; ++k) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
    for (int n = k; n < d; ++n) a(n - k, n) = std::sqrt(binom_pmf(n, k, 1.0 - eta));
    if (rho.modes() == 1) {
      out.mat += a * rho.mat * a.adjoint();
    } else {
      out.mat += apply_mode_operator(rho, a, mode).mat;
    }
  }
  return out;
}

FockDensity loss_channel(const FockVector& psi, double eta, int mode) {
  return loss_channel(to_density(psi), eta, mode);
}

double cat_loss_fidelity(double alpha, double eta, int parity) {
  if (!(alpha > 0.0)) throw InvalidArgument("channels", "cat_loss_fidelity: alpha must be positive");
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidArgument("channels", "cat_loss_fidelity: eta outside [0,1]");
  const double s = parity >= 0 ? 1.0 : -1.0;
  const double a2 = alpha * alpha;
  auto n_of = [](double x2, double sg) { return 2.0 + 2.0 * sg * std::exp(-2.0 * x2); };
  const double n_in = n_of(a2, s);
  const double n_out = n_of(a2 * eta, s);
  // Weight of the flipped-parity component.
  const double flip = 0.5 * n_of(a2 * eta, -s) / n_in * (-std::expm1(-2.0 * a2 * (1.0 - eta)));
  const double se = std::sqrt(eta);
  const double half = -0.5 * a2 * (1.0 + eta);
  const double amp = std::exp(half + a2 * se) + s * std::exp(half - a2 * se);
  return (1.0 - flip) * 4.0 * amp * amp / (n_in * n_out);
}

std::vector<double> poisson_pmf(double d, double tail) {
  if (!(d >= 0.0)) throw InvalidArgument("channels", "poisson_pmf: negative mean");
  if (d == 0.0) return {1.0};
  std::vector<double> p;
  double cum = 0.0;
  double term = std::exp(-d);
  for (int q = 0; q < 100000; ++q) {
    if (q > 0) term *= d / q;
    p.push_back(term);
    cum += term;
    if (1.0 - cum < tail && q >= d) break;
  }
  return p;
}

double registration_weight(int n, int m, const DetectorModel& det) {
  if (m < 0 || n < 0) return 0.0;
  const auto dark = poisson_pmf(det.dark_mean);
  double w = 0.0;
  for (int x = 0; x <= std::min(n, m); ++x) {
    const int q = m - x;
    if (q >= static_cast<int>(dark.size())) continue;
    w += binom_pmf(n, x, det.eta) * dark[q];
  }
  return w;
}

std::vector<double> detector_pmf(const std::vector<double>& pn, const DetectorModel& det) {
  det.validate();
  double total = 0.0;
  for (double p : pn) {
    if (p < -1e-12 || !std::isfinite(p)) throw InvalidDistribution("channels", "detector_pmf: negative entry");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidDistribution("channels", "detector_pmf: input does not sum to 1");
  const int nmax = static_cast<int>(pn.size()) - 1;
  std::vector<double> reg(pn.size(), 0.0);
  for (int n = 0; n <= nmax; ++n) {
    for (int x = 0; x <= n; ++x) reg[x] += binom_pmf(n, x, det.eta) * pn[n];
  }
  const auto dark = poisson_pmf(det.dark_mean);
  std::vector<double> out(reg.size() + dark.size() - 1, 0.0);
  for (std::size_t x = 0; x < reg.size(); ++x) {
    for (std::size_t q = 0; q < dark.size(); ++q) out[x + q] += reg[x] * dark[q];
  }
  return out;
}

std::pair<FockDensity, double> condition_on_count(const FockDensity& rho, int mode, int m,
                                                  const DetectorModel& det) {
  det.validate();
  if (m < 0) throw InvalidArgument("channels", "condition_on_count: negative count");
  if (mode < 0 || mode >= rho.modes()) throw ModeMismatch("channels", "condition_on_count: mode out of range");
  const int d = rho.dims[mode];
  std::vector<int> rest = rho.dims;
  rest.erase(rest.begin() + mode);
  const long nrest = dims_product(rest);
  long post = 1;
  for (int k = mode + 1; k < rho.modes(); ++k) post *= rho.dims[k];
  auto full = [&](long r, int n) { return (r / post) * d * post + n * post + r % post; };
  FockDensity out{rest, Eigen::MatrixXcd::Zero(nrest, nrest)};
  for (int n = 0; n < d; ++n) {
    const double w = registration_weight(n, m, det);
    if (w == 0.0) continue;
    for (long x = 0; x < nrest; ++x) {
      for (long y = 0; y < nrest; ++y) out.mat(x, y) += w * rho.mat(full(x, n), full(y, n));
    }
  }
  const double p = out.trace();
  if (!(p > 1e-300)) throw ZeroProbabilityEvent("channels", "condition_on_count: event has zero probability");
  out.mat /= p;
  return {out, p};
}

std::pair<FockDensity, double> condition_on_count(const FockVector& psi, int mode, int m,
                                                  const DetectorModel& det) {
  det.validate();
  if (m < 0) throw InvalidArgument("channels", "condition_on_count: negative count");
  if (mode < 0 || mode >= psi.modes()) throw ModeMismatch("channels", "condition_on_count: mode out of range");
  const int d = psi.dims[mode];
  FockDensity out;
  out.dims = psi.dims;
  out.dims.erase(out.dims.begin() + mode);
  const long nrest = dims_product(out.dims);
  out.mat = Eigen::MatrixXcd::Zero(nrest, nrest);
  for (int n = 0; n < d; ++n) {
    const double w = registration_weight(n, m, det);
    if (w == 0.0) continue;
    const FockVector v = project_mode(psi, mode, n);
    out.mat += w * v.amps * v.amps.adjoint();
  }
  const double p = out.trace();
  if (!(p > 1e-300)) throw ZeroProbabilityEvent("channels", "condition_on_count: event has zero probability");
  out.mat /= p;
  return {out, p};
}

TomographyCost tomography_cost(int max_photon, double p_m) {
  if (max_photon < 0) throw InvalidArgument("channels", "tomography_cost: negative photon number");
  if (!(p_m > 0.0 && p_m <= 1.0)) throw InvalidArgument("channels", "tomography_cost: probability outside (0,1]");
  TomographyCost c;
  c.phases = max_photon + 1;
  c.bin_width_bound = std::numbers::pi / (2.0 * std::sqrt(2.0 * max_photon + 1.0));
  c.counts_per_histogram = 4.0 / (p_m * p_m);
  c.total = c.counts_per_histogram * c.phases;
  return c;
}

}  // namespace catsim
