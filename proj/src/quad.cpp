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

#include "catsim/quad.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <Eigen/Dense>

#include "catsim/errors.hpp"

namespace catsim {

namespace {

constexpr double kPiQuarter = 0.75112554446494248286;  // pi^{-1/4}

std::mutex g_rule_mutex;
std::map<int, QuadGrid> g_rules;

QuadGrid build_gh(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  QuadGrid g;
  g.kind = GridKind::gauss_hermite;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      const auto f = hermite_fns(n, x);
      const double d = std::sqrt(2.0 * n) * f[n - 1] - x * f[n];
      if (d == 0.0) break;
      x -= f[n] / d;
    }
    // Christoffel numbers, written with Hermite functions so that the
    // e^{x^2} factor never appears explicitly.
    const auto f = hermite_fns(n - 1, x);
    double s = 0.0;
    for (double v : f) s += v * v;
    g.nodes[i] = x;
    g.weights[i] = 1.0 / s;
  }
  return g;
}

}  // namespace

double QuadGrid::integrate(const std::function<double(double)>& f) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
  return acc;
}

std::vector<double> hermite_fns(int mmax, double x) {
  if (mmax > 500) throw OverflowGuard("quad", "hermite_fn: index above 500");
  if (mmax < 0) throw InvalidArgument("quad", "hermite_fn: negative index");
  std::vector<double> out(mmax + 1);
  out[0] = kPiQuarter * std::exp(-0.5 * x * x);
  if (mmax >= 1) out[1] = std::numbers::sqrt2 * x * out[0];
  for (int n = 1; n < mmax; ++n) {
    out[n + 1] = std::sqrt(2.0 / (n + 1)) * x * out[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * out[n - 1];
  }
  return out;
}

double hermite_fn(int m, double x) { return hermite_fns(m, x).back(); }

double hermite_poly(int m, double x) {
  if (m > 500) throw OverflowGuard("quad", "hermite_poly: index above 500");
  double p0 = kPiQuarter;
  if (m == 0) return p0;
  double p1 = std::numbers::sqrt2 * x * p0;
  for (int n = 1; n < m; ++n) {
    const double p2 = std::sqrt(2.0 / (n + 1)) * x * p1 - std::sqrt(static_cast<double>(n) / (n + 1)) * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

QuadGrid gauss_hermite(int n, double scale) {
  if (n < 2) throw InvalidArgument("quad", "gauss_hermite: need at least 2 nodes");
  QuadGrid g;
  {
    std::lock_guard<std::mutex> lock(g_rule_mutex);
    auto it = g_rules.find(n);
    if (it == g_rules.end()) it = g_rules.emplace(n, build_gh(n)).first;
    g = it->second;
  }
  if (scale != 1.0) {
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      g.nodes[i] *= scale;
      g.weights[i] *= scale;
    }
  }
  return g;
}

QuadGrid gauss_hermite_classical(int n) {
  QuadGrid g = gauss_hermite(n);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) g.weights[i] *= std::exp(-g.nodes[i] * g.nodes[i]);
  return g;
}

QuadGrid trapezoid(double lo, double hi, double h) {
  if (!(hi > lo) || !(h > 0.0)) throw InvalidArgument("quad", "trapezoid: bad interval or spacing");
  const int n = static_cast<int>(std::ceil((hi - lo) / h));
  const double step = (hi - lo) / n;
  QuadGrid g;
  g.kind = GridKind::trapezoid;
  g.nodes.resize(n + 1);
  g.weights.assign(n + 1, step);
  for (int i = 0; i <= n; ++i) g.nodes[i] = lo + i * step;
  g.weights.front() = g.weights.back() = 0.5 * step;
  return g;
}

double integrate_gh(const std::function<double(double)>& f, int n0, double tol, double scale) {
  double prev = gauss_hermite(n0, scale).integrate(f);
  for (int n = 2 * n0; n <= 8 * n0; n *= 2) {
    const double cur = gauss_hermite(n, scale).integrate(f);
    if (std::abs(cur - prev) < tol) return cur;
    prev = cur;
  }
  return prev;
}

std::complex<double> cat_wavefunction(double alpha, int parity, Basis basis, double v) {
  if (!(alpha > 0.0)) throw InvalidArgument("quad", "cat_wavefunction: alpha must be positive");
  const double sgn = parity >= 0 ? 1.0 : -1.0;
  const double norm = std::sqrt(2.0 + 2.0 * sgn * std::exp(-2.0 * alpha * alpha));
  const double c = std::numbers::sqrt2 * alpha;
  if (basis == Basis::x) {
    return kPiQuarter / norm * (std::exp(-0.5 * (v + c) * (v + c)) + sgn * std::exp(-0.5 * (v - c) * (v - c)));
  }
  const double g = 2.0 * kPiQuarter / norm * std::exp(-0.5 * v * v);
  if (sgn > 0) return g * std::cos(c * v);
  return std::complex<double>(0.0, g * std::sin(c * v));
}

std::complex<double> coherent_wavefunction_x(std::complex<double> alpha, double x) {
  const std::complex<double> e = -0.5 * x * x + std::numbers::sqrt2 * alpha * x - 0.5 * alpha * alpha -
                                 0.5 * std::norm(alpha);
  return kPiQuarter * std::exp(e);
}

}  // namespace catsim
