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

#include "catsim/backaction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "catsim/errors.hpp"

namespace catsim {

namespace {

Eigen::Matrix2d splitter_map(double T) {
  const double t = std::sqrt(T);
  const double q = std::sqrt(1.0 - T);
  Eigen::Matrix2d m;
  m << t, q, q, -t;
  return m;
}

Eigen::Matrix2d two_mode_map(double r) {
  Eigen::Matrix2d l;
  l << std::cosh(r), std::sinh(r), std::sinh(r), std::cosh(r);
  return l;
}

void validate(const BackactionParams& p) {
  if (!(p.T >= 0.0 && p.T <= 1.0)) throw InvalidArgument("backaction", "T outside [0,1]");
  if (p.m < 0) throw InvalidArgument("backaction", "negative photon count");
  if (!std::isfinite(p.r) || !std::isfinite(p.s)) throw InvalidArgument("backaction", "non-finite squeezing");
}

// Everything needed to evaluate psi_m(x1) cheaply.
struct Kernel {
  double a12 = 0.0;
  double b = 1.0;
  double width2 = 1.0;  // a11 - a12^2 / b
  double pref = 0.0;
  double xscale = 1.0;
  int m = 0;
  QuadGrid gh;

  double operator()(double x1) const {
    const double x = x1 * xscale;
    const double c = -a12 * x / b;
    const double sc = std::sqrt(2.0 / b);
    double acc = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) acc += gh.weights[i] * hermite_poly(m, c + sc * gh.nodes[i]);
    return pref * sc * acc * std::exp(-0.5 * width2 * x * x);
  }
};

Kernel make_kernel(const BackactionParams& p) {
  validate(p);
  const Eigen::Matrix2d a = ba_quadratic_form(p);
  Kernel k;
  k.m = p.m;
  k.a12 = a(0, 1);
  k.b = 1.0 + a(1, 1);
  k.width2 = a(0, 0) - a(0, 1) * a(0, 1) / k.b;
  const double det = a.determinant();
  if (!(det > 0.0) || !(k.width2 > 0.0)) throw ZeroProbabilityEvent("backaction", "degenerate Gaussian");
  k.pref = std::pow(det, 0.25) / std::sqrt(std::numbers::pi);
  if (p.variant == Variant::song) {
    k.xscale = std::exp(p.s);
    k.pref *= std::exp(0.5 * p.s);
  }
  // The x2 integrand is a degree-m polynomial times a Gaussian, so this
  // rule is exact.
  k.gh = gauss_hermite_classical(std::max(4, p.m / 2 + 2));
  return k;
}

QuadGrid auto_grid(const Kernel& k) {
  const double sigma = 1.0 / (std::sqrt(k.width2) * k.xscale);
  const double h = std::min(sigma, 1.0) / 5.0;
  double half = sigma * (6.0 + std::sqrt(2.0 * k.m + 1.0));
  double peak = 0.0;
  for (int i = 0; i <= 400; ++i) peak = std::max(peak, std::abs(k(half * i / 400.0)));
  for (int it = 0; it < 60; ++it) {
    const double edge = std::abs(k(half));
    if (edge * edge <= 1e-14 * peak * peak || edge == 0.0) break;
    half *= 1.25;
  }
  double step = h;
  if (2.0 * half / step > 2e5) step = 2.0 * half / 2e5;
  return trapezoid(-half, half, step);
}

}  // namespace

Eigen::Matrix2d ba_quadratic_form(const BackactionParams& p) {
  validate(p);
  const Eigen::Matrix2d m = splitter_map(p.T);
  Eigen::Matrix2d a0;
  switch (p.variant) {
    case Variant::song: {
      const double c = std::cosh(2.0 * p.r);
      const double s = std::sinh(2.0 * p.r);
      a0 << c, s, s, c;
      break;
    }
    case Variant::improved: {
      const Eigen::Matrix2d l = two_mode_map(p.r);
      Eigen::Matrix2d d = Eigen::Matrix2d::Zero();
      d(0, 0) = std::exp(2.0 * p.s);
      d(1, 1) = 1.0;
      a0 = l.transpose() * d * l;
      break;
    }
    case Variant::simplified:
      a0 << std::exp(2.0 * p.r), 0.0, 0.0, std::exp(2.0 * p.s);
      break;
  }
  return m.transpose() * a0 * m;
}

double ba_amplitude(const BackactionParams& p, double x1) { return make_kernel(p)(x1); }

BaState ba_conditioned_state(const BackactionParams& p, const QuadGrid* grid) {
  const Kernel k = make_kernel(p);
  BaState out;
  out.grid = grid ? *grid : auto_grid(k);
  out.psi.resize(out.grid.size());
  double p_m = 0.0;
  for (std::size_t i = 0; i < out.grid.size(); ++i) {
    out.psi[i] = k(out.grid.nodes[i]);
    p_m += out.grid.weights[i] * out.psi[i] * out.psi[i];
  }
  out.probability = p_m;
  if (!(p_m > 1e-300)) throw ZeroProbabilityEvent("backaction", "P(m) vanishes");
  const double nrm = std::sqrt(p_m);
  for (double& v : out.psi) v /= nrm;
  return out;
}

FidProb ba_fidelity_probability(const BackactionParams& p, double alpha, int parity) {
  const BaState st = ba_conditioned_state(p);
  // psi_m has the parity of m; against a cat of the other parity the overlap
  // vanishes identically.
  const int mp = p.m % 2 == 0 ? 1 : -1;
  if (mp != (parity >= 0 ? 1 : -1)) return {0.0, st.probability};
  double ov = 0.0;
  for (std::size_t i = 0; i < st.grid.size(); ++i) {
    ov += st.grid.weights[i] * st.psi[i] * cat_wavefunction(alpha, parity, Basis::x, st.grid.nodes[i]).real();
  }
  return {ov * ov, st.probability};
}

double ba_fidelity(const BackactionParams& p, double alpha, int parity) {
  return ba_fidelity_probability(p, alpha, parity).fidelity;
}

SchemeReport ba_tradeoff_point(const BackactionParams& p, double alpha) {
  const FidProb fp = ba_fidelity_probability(p, alpha, 1);
  SchemeReport rep;
  rep.fidelity = fp.fidelity;
  rep.set_probability(fp.probability);
  rep.params = {{"r", p.r}, {"s", p.s}, {"T", p.T}, {"m", static_cast<double>(p.m)}};
  rep.target_alpha = alpha;
  rep.target_phase = 0.0;
  rep.notes.push_back(std::string("variant=") + variant_name(p.variant));
  return rep;
}

double squeeze_db(double s) { return 10.0 * std::log10(std::exp(-2.0 * std::abs(s))); }

double db_to_squeeze(double db) { return std::abs(db) * std::log(10.0) / 20.0; }

double bae_transmissivity(double r) {
  const double c = std::cos(0.5 * std::asin(std::tanh(r)));
  return c * c;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::song: return "song";
    case Variant::improved: return "improved";
    case Variant::simplified: return "simplified";
  }
  return "unknown";
}

}  // namespace catsim
