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

#include "catsim/kerr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/numeric/odeint.hpp>

#include "catsim/errors.hpp"
#include "catsim/quad.hpp"

namespace catsim {

namespace {

constexpr double kHbar = 1.054571817e-34;
constexpr double kLightSpeed = 2.99792458e8;
constexpr cplx kI(0.0, 1.0);

// log(|a|^n / sqrt(n!)) and the matching phase, without e^{-|a|^2/2}.
cplx log_coherent_coeff(cplx a, int n) {
  const double r = std::abs(a);
  if (n == 0) return 0.0;
  if (r == 0.0) return {-1e300, 0.0};
  return {n * std::log(r) - 0.5 * std::lgamma(n + 1.0), n * std::arg(a)};
}

int kerr_dim(cplx alpha, int dim) { return dim > 0 ? dim : default_dim(std::abs(alpha)); }

// i^{k} for integer k.
cplx i_pow(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return 1.0;
    case 1: return kI;
    case 2: return -1.0;
    default: return -kI;
  }
}

}  // namespace

FockVector kerr_evolve_ideal(cplx alpha, double chi_t, int dim) {
  FockVector v = coherent_state(alpha, kerr_dim(alpha, dim));
  for (Eigen::Index n = 0; n < v.amps.size(); ++n) {
    // Reduce n^2 chi_t mod 2 pi in a way that keeps precision for large n.
    v.amps[n] *= std::polar(1.0, std::fmod(static_cast<double>(n * n) * chi_t, 2.0 * std::numbers::pi));
  }
  return v;
}

FockDensity kerr_exact_evolve(cplx alpha, double g, double tau, int dim) {
  if (g < 0.0) throw InvalidArgument("kerr", "negative loss ratio");
  const int d = kerr_dim(alpha, dim);
  coherent_state(alpha, d);  // truncation check
  FockDensity rho{{d}, Eigen::MatrixXcd(d, d)};
  const double a2 = std::norm(alpha);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const int k = m - n;
      const cplx z(g, -2.0 * k);
      cplx f = 0.0;
      if (std::abs(z) > 0.0) f = g * (1.0 - std::exp(-z * tau)) / z;
      const cplx lg = log_coherent_coeff(alpha, m) + std::conj(log_coherent_coeff(alpha, n)) -
                      0.5 * g * (m + n) * tau - a2 * (1.0 - f);
      const double phase = std::fmod(tau * (static_cast<double>(m) * m - static_cast<double>(n) * n),
                                     2.0 * std::numbers::pi);
      rho.mat(m, n) = std::exp(lg) * std::polar(1.0, phase);
    }
  }
  return rho;
}

FockDensity kerr_master_evolve(cplx alpha, double g, double tau, int dim) {
  if (g < 0.0) throw InvalidArgument("kerr", "negative loss ratio");
  namespace ode = boost::numeric::odeint;
  const int d = kerr_dim(alpha, dim);
  const FockVector psi = coherent_state(alpha, d);
  // Interaction-picture variables u with
  //   rho_mn = e^{i tau (m^2 - n^2)} e^{-g (m+n) tau / 2} u_mn,
  //   du_mn/dtau = g sqrt((m+1)(n+1)) e^{2 i tau (m-n)} e^{-g tau} u_{m+1,n+1}.
  // Stored as interleaved real and imaginary parts, row-major.
  using State = std::vector<double>;
  State u(2 * static_cast<std::size_t>(d) * d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const cplx v = psi.amps[m] * std::conj(psi.amps[n]);
      u[2 * (m * d + n)] = v.real();
      u[2 * (m * d + n) + 1] = v.imag();
    }
  }
  std::vector<double> root(d + 1);
  for (int k = 0; k <= d; ++k) root[k] = std::sqrt(static_cast<double>(k));
  auto rhs = [&](const State& x, State& dx, double t) {
    const double damp = g * std::exp(-g * t);
    for (int m = 0; m < d; ++m) {
      for (int n = 0; n < d; ++n) {
        const std::size_t o = 2 * (static_cast<std::size_t>(m) * d + n);
        if (m + 1 >= d || n + 1 >= d || g == 0.0) {
          dx[o] = dx[o + 1] = 0.0;
          continue;
        }
        const std::size_t s = 2 * (static_cast<std::size_t>(m + 1) * d + n + 1);
        const cplx w = damp * root[m + 1] * root[n + 1] * std::polar(1.0, 2.0 * t * (m - n));
        const cplx v = w * cplx(x[s], x[s + 1]);
        dx[o] = v.real();
        dx[o + 1] = v.imag();
      }
    }
  };
  if (tau > 0.0 && g > 0.0) {
    try {
      auto stepper = ode::make_controlled(1e-13, 1e-9, ode::runge_kutta_dopri5<State>());
      ode::integrate_adaptive(stepper, rhs, u, 0.0, tau, std::min(1e-3, tau));
    } catch (const std::exception& e) {
      throw StepSizeFailure("kerr", std::string("kerr_master_evolve: ") + e.what());
    }
    for (double v : u) {
      if (!std::isfinite(v)) throw StepSizeFailure("kerr", "kerr_master_evolve: non-finite state");
    }
  }
  FockDensity rho{{d}, Eigen::MatrixXcd(d, d)};
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const std::size_t o = 2 * (static_cast<std::size_t>(m) * d + n);
      const double phase = std::fmod(tau * (static_cast<double>(m) * m - static_cast<double>(n) * n),
                                     2.0 * std::numbers::pi);
      rho.mat(m, n) = cplx(u[o], u[o + 1]) * std::exp(-0.5 * g * (m + n) * tau) * std::polar(1.0, phase);
    }
  }
  return rho;
}

FockDensity kerr_q_series_density(double beta, double g, QSeriesForm form, int dim) {
  if (!(beta > 0.0)) throw InvalidArgument("kerr", "kerr_q_series_density: beta must be positive");
  const int d = dim > 0 ? dim : default_dim(beta);
  const double b2 = beta * beta;
  const double lb = std::log(beta);
  const double pi = std::numbers::pi;
  FockDensity rho{{d}, Eigen::MatrixXcd::Zero(d, d)};
  // Phase and damping of the (p, q) term shared by both forms.
  auto term_phase = [&](int p, int q) {
    return i_pow(static_cast<long>(p) * p - static_cast<long>(q) * q) * std::exp(-pi * g * (p + q) / 4.0);
  };
  for (int P = 0; P < d; ++P) {
    for (int Q = 0; Q < d; ++Q) {
      const int k = P - Q;
      const double half_fact = 0.5 * (std::lgamma(P + 1.0) + std::lgamma(Q + 1.0));
      if (form == QSeriesForm::corrected) {
        cplx x;
        if (k == 0) {
          x = std::exp(-pi * g / 2.0);
        } else {
          x = (g * ((k % 2 == 0) ? 1.0 : -1.0) * std::exp(-pi * g / 2.0) - 2.0 * kI * double(k)) /
              (g - 2.0 * kI * double(k));
        }
        const double lmag = (P + Q) * lb - half_fact;
        rho.mat(P, Q) = std::exp(lmag) * term_phase(P, Q) * std::exp(-b2 * x);
        continue;
      }
      // Printed form: prefactor e^{|a|^2}, exponent -|a|^2 Y_k. Expanding
      // e^{|a|^2 (2 - Y_k)} in powers of |a|^2 feeds lower (p, q) terms into
      // the (P, Q) coefficient.
      cplx y;
      if (k == 0) {
        y = std::exp(-g / 2.0);
      } else {
        y = (g * i_pow(k) * std::exp(-g / 2.0) + 2.0 * kI * double(k)) / (g + 2.0 * kI * double(k));
      }
      const cplx c = 2.0 - y;
      cplx acc = 0.0;
      for (int j = 0; j <= std::min(P, Q); ++j) {
        const int p = P - j;
        const int q = Q - j;
        const double lmag = (p + q) * lb - std::lgamma(p + 1.0) - std::lgamma(q + 1.0) - std::lgamma(j + 1.0) + half_fact;
        const cplx cj = j == 0 ? cplx(1.0) : std::pow(c, j);
        acc += std::exp(lmag) * term_phase(p, q) * cj;
      }
      rho.mat(P, Q) = pi * acc;
    }
  }
  return rho;
}

SchemeReport kerr_loss_fidelity(double beta, double g, bool optimize_input, KerrMethod method) {
  if (!(beta > 0.0)) throw InvalidArgument("kerr", "kerr_loss_fidelity: beta must be positive");
  if (g < 0.0) throw InvalidArgument("kerr", "kerr_loss_fidelity: negative loss ratio");
  const double tau = std::numbers::pi / 2.0;
  const int d = default_dim(optimize_input ? 2.0 * beta : beta);
  const FockVector target = css_to_fock(css_cat(beta, std::numbers::pi / 2.0), d);
  auto fid = [&](double a) {
    FockDensity rho;
    switch (method) {
      case KerrMethod::integrator: rho = kerr_master_evolve(a, g, tau, d); break;
      case KerrMethod::exact: rho = kerr_exact_evolve(a, g, tau, d); break;
      case KerrMethod::series_corrected: rho = kerr_q_series_density(a, g, QSeriesForm::corrected, d); break;
      case KerrMethod::series_printed: rho = kerr_q_series_density(a, g, QSeriesForm::printed, d); break;
    }
    return target.amps.dot(rho.mat * target.amps).real();
  };
  SchemeReport rep;
  rep.target_alpha = beta;
  rep.target_phase = std::numbers::pi / 2.0;
  rep.set_probability(1.0);
  if (!optimize_input) {
    rep.fidelity = fid(beta);
    rep.params = {{"input_alpha", beta}, {"gamma_over_chi", g}};
    return rep;
  }
  OptProblem prob;
  prob.objective = [&](const std::vector<double>& x) { return FidProb{fid(x[0]), 1.0}; };
  prob.box = {{0.5 * beta, 2.0 * beta}};
  prob.names = {"input_alpha"};
  prob.top_k = 2;
  prob.refine_probability = false;
  prob.max_evals = 200;
  SchemeReport best = maximize_lex(prob);
  rep.fidelity = best.fidelity;
  rep.params = {{"input_alpha", best.param("input_alpha")}, {"gamma_over_chi", g}};
  return rep;
}

double kerr_chi(const KerrMaterial& mat) {
  if (mat.chi > 0.0) return mat.chi;
  if (!mat.n2) throw MissingField("kerr", "material: n2 missing");
  if (!mat.a_eff) throw MissingField("kerr", "material: a_eff missing");
  if (!mat.t_pulse) throw MissingField("kerr", "material: t_pulse missing");
  double omega = 0.0;
  if (mat.omega) {
    omega = *mat.omega;
  } else if (mat.wavelength) {
    omega = 2.0 * std::numbers::pi * kLightSpeed / *mat.wavelength;
  } else {
    throw MissingField("kerr", "material: omega or wavelength missing");
  }
  return kHbar * omega * omega * *mat.n2 / (*mat.a_eff * *mat.t_pulse);
}

double kerr_gamma(const KerrMaterial& mat) {
  if (mat.gamma > 0.0) return mat.gamma;
  if (!mat.loss_db_per_km) throw MissingField("kerr", "material: gamma and loss_db_per_km both missing");
  const double per_m = *mat.loss_db_per_km * std::log(10.0) / 10.0 / 1000.0;
  return per_m * kLightSpeed / mat.group_index.value_or(1.468);
}

double material_ratio(const KerrMaterial& mat) { return kerr_gamma(mat) / kerr_chi(mat); }

KerrMaterial fused_silica() {
  KerrMaterial m;
  m.gamma = 1.79e5;
  m.n2 = 2.6e-20;
  m.a_eff = 7e-12;
  m.t_pulse = 1e-15;
  m.wavelength = 1550e-9;
  m.loss_db_per_km = 0.2;
  return m;
}

KerrMaterial chalcogenide() {
  KerrMaterial m = fused_silica();
  // Same dB-to-rate conversion as the quoted silica figure.
  m.gamma = 1.79e5 * (100.0 / 0.2);
  m.n2 = 2e-18;
  m.loss_db_per_km = 100.0;
  return m;
}

std::vector<cplx> small_kerr_coefficients(int N) {
  if (N < 2) throw InvalidArgument("kerr", "small_kerr_coefficients: N must be at least 2");
  std::vector<cplx> c(N);
  for (int n = 1; n <= N; ++n) {
    cplx acc = 0.0;
    for (int k = 0; k < N; ++k) {
      const double ph = -std::numbers::pi * k * (2.0 * n - k) / N;
      acc += (k % 2 == 0 ? 1.0 : -1.0) * std::polar(1.0, ph);
    }
    c[n - 1] = acc / double(N);
  }
  return c;
}

Css small_kerr_state(double alpha_i, int N) {
  const auto c = small_kerr_coefficients(N);
  Css s{1, {}};
  for (int n = 1; n <= N; ++n) {
    s.terms.push_back({c[n - 1], {-alpha_i * std::polar(1.0, 2.0 * std::numbers::pi * n / N)}});
  }
  return s;
}

double small_kerr_fidelity_at(const SmallKerrResult& r, double phi) {
  return std::norm(css_inner(css_cat(r.target_alpha, phi), r.state));
}

SmallKerrResult small_kerr_condition(double alpha_i, int N, double x) {
  if (N < 2 || N % 2 != 0) throw InvalidArgument("kerr", "small_kerr_condition: N must be even and >= 2");
  if (!(alpha_i > 0.0)) throw InvalidArgument("kerr", "small_kerr_condition: alpha_i must be positive");
  Css s = css_tensor(small_kerr_state(alpha_i, N), css_coherent({0.0}));
  s = css_beam_splitter(s, 0, 1, 0.5);
  Css out{1, {}};
  for (const auto& t : s.terms) out.terms.push_back({t.coeff * coherent_wavefunction_x(t.amps[1], x), {t.amps[0]}});
  SmallKerrResult r;
  r.state = css_normalize(out);
  r.target_alpha = cplx(0.0, alpha_i / std::numbers::sqrt2);
  const cplx o_minus = css_inner(css_coherent({-r.target_alpha}), r.state);
  const cplx o_plus = css_inner(css_coherent({r.target_alpha}), r.state);
  const cplx ov = coherent_overlap(-r.target_alpha, r.target_alpha);
  auto f = [&](double phi) {
    const cplx e = std::polar(1.0, phi);
    const double n = 2.0 + 2.0 * (e * ov).real();
    return std::norm(o_minus + std::conj(e) * o_plus) / n;
  };
  const int scan = 360;
  int best = 0;
  double fbest = -1.0;
  for (int k = 0; k < scan; ++k) {
    const double v = f(2.0 * std::numbers::pi * k / scan);
    if (v > fbest) {
      fbest = v;
      best = k;
    }
  }
  const double h = 2.0 * std::numbers::pi / scan;
  const auto res = boost::math::tools::brent_find_minima([&](double p) { return -f(p); }, (best - 1) * h,
                                                         (best + 1) * h, 40);
  double phi = res.first;
  double fv = -res.second;
  if (fv < fbest) {
    phi = best * h;
    fv = fbest;
  }
  r.phi_star = std::remainder(phi, 2.0 * std::numbers::pi);
  r.fidelity = fv;
  return r;
}

double small_kerr_probability(double alpha_i, int N, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("kerr", "small_kerr_probability: delta must be positive");
  Css s = css_tensor(small_kerr_state(alpha_i, N), css_coherent({0.0}));
  s = css_beam_splitter(s, 0, 1, 0.5);
  const std::size_t n = s.size();
  Eigen::MatrixXcd gram(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) gram(a, b) = coherent_overlap(s.terms[a].amps[0], s.terms[b].amps[0]);
  }
  const double z = css_norm2(s);
  double reach = 0.0;
  for (const auto& t : s.terms) reach = std::max(reach, std::abs(std::numbers::sqrt2 * t.amps[1].real()));
  const double hi = std::min(delta, reach + 12.0);
  auto density = [&](double x) {
    Eigen::VectorXcd c(n);
    for (std::size_t a = 0; a < n; ++a) c[a] = s.terms[a].coeff * coherent_wavefunction_x(s.terms[a].amps[1], x);
    return c.dot(gram * c).real();
  };
  const int panels = std::max(1, static_cast<int>(std::ceil(2.0 * hi)));
  const double w = 2.0 * hi / panels;
  double acc = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = -hi + k * w;
    acc += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(density, lo, lo + w, 10, 1e-13);
  }
  return acc / z;
}

double small_kerr_output_fidelity(double alpha_i, int N) {
  const Css s = css_normalize(small_kerr_state(alpha_i, N));
  const cplx b(0.0, alpha_i);
  const cplx om = css_inner(css_coherent({-b}), s);
  const cplx op = css_inner(css_coherent({b}), s);
  const cplx ov = coherent_overlap(-b, b);
  double best = 0.0;
  for (int k = 0; k < 3600; ++k) {
    const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * k / 3600);
    best = std::max(best, std::norm(om + std::conj(e) * op) / (2.0 + 2.0 * (e * ov).real()));
  }
  return best;
}

Css gerry_scheme(double alpha, double phi, GerryOutcome outcome) {
  const double sgn = outcome == GerryOutcome::b ? 1.0 : -1.0;
  Css s{1, {{1.0, {alpha * std::polar(1.0, -phi)}}, {sgn, {cplx(alpha)}}}};
  return css_normalize(s);
}

double gerry_probability(double alpha, double phi, GerryOutcome outcome) {
  const double sgn = outcome == GerryOutcome::b ? 1.0 : -1.0;
  const cplx ov = coherent_overlap(alpha * std::polar(1.0, -phi), alpha);
  return (2.0 + 2.0 * sgn * ov.real()) / 4.0;
}

}  // namespace catsim
