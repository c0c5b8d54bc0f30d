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

#include "catsim/css.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "catsim/errors.hpp"

namespace catsim {

namespace {

void check_mode(const Css& s, int mode, const char* where) {
  if (mode < 0 || mode >= s.modes) throw ModeMismatch("css", std::string(where) + ": mode out of range");
}

// <n|a> computed in log space.
cplx fock_amplitude(cplx a, int n) {
  const double r = std::abs(a);
  if (r == 0.0) return n == 0 ? 1.0 : 0.0;
  const double lg = -0.5 * r * r + n * std::log(r) - 0.5 * std::lgamma(n + 1.0);
  return std::polar(std::exp(lg), n * std::arg(a));
}

}  // namespace

cplx coherent_overlap(cplx a, cplx b) {
  const cplx ex = -0.5 * std::norm(b - a) + 0.5 * (std::conj(a) * b - a * std::conj(b));
  return std::exp(ex);
}

Css css_coherent(const std::vector<cplx>& amps) {
  return Css{static_cast<int>(amps.size()), {CssTerm{1.0, amps}}};
}

Css css_cat(cplx alpha, double phi) {
  Css s{1, {CssTerm{1.0, {-alpha}}, CssTerm{std::polar(1.0, phi), {alpha}}}};
  return css_normalize(s);
}

Css css_tensor(const Css& a, const Css& b) {
  Css out{a.modes + b.modes, {}};
  out.terms.reserve(a.size() * b.size());
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) {
      CssTerm t{ta.coeff * tb.coeff, ta.amps};
      t.amps.insert(t.amps.end(), tb.amps.begin(), tb.amps.end());
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

cplx css_inner(const Css& a, const Css& b) {
  if (a.modes != b.modes) throw ModeMismatch("css", "css_inner: mode counts differ");
  cplx acc = 0.0;
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) {
      cplx g = std::conj(ta.coeff) * tb.coeff;
      for (int m = 0; m < a.modes; ++m) g *= coherent_overlap(ta.amps[m], tb.amps[m]);
      acc += g;
    }
  }
  return acc;
}

double css_norm2(const Css& s) { return std::max(0.0, css_inner(s, s).real()); }

Css css_normalize(const Css& s) {
  const double n2 = css_norm2(s);
  if (!(n2 > 1e-300)) throw ZeroProbabilityEvent("css", "css_normalize: zero norm");
  return css_scale(s, 1.0 / std::sqrt(n2));
}

Css css_scale(const Css& s, cplx c) {
  Css out = s;
  for (auto& t : out.terms) t.coeff *= c;
  return out;
}

Css css_add(const Css& a, const Css& b) {
  if (a.modes != b.modes) throw ModeMismatch("css", "css_add: mode counts differ");
  Css out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

Css css_dedup(const Css& s, double tol) {
  Css out{s.modes, {}};
  for (const auto& t : s.terms) {
    bool merged = false;
    for (auto& u : out.terms) {
      bool same = true;
      for (int m = 0; m < s.modes && same; ++m) same = std::abs(u.amps[m] - t.amps[m]) <= tol;
      if (same) {
        u.coeff += t.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) out.terms.push_back(t);
  }
  std::erase_if(out.terms, [](const CssTerm& t) { return t.coeff == cplx(0.0); });
  if (out.size() > kCssTermCap) throw TermCountOverflow("css", "css_dedup: term count above cap");
  return out;
}

Css css_beam_splitter(const Css& s, int i, int j, double T) {
  check_mode(s, i, "css_beam_splitter");
  check_mode(s, j, "css_beam_splitter");
  if (i == j) throw ModeMismatch("css", "css_beam_splitter: modes must differ");
  if (T < 0.0 || T > 1.0) throw InvalidArgument("css", "css_beam_splitter: T outside [0,1]");
  const double t = std::sqrt(T);
  const double r = std::sqrt(1.0 - T);
  Css out = s;
  for (auto& term : out.terms) {
    const cplx a = term.amps[i];
    const cplx b = term.amps[j];
    term.amps[i] = a * t - b * r;
    term.amps[j] = b * t + a * r;
  }
  return out;
}

Css css_displace(const Css& s, int mode, cplx delta) {
  check_mode(s, mode, "css_displace");
  Css out = s;
  for (auto& term : out.terms) {
    const cplx a = term.amps[mode];
    term.coeff *= std::exp(0.5 * (delta * std::conj(a) - std::conj(delta) * a));
    term.amps[mode] = a + delta;
  }
  return out;
}

std::pair<Css, double> css_project_fock(const Css& s, int mode, int n) {
  check_mode(s, mode, "css_project_fock");
  if (n < 0) throw InvalidArgument("css", "css_project_fock: negative photon number");
  Css out{s.modes - 1, {}};
  out.terms.reserve(s.size());
  for (const auto& t : s.terms) {
    CssTerm u{t.coeff * fock_amplitude(t.amps[mode], n), t.amps};
    u.amps.erase(u.amps.begin() + mode);
    out.terms.push_back(std::move(u));
  }
  return {out, css_norm2(out)};
}

FockVector css_to_fock(const Css& s, int dim) {
  if (dim <= 0) throw InvalidArgument("css", "css_to_fock: dim must be positive");
  double rmax = 0.0;
  for (const auto& t : s.terms) {
    for (const auto& a : t.amps) rmax = std::max(rmax, std::abs(a));
  }
  if (rmax > 0.0 && boost::math::gamma_p(static_cast<double>(dim), rmax * rmax) > kTailBound) {
    throw TruncationError("css", "css_to_fock: dimension too small for the largest amplitude");
  }
  FockVector out{std::vector<int>(s.modes, dim), Eigen::VectorXcd::Zero(1)};
  long total = 1;
  for (int m = 0; m < s.modes; ++m) total *= dim;
  out.amps = Eigen::VectorXcd::Zero(total);
  for (const auto& t : s.terms) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Constant(1, t.coeff);
    for (int m = 0; m < s.modes; ++m) {
      Eigen::VectorXcd c(dim);
      for (int n = 0; n < dim; ++n) c[n] = fock_amplitude(t.amps[m], n);
      Eigen::VectorXcd w(v.size() * dim);
      for (Eigen::Index k = 0; k < v.size(); ++k) w.segment(k * dim, dim) = v[k] * c;
      v = std::move(w);
    }
    out.amps += v;
  }
  return normalized(out);
}

}  // namespace catsim
