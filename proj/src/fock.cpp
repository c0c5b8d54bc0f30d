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

#include "catsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/special_functions/gamma.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "catsim/errors.hpp"

namespace catsim {

namespace {

long total_size(const std::vector<int>& dims) {
  long n = 1;
  for (int d : dims) n *= d;
  return n;
}

// Stride of each mode in the row-major layout.
std::vector<long> strides(const std::vector<int>& dims) {
  std::vector<long> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) s[k] = s[k + 1] * dims[k + 1];
  return s;
}

void check_mode(const std::vector<int>& dims, int mode, const char* where) {
  if (mode < 0 || mode >= static_cast<int>(dims.size())) {
    throw ModeMismatch("fock", std::string(where) + ": mode index out of range");
  }
}

// Linear indices with n_i = n_j = 0; every other index is base + a*s_i + b*s_j.
std::vector<long> pair_bases(const std::vector<int>& dims, int i, int j) {
  const auto s = strides(dims);
  std::vector<long> bases;
  const long n = total_size(dims);
  for (long idx = 0; idx < n; ++idx) {
    if ((idx / s[i]) % dims[i] == 0 && (idx / s[j]) % dims[j] == 0) bases.push_back(idx);
  }
  return bases;
}

// e^{i phi} with exact values at multiples of pi/2 so that parity zeros of
// cat states survive rounding.
cplx unit_phase(double phi) {
  double c = std::cos(phi);
  double s = std::sin(phi);
  if (std::abs(s) < 1e-15) return {c > 0 ? 1.0 : -1.0, 0.0};
  if (std::abs(c) < 1e-15) return {0.0, s > 0 ? 1.0 : -1.0};
  return {c, s};
}

// Applies a real matrix (rows may exceed d) to every one-mode slice.
// Returns the weight that fell beyond the original dimension.
double apply_padded(FockVector& psi, const Eigen::MatrixXd& u, int mode) {
  const int d = psi.dims[mode];
  const auto s = strides(psi.dims);
  const long post = s[mode];
  const long pre = total_size(psi.dims) / (post * d);
  double leaked = 0.0;
  Eigen::VectorXcd v(d);
  for (long a = 0; a < pre; ++a) {
    for (long b = 0; b < post; ++b) {
      const long base = a * d * post + b;
      for (int k = 0; k < d; ++k) v[k] = psi.amps[base + k * post];
      Eigen::VectorXcd w = u.leftCols(d) * v;
      for (int k = 0; k < d; ++k) psi.amps[base + k * post] = w[k];
      leaked += w.tail(w.size() - d).squaredNorm();
    }
  }
  return leaked;
}

}  // namespace

int default_dim(double abs_alpha) {
  const double a = std::abs(abs_alpha);
  return static_cast<int>(std::ceil(a * a + 10.0 * a + 20.0));
}

int squeezed_dim(double lambda) {
  if (!(std::abs(lambda) < 1.0)) throw InvalidArgument("fock", "squeezed_dim: |lambda| must be < 1");
  if (lambda == 0.0) return 2;
  const double l2 = lambda * lambda;
  double cum = 0.0;
  double log_term = 0.5 * std::log1p(-l2);
  for (int n = 0; n < 200000; ++n) {
    if (n > 0) log_term += std::log((2.0 * n - 1.0) / (2.0 * n)) + std::log(l2);
    cum += std::exp(log_term);
    if (1.0 - cum < kTailBound * 0.5) return 2 * n + 2;
  }
  throw TruncationError("fock", "squeezed_dim: squeezing too strong");
}

FockVector vacuum(int dim) { return fock_state(0, dim); }

FockVector fock_state(int n, int dim) {
  if (dim <= n || n < 0) throw TruncationError("fock", "fock_state: dim must exceed n");
  FockVector v{{dim}, Eigen::VectorXcd::Zero(dim)};
  v.amps[n] = 1.0;
  return v;
}

FockVector coherent_state(cplx alpha, int dim) {
  const double r = std::abs(alpha);
  if (dim <= 0) dim = default_dim(r);
  FockVector v{{dim}, Eigen::VectorXcd::Zero(dim)};
  if (r == 0.0) {
    v.amps[0] = 1.0;
    return v;
  }
  const double mu = r * r;
  const double tail = boost::math::gamma_p(static_cast<double>(dim), mu);
  if (tail > kTailBound) {
    throw TruncationError("fock", "coherent_state: tail " + std::to_string(tail) + " at dim " +
                                      std::to_string(dim));
  }
  const double theta = std::arg(alpha);
  for (int n = 0; n < dim; ++n) {
    const double lg = -0.5 * mu + n * std::log(r) - 0.5 * std::lgamma(n + 1.0);
    v.amps[n] = std::polar(std::exp(lg), n * theta);
  }
  v.amps /= v.amps.norm();
  return v;
}

FockVector cat_state(double alpha, double phi, int dim) {
  if (!(alpha > 0.0)) throw InvalidArgument("fock", "cat_state: alpha must be positive");
  if (dim <= 0) dim = default_dim(alpha);
  const cplx e = unit_phase(phi);
  const double n_phi = 2.0 + 2.0 * e.real() * std::exp(-2.0 * alpha * alpha);
  const double tail = 4.0 * boost::math::gamma_p(static_cast<double>(dim), alpha * alpha) / n_phi;
  if (tail > kTailBound) throw TruncationError("fock", "cat_state: dimension too small");
  FockVector v{{dim}, Eigen::VectorXcd::Zero(dim)};
  for (int n = 0; n < dim; ++n) {
    const double mag = std::exp(-0.5 * alpha * alpha + n * std::log(alpha) - 0.5 * std::lgamma(n + 1.0));
    v.amps[n] = mag * (cplx(n % 2 == 0 ? 1.0 : -1.0, 0.0) + e);
  }
  v.amps /= v.amps.norm();
  return canonical_phase(std::move(v));
}

FockVector squeezed_vacuum(double lambda, int dim) {
  if (!(std::abs(lambda) < 1.0)) throw InvalidArgument("fock", "squeezed_vacuum: |lambda| must be < 1");
  const int need = squeezed_dim(lambda);
  if (dim <= 0) dim = need;
  if (dim < need) throw TruncationError("fock", "squeezed_vacuum: dim below " + std::to_string(need));
  FockVector v{{dim}, Eigen::VectorXcd::Zero(dim)};
  const double sgn = lambda < 0 ? -1.0 : 1.0;
  const double la = std::abs(lambda);
  for (int n = 0; 2 * n < dim; ++n) {
    double lg = 0.25 * std::log1p(-lambda * lambda) + 0.5 * std::lgamma(2.0 * n + 1.0) - std::lgamma(n + 1.0);
    if (n > 0) {
      if (la == 0.0) break;
      lg += n * std::log(la / 2.0);
    }
    v.amps[2 * n] = std::exp(lg) * ((n % 2 == 1) ? sgn : 1.0);
  }
  v.amps /= v.amps.norm();
  return v;
}

Eigen::MatrixXd annihilation(int dim) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

FockVector apply_squeeze(const FockVector& state, double s, int mode) {
  check_mode(state.dims, mode, "apply_squeeze");
  if (s == 0.0) return state;
  const int d = state.dims[mode];
  const int padded = 2 * d + 16;
  const Eigen::MatrixXd a = annihilation(padded);
  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd gen = 0.5 * s * (a2 - a2.transpose());
  const Eigen::MatrixXd u = gen.exp();
  FockVector out = state;
  const double leaked = apply_padded(out, u, mode);
  if (leaked > kTailBound * std::max(1.0, state.amps.squaredNorm())) {
    throw TruncationError("fock", "apply_squeeze: squeezed tail " + std::to_string(leaked) +
                                      " exceeds bound at dim " + std::to_string(d));
  }
  return out;
}

FockVector beam_splitter(const FockVector& state, double T, int i, int j) {
  check_mode(state.dims, i, "beam_splitter");
  check_mode(state.dims, j, "beam_splitter");
  if (i == j) throw ModeMismatch("fock", "beam_splitter: modes must differ");
  if (T < 0.0 || T > 1.0) throw InvalidArgument("fock", "beam_splitter: T outside [0,1]");
  const double theta = std::acos(std::sqrt(T));
  const int di = state.dims[i];
  const int dj = state.dims[j];
  const int nmax = di + dj - 2;
  // Block for total photon number N in the basis k = n_i = 0..N.
  std::vector<Eigen::MatrixXd> blocks(nmax + 1);
  for (int N = 0; N <= nmax; ++N) {
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(N + 1, N + 1);
    for (int q = 0; q < N; ++q) {
      const double c = theta * std::sqrt((q + 1.0) * (N - q));
      k(q, q + 1) = c;
      k(q + 1, q) = -c;
    }
    blocks[N] = k.exp();
  }
  const auto s = strides(state.dims);
  FockVector out{state.dims, Eigen::VectorXcd::Zero(state.amps.size())};
  double leaked = 0.0;
  for (long base : pair_bases(state.dims, i, j)) {
    for (int N = 0; N <= nmax; ++N) {
      const int klo = std::max(0, N - dj + 1);
      const int khi = std::min(N, di - 1);
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(N + 1);
      bool any = false;
      for (int k = klo; k <= khi; ++k) {
        v[k] = state.amps[base + k * s[i] + (N - k) * s[j]];
        any = any || v[k] != cplx(0.0);
      }
      if (!any) continue;
      const Eigen::VectorXcd w = blocks[N] * v;
      for (int k = 0; k <= N; ++k) {
        if (k >= klo && k <= khi) {
          out.amps[base + k * s[i] + (N - k) * s[j]] += w[k];
        } else {
          leaked += std::norm(w[k]);
        }
      }
    }
  }
  if (leaked > kTailBound * std::max(1.0, state.amps.squaredNorm())) {
    throw TruncationError("fock", "beam_splitter: output leaks " + std::to_string(leaked) +
                                      " beyond the truncation");
  }
  return out;
}

FockVector two_mode_squeeze(const FockVector& state, double r, int i, int j) {
  check_mode(state.dims, i, "two_mode_squeeze");
  check_mode(state.dims, j, "two_mode_squeeze");
  if (i == j) throw ModeMismatch("fock", "two_mode_squeeze: modes must differ");
  if (r == 0.0) return state;
  const int di = state.dims[i];
  const int dj = state.dims[j];
  const int len = 2 * std::max(di, dj) + 16;
  const auto s = strides(state.dims);
  FockVector out{state.dims, Eigen::VectorXcd::Zero(state.amps.size())};
  double leaked = 0.0;
  const auto bases = pair_bases(state.dims, i, j);
  // Chain for fixed delta = n_i - n_j, indexed by m = min(n_i, n_j).
  for (int delta = -(dj - 1); delta <= di - 1; ++delta) {
    const int ad = std::abs(delta);
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(len, len);
    for (int m = 0; m + 1 < len; ++m) {
      const double c = r * std::sqrt((m + 1.0) * (m + 1.0 + ad));
      k(m, m + 1) = c;
      k(m + 1, m) = -c;
    }
    const Eigen::MatrixXd u = k.exp();
    auto ni = [&](int m) { return delta >= 0 ? m + ad : m; };
    auto nj = [&](int m) { return delta >= 0 ? m : m + ad; };
    for (long base : bases) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(len);
      bool any = false;
      for (int m = 0; m < len && ni(m) < di && nj(m) < dj; ++m) {
        v[m] = state.amps[base + ni(m) * s[i] + nj(m) * s[j]];
        any = any || v[m] != cplx(0.0);
      }
      if (!any) continue;
      const Eigen::VectorXcd w = u * v;
      for (int m = 0; m < len; ++m) {
        if (ni(m) < di && nj(m) < dj) {
          out.amps[base + ni(m) * s[i] + nj(m) * s[j]] += w[m];
        } else {
          leaked += std::norm(w[m]);
        }
      }
    }
  }
  if (leaked > kTailBound * std::max(1.0, state.amps.squaredNorm())) {
    throw TruncationError("fock", "two_mode_squeeze: output leaks " + std::to_string(leaked));
  }
  return out;
}

FockVector tensor(const FockVector& a, const FockVector& b) {
  FockVector out;
  out.dims = a.dims;
  out.dims.insert(out.dims.end(), b.dims.begin(), b.dims.end());
  out.amps.resize(a.amps.size() * b.amps.size());
  for (Eigen::Index x = 0; x < a.amps.size(); ++x) {
    out.amps.segment(x * b.amps.size(), b.amps.size()) = a.amps[x] * b.amps;
  }
  return out;
}

FockDensity tensor(const FockDensity& a, const FockDensity& b) {
  FockDensity out;
  out.dims = a.dims;
  out.dims.insert(out.dims.end(), b.dims.begin(), b.dims.end());
  const Eigen::Index nb = b.mat.rows();
  out.mat.resize(a.mat.rows() * nb, a.mat.cols() * nb);
  for (Eigen::Index x = 0; x < a.mat.rows(); ++x) {
    for (Eigen::Index y = 0; y < a.mat.cols(); ++y) {
      out.mat.block(x * nb, y * nb, nb, nb) = a.mat(x, y) * b.mat;
    }
  }
  return out;
}

FockDensity to_density(const FockVector& psi) {
  return FockDensity{psi.dims, psi.amps * psi.amps.adjoint()};
}

FockVector normalized(const FockVector& psi) {
  const double n = psi.amps.norm();
  if (n < 1e-300) throw ZeroProbabilityEvent("fock", "normalized: zero vector");
  FockVector out = psi;
  out.amps /= n;
  return out;
}

FockVector canonical_phase(FockVector psi) {
  const double mx = psi.amps.cwiseAbs().maxCoeff();
  if (mx == 0.0) return psi;
  for (Eigen::Index k = 0; k < psi.amps.size(); ++k) {
    const double m = std::abs(psi.amps[k]);
    if (m > 1e-14 * mx) {
      const cplx ph = std::conj(psi.amps[k]) / m;
      psi.amps *= ph;
      psi.amps[k] = m;
      break;
    }
  }
  return psi;
}

FockVector apply_mode_operator(const FockVector& psi, const Eigen::MatrixXcd& op, int mode) {
  check_mode(psi.dims, mode, "apply_mode_operator");
  const int d = psi.dims[mode];
  if (op.rows() != d || op.cols() != d) throw DimensionMismatch("fock", "apply_mode_operator: operator size");
  const auto s = strides(psi.dims);
  const long post = s[mode];
  const long pre = total_size(psi.dims) / (post * d);
  FockVector out = psi;
  Eigen::VectorXcd v(d);
  for (long a = 0; a < pre; ++a) {
    for (long b = 0; b < post; ++b) {
      const long base = a * d * post + b;
      for (int k = 0; k < d; ++k) v[k] = psi.amps[base + k * post];
      const Eigen::VectorXcd w = op * v;
      for (int k = 0; k < d; ++k) out.amps[base + k * post] = w[k];
    }
  }
  return out;
}

FockDensity apply_mode_operator(const FockDensity& rho, const Eigen::MatrixXcd& op, int mode) {
  check_mode(rho.dims, mode, "apply_mode_operator");
  const int d = rho.dims[mode];
  if (op.rows() != d || op.cols() != d) throw DimensionMismatch("fock", "apply_mode_operator: operator size");
  const long n = total_size(rho.dims);
  const auto s = strides(rho.dims);
  const long post = s[mode];
  const long pre = n / (post * d);
  // Left multiply every column, then right multiply every row.
  Eigen::MatrixXcd tmp(n, n);
  Eigen::VectorXcd v(d);
  for (long col = 0; col < n; ++col) {
    for (long a = 0; a < pre; ++a) {
      for (long b = 0; b < post; ++b) {
        const long base = a * d * post + b;
        for (int k = 0; k < d; ++k) v[k] = rho.mat(base + k * post, col);
        const Eigen::VectorXcd w = op * v;
        for (int k = 0; k < d; ++k) tmp(base + k * post, col) = w[k];
      }
    }
  }
  FockDensity out{rho.dims, Eigen::MatrixXcd(n, n)};
  const Eigen::MatrixXcd opc = op.conjugate();
  for (long row = 0; row < n; ++row) {
    for (long a = 0; a < pre; ++a) {
      for (long b = 0; b < post; ++b) {
        const long base = a * d * post + b;
        for (int k = 0; k < d; ++k) v[k] = tmp(row, base + k * post);
        const Eigen::VectorXcd w = opc * v;
        for (int k = 0; k < d; ++k) out.mat(row, base + k * post) = w[k];
      }
    }
  }
  return out;
}

FockVector project_mode(const FockVector& psi, int mode, int n) {
  check_mode(psi.dims, mode, "project_mode");
  const int d = psi.dims[mode];
  FockVector out;
  out.dims = psi.dims;
  out.dims.erase(out.dims.begin() + mode);
  const auto s = strides(psi.dims);
  const long post = s[mode];
  const long pre = total_size(psi.dims) / (post * d);
  out.amps = Eigen::VectorXcd::Zero(pre * post);
  if (n < 0 || n >= d) return out;
  for (long a = 0; a < pre; ++a) {
    for (long b = 0; b < post; ++b) out.amps[a * post + b] = psi.amps[a * d * post + n * post + b];
  }
  return out;
}

FockDensity trace_out(const FockDensity& rho, int mode) {
  check_mode(rho.dims, mode, "trace_out");
  const int d = rho.dims[mode];
  const auto s = strides(rho.dims);
  const long post = s[mode];
  const long m = total_size(rho.dims) / d;
  FockDensity out;
  out.dims = rho.dims;
  out.dims.erase(out.dims.begin() + mode);
  out.mat = Eigen::MatrixXcd::Zero(m, m);
  auto full = [&](long reduced, int k) { return (reduced / post) * d * post + k * post + reduced % post; };
  for (long x = 0; x < m; ++x) {
    for (long y = 0; y < m; ++y) {
      cplx acc = 0.0;
      for (int k = 0; k < d; ++k) acc += rho.mat(full(x, k), full(y, k));
      out.mat(x, y) = acc;
    }
  }
  return out;
}

FockDensity reduced_mode(const FockVector& psi, int mode) {
  check_mode(psi.dims, mode, "reduced_mode");
  const int d = psi.dims[mode];
  const auto s = strides(psi.dims);
  const long post = s[mode];
  const long pre = total_size(psi.dims) / (post * d);
  Eigen::MatrixXcd m(d, pre * post);
  for (long a = 0; a < pre; ++a) {
    for (long b = 0; b < post; ++b) {
      for (int k = 0; k < d; ++k) m(k, a * post + b) = psi.amps[a * d * post + k * post + b];
    }
  }
  return FockDensity{{d}, m * m.adjoint()};
}

FockVector pad(const FockVector& psi, const std::vector<int>& dims) {
  if (dims.size() != psi.dims.size()) throw DimensionMismatch("fock", "pad: mode count");
  for (size_t k = 0; k < dims.size(); ++k) {
    if (dims[k] < psi.dims[k]) throw DimensionMismatch("fock", "pad: cannot shrink");
  }
  const auto s_old = strides(psi.dims);
  const auto s_new = strides(dims);
  FockVector out{dims, Eigen::VectorXcd::Zero(total_size(dims))};
  for (long idx = 0; idx < psi.amps.size(); ++idx) {
    long rest = idx;
    long target = 0;
    for (size_t k = 0; k < dims.size(); ++k) {
      const long nk = rest / s_old[k];
      rest %= s_old[k];
      target += nk * s_new[k];
    }
    out.amps[target] = psi.amps[idx];
  }
  return out;
}

cplx inner(const FockVector& a, const FockVector& b) {
  if (a.dims != b.dims) throw DimensionMismatch("fock", "inner: dims differ");
  return a.amps.dot(b.amps);
}

double fidelity(const FockVector& a, const FockVector& b) { return std::norm(inner(a, b)); }

double fidelity(const FockVector& a, const FockDensity& rho) {
  if (a.dims != rho.dims) throw DimensionMismatch("fock", "fidelity: dims differ");
  return std::max(0.0, a.amps.dot(rho.mat * a.amps).real());
}

double fidelity(const FockDensity& rho, const FockVector& a) { return fidelity(a, rho); }

double fidelity(const FockDensity& rho, const FockDensity& sigma) {
  if (rho.dims != sigma.dims) throw DimensionMismatch("fock", "fidelity: dims differ");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.mat);
  // Round-off eigenvalues would otherwise contribute sqrt(eps) each.
  auto clean_sqrt = [](const Eigen::VectorXd& v) {
    const double cut = 1e-13 * std::max(v.maxCoeff(), 0.0);
    return v.unaryExpr([cut](double x) { return x > cut ? std::sqrt(x) : 0.0; }).eval();
  };
  const Eigen::VectorXd ev = clean_sqrt(es.eigenvalues());
  const Eigen::MatrixXcd sq = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  Eigen::MatrixXcd m = sq * sigma.mat * sq;
  m = 0.5 * (m + m.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(m, Eigen::EigenvaluesOnly);
  const double t = clean_sqrt(es2.eigenvalues()).sum();
  return std::min(1.0, t * t);
}

double mean_photon(const FockVector& psi, int mode) {
  const auto s = strides(psi.dims);
  const double nrm = psi.amps.squaredNorm();
  double acc = 0.0;
  for (long idx = 0; idx < psi.amps.size(); ++idx) {
    const double p = std::norm(psi.amps[idx]);
    if (p == 0.0) continue;
    for (int k = 0; k < psi.modes(); ++k) {
      if (mode >= 0 && k != mode) continue;
      acc += p * static_cast<double>((idx / s[k]) % psi.dims[k]);
    }
  }
  return acc / nrm;
}

double mean_photon(const FockDensity& rho, int mode) {
  const auto s = strides(rho.dims);
  double acc = 0.0;
  for (long idx = 0; idx < rho.mat.rows(); ++idx) {
    const double p = rho.mat(idx, idx).real();
    for (int k = 0; k < rho.modes(); ++k) {
      if (mode >= 0 && k != mode) continue;
      acc += p * static_cast<double>((idx / s[k]) % rho.dims[k]);
    }
  }
  return acc / rho.trace();
}

double parity_expectation(const FockVector& psi) {
  double acc = 0.0;
  for (Eigen::Index n = 0; n < psi.amps.size(); ++n) acc += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(psi.amps[n]);
  return acc / psi.amps.squaredNorm();
}

std::vector<double> photon_distribution(const FockVector& psi, int mode) {
  return photon_distribution(reduced_mode(psi, mode), 0);
}

std::vector<double> photon_distribution(const FockDensity& rho, int mode) {
  FockDensity r = rho;
  for (int k = rho.modes() - 1; k >= 0; --k) {
    if (k != mode) r = trace_out(r, k);
  }
  std::vector<double> p(r.mat.rows());
  for (Eigen::Index n = 0; n < r.mat.rows(); ++n) p[n] = r.mat(n, n).real();
  return p;
}

}  // namespace catsim
