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

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace catsim {

using cplx = std::complex<double>;

inline constexpr double kTolNorm = 1e-9;
inline constexpr double kTailBound = 1e-10;

// Pure state in a truncated multimode Fock space. Amplitudes are stored
// row-major with mode 0 varying slowest.
struct FockVector {
  std::vector<int> dims;
  Eigen::VectorXcd amps;

  int modes() const { return static_cast<int>(dims.size()); }
  double norm() const { return amps.norm(); }
};

// Mixed state; same index convention as FockVector.
struct FockDensity {
  std::vector<int> dims;
  Eigen::MatrixXcd mat;

  int modes() const { return static_cast<int>(dims.size()); }
  double trace() const { return mat.trace().real(); }
};

// ceil(|a|^2 + 10|a| + 20).
int default_dim(double abs_alpha);
// Smallest even-capable dimension whose squeezed-vacuum tail is below the
// truncation bound.
int squeezed_dim(double lambda);

FockVector vacuum(int dim);
FockVector fock_state(int n, int dim);
// dim <= 0 selects default_dim(|alpha|).
FockVector coherent_state(cplx alpha, int dim = 0);
// (|-a> + e^{i phi}|a>)/sqrt(N_phi). phi = 0 is the even cat, phi = pi the odd.
FockVector cat_state(double alpha, double phi, int dim = 0);
// lambda = -tanh r.
FockVector squeezed_vacuum(double lambda, int dim = 0);

// S(s) = exp[(s/2)(a^2 - a^dag^2)] on one mode. Exponentiated in a padded
// space and truncated back; throws TruncationError if the squeezed tail does
// not fit the original dimension.
FockVector apply_squeeze(const FockVector& state, double s, int mode = 0);
// B(T) = exp[arccos(sqrt T)(a_i a_j^dag - a_i^dag a_j)], exponentiated exactly
// on each total-photon-number block.
FockVector beam_splitter(const FockVector& state, double T, int i = 0, int j = 1);
// S_ij(r) = exp[r(a_i a_j - a_i^dag a_j^dag)], block-wise on n_i - n_j.
FockVector two_mode_squeeze(const FockVector& state, double r, int i = 0, int j = 1);

FockVector tensor(const FockVector& a, const FockVector& b);
FockDensity tensor(const FockDensity& a, const FockDensity& b);
FockDensity to_density(const FockVector& psi);
FockVector normalized(const FockVector& psi);
// Rotates the global phase so the first non-negligible amplitude is real
// and positive.
FockVector canonical_phase(FockVector psi);

// Applies a dim x dim operator to one mode.
FockVector apply_mode_operator(const FockVector& psi, const Eigen::MatrixXcd& op, int mode);
// rho -> op rho op^dag on one mode.
FockDensity apply_mode_operator(const FockDensity& rho, const Eigen::MatrixXcd& op, int mode);
// <n|_mode psi, unnormalized, on the remaining modes.
FockVector project_mode(const FockVector& psi, int mode, int n);
// Traces out a single mode.
FockDensity trace_out(const FockDensity& rho, int mode);
// Reduced state of one mode of a pure multimode vector.
FockDensity reduced_mode(const FockVector& psi, int mode);
// Copies the amplitudes into a larger (or equal) per-mode dimension.
FockVector pad(const FockVector& psi, const std::vector<int>& dims);

Eigen::MatrixXd annihilation(int dim);

cplx inner(const FockVector& a, const FockVector& b);
double fidelity(const FockVector& a, const FockVector& b);
double fidelity(const FockVector& a, const FockDensity& rho);
double fidelity(const FockDensity& rho, const FockVector& a);
// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const FockDensity& rho, const FockDensity& sigma);

// mode < 0 gives the total photon number.
double mean_photon(const FockVector& psi, int mode = -1);
double mean_photon(const FockDensity& rho, int mode = -1);
// <(-1)^n> of a single-mode state.
double parity_expectation(const FockVector& psi);
// Probability of n photons in one mode.
std::vector<double> photon_distribution(const FockVector& psi, int mode = 0);
std::vector<double> photon_distribution(const FockDensity& rho, int mode = 0);

}  // namespace catsim
