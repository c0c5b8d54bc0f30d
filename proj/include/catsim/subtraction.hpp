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

#include <cmath>
#include <utility>
#include <vector>

#include "catsim/channels.hpp"
#include "catsim/fock.hpp"

namespace catsim {

struct SubtractionConfig {
  double lam = 0.0;  // -tanh r
  double T = 1.0;
  int m = 0;
  double nu = 1.0;   // purity transmissivity of the squeezed input
  DetectorModel det;
  int dim = 0;       // 0 picks a dimension from the squeezing
};

inline double lam_from_r(double r) { return -std::tanh(r); }

// Output mode after m photons are counted in the tapped mode; depends only
// on the product lam*T. Normalized.
FockVector subtracted_state(double lam_t, int m, int dim = 0);
// Closed-form probability of counting m photons.
double subtraction_probability(double lam, double T, int m);
// Binomial mixture for a detector of efficiency det.eta (dark counts must
// be zero; use subtraction_full_model for those).
std::pair<FockDensity, double> subtracted_state_inefficient(const SubtractionConfig& cfg);
// Squeezed vacuum, loss nu, splitter T, loss eta and dark counts in the
// counted mode, conditioned on registering m.
std::pair<FockDensity, double> subtraction_full_model(const SubtractionConfig& cfg);

// Conditioned mode-1 states of a one-mode input after a splitter T with a
// vacuum ancilla: entry j is the unnormalized state given j photons in the
// tapped mode.
std::vector<FockDensity> split_branches(const FockDensity& rho, double T);

struct VarianceDb {
  double x_db = 0.0;
  double p_db = 0.0;
};
// Quadrature variances of the impure squeezed input, in dB relative to
// the vacuum variance 1/2.
VarianceDb subtraction_variances_db(double r, double nu);

// (cosh r)^{-3/2} sum_k (tanh r / 2)^k sqrt((2k+1)!)/k! |2k+1>; this is
// S(-r)|1> for the squeezer S(s) = exp[(s/2)(a^2 - a^dag^2)].
FockVector kitten_state(double r, int dim = 0);
// |<Psi_-(alpha)|kitten(r)>|^2 in closed form.
double kitten_fidelity(double r, double alpha);
// r maximizing kitten_fidelity for the given alpha.
double kitten_optimal_r(double alpha);
// p S|0><0|S^dag + (1-p) S|1><1|S^dag with the kitten squeezer.
FockDensity kitten_mixed(double p, double r, int dim = 0);

}  // namespace catsim
