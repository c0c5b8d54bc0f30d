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

#include <vector>

#include <Eigen/Dense>

#include "catsim/optimize.hpp"
#include "catsim/quad.hpp"

namespace catsim {

// song:       S12(r), splitter T, count mode 2, then S1(s) on mode 1.
// improved:   S1(s), S12(r), splitter T, count mode 2.
// simplified: S1(r) and S2(s), splitter T, count mode 2.
enum class Variant { song, improved, simplified };

struct BackactionParams {
  Variant variant = Variant::simplified;
  double r = 0.0;
  double s = 0.0;
  double T = 1.0;
  int m = 0;
};

// Quadratic form of the two-mode Gaussian just before counting:
// psi(x1, x2) = det(A)^{1/4}/sqrt(pi) exp(-x^T A x / 2). For the song
// variant the final squeeze of mode 1 is applied afterwards.
Eigen::Matrix2d ba_quadratic_form(const BackactionParams& p);

struct BaState {
  QuadGrid grid;
  std::vector<double> psi;  // normalized, sampled on grid.nodes
  double probability = 0.0;
};

// Conditioned mode-1 wavefunction and P(m). Without a grid, a trapezoid
// grid is sized from the Gaussian width and widened until the boundary
// density is below 1e-14 of the peak.
BaState ba_conditioned_state(const BackactionParams& p, const QuadGrid* grid = nullptr);
// Unnormalized psi_m(x1) at one point.
double ba_amplitude(const BackactionParams& p, double x1);

double ba_fidelity(const BackactionParams& p, double alpha, int parity);
FidProb ba_fidelity_probability(const BackactionParams& p, double alpha, int parity);
SchemeReport ba_tradeoff_point(const BackactionParams& p, double alpha);

// Variance change in dB for squeezing s: 10 log10(e^{-2|s|}).
double squeeze_db(double s);
double db_to_squeeze(double db);
// T = cos^2(arcsin(tanh r) / 2), the back-action-evasion setting.
double bae_transmissivity(double r);

const char* variant_name(Variant v);

}  // namespace catsim
