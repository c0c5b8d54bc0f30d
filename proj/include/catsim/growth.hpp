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

#include "catsim/channels.hpp"
#include "catsim/css.hpp"
#include "catsim/fock.hpp"
#include "catsim/optimize.hpp"

namespace catsim {

// Two cats (|-alpha> + e^{i phi}|alpha>) and (|-beta> + e^{i varphi}|beta>)
// in modes 0 and 1, |gamma> in mode 2 with gamma = 2 alpha beta / A,
// A = sqrt(alpha^2 + beta^2). Splitter (0,1) with T = beta^2/A^2, then
// splitter (2,0) with T = 1/2; modes 0 and 2 are counted.
struct GrowthConfig {
  double alpha = 1.0;
  double beta = 1.0;
  double phi = 0.0;
  double varphi = 0.0;
  DetectorModel det;
  int fock_cutoff = 40;
};

struct GrowthIdeal {
  Css output;  // one mode, normalized
  double amplitude = 0.0;
  double probability = 0.0;
};

// Counts on modes 0 and 2 with ideal detectors, both at least one.
GrowthIdeal grow_ideal(const GrowthConfig& cfg);
// Closed-form success probability for ideal detectors.
double grow_probability_formula(double alpha, double beta, double phi, double varphi);

// Acceptance of every (m0 >= 1, m2 >= 1) with the configured detectors.
// The report holds the fidelity with cat (A, parity) and the acceptance
// probability. Throws CutoffInsufficient when the neglected photon-number
// tail in a counted mode exceeds 1e-10.
SchemeReport grow_with_detectors(const GrowthConfig& cfg, double target_alpha, int target_parity);
// Accepted output state in the Fock basis, unit trace.
FockDensity grow_accept_density(const GrowthConfig& cfg, int dim = 0);

struct KittenSpec {
  double p = 0.0;       // vacuum fraction
  double alpha0 = 0.5;  // odd-cat amplitude the kitten approximates
};

// Entry 0 describes the input kitten against the odd cat alpha0. Entry k
// is the output after k rounds, fed two copies of the previous output,
// against the even cat alpha0 * 2^{k/2}. `probability` is the success
// probability of round k; param "cumulative" multiplies it by the square
// of the previous cumulative value.
std::vector<SchemeReport> grow_iterate(const KittenSpec& initial, int iterations, const DetectorModel& det);

}  // namespace catsim
