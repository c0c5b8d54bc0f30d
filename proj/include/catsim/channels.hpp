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

#include <utility>
#include <vector>

#include "catsim/fock.hpp"

namespace catsim {

struct DetectorModel {
  double eta = 1.0;
  double dark_mean = 0.0;

  // Throws InvalidArgument outside 0 <= eta <= 1, d >= 0.
  void validate() const;
};

// Amplitude damping with transmissivity eta on one mode.
FockDensity loss_channel(const FockDensity& rho, double eta, int mode = 0);
FockDensity loss_channel(const FockVector& psi, double eta, int mode = 0);

// Closed-form F_+/-(alpha, eta) of a cat after loss. parity = +1 or -1.
double cat_loss_fidelity(double alpha, double eta, int parity);

// Poisson(d) truncated where the remaining tail drops below `tail`.
std::vector<double> poisson_pmf(double d, double tail = 1e-12);
// Probability of registering m counts given n photons actually arrive.
double registration_weight(int n, int m, const DetectorModel& det);

// Registered-count distribution from a true photon-number distribution.
std::vector<double> detector_pmf(const std::vector<double>& pn, const DetectorModel& det);

// Conditional state of the other modes after `mode` registers m counts,
// and the probability of that event. The returned state has unit trace.
std::pair<FockDensity, double> condition_on_count(const FockDensity& rho, int mode, int m,
                                                  const DetectorModel& det);
std::pair<FockDensity, double> condition_on_count(const FockVector& psi, int mode, int m,
                                                  const DetectorModel& det);

struct TomographyCost {
  int phases = 0;
  double bin_width_bound = 0.0;
  double counts_per_histogram = 0.0;
  double total = 0.0;
};

TomographyCost tomography_cost(int max_photon, double p_m);

}  // namespace catsim
