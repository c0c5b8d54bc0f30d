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

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace catsim {

struct SchemeReport {
  double fidelity = 0.0;
  double probability = 1.0;
  // Kept separately so that probabilities far below double range survive.
  double log10_probability = 0.0;
  std::vector<std::pair<std::string, double>> params;
  double target_alpha = 0.0;
  double target_phase = 0.0;
  std::vector<std::string> notes;

  // Throws InvalidArgument for an unknown name.
  double param(const std::string& name) const;
  void set_probability(double p);
};

struct FidProb {
  double fidelity = 0.0;
  double probability = 0.0;
};

struct OptEval {
  std::vector<double> x;
  double fidelity = 0.0;
  double probability = 0.0;
};

struct OptProblem {
  std::function<FidProb(const std::vector<double>&)> objective;
  std::vector<std::pair<double, double>> box;
  std::vector<std::string> names;
  // Extra starting points refined alongside the best grid points.
  std::vector<std::vector<double>> seeds;
  double tol_f = 1e-6;
  int grid_points = 9;
  int top_k = 5;
  int max_evals = 2000;
  // After the fidelity search, walk along the near-optimal fidelity set
  // toward higher probability.
  bool refine_probability = true;
  double penalty = 1e4;
};

// Grid search, Nelder-Mead from the best grid points, then the
// highest-probability evaluated point whose fidelity is within tol_f of
// the best fidelity seen. `log`, if given, receives every evaluation.
SchemeReport maximize_lex(const OptProblem& problem, std::vector<OptEval>* log = nullptr);

// Minimizes f over the box from x0 (box enforced by projection).
// Returns the best point; `evals` counts objective calls.
std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> x0,
                                const std::vector<std::pair<double, double>>& box, int max_evals,
                                int* evals = nullptr);

}  // namespace catsim
