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

#include "catsim/tables.hpp"

#include <numbers>

#include "catsim/errors.hpp"
#include "catsim/fock.hpp"
#include "catsim/subtraction.hpp"

namespace catsim {

namespace {

// Starting points near the known optima, (r, s, T) per m = 2, 4, 6, 8.
const std::vector<std::vector<double>>& warm_starts(Variant v) {
  static const std::vector<std::vector<double>> song = {
      {1.14, -1.35, 0.808}, {1.44, -1.48, 0.710}, {1.61, -1.63, 0.652}, {1.76, -1.77, 0.616}};
  static const std::vector<std::vector<double>> improved = {
      {-0.263, -1.36, 0.972}, {-0.271, -1.41, 1.0}, {-0.162, -0.62, 1.0}, {-0.116, -0.45, 1.0}};
  static const std::vector<std::vector<double>> simplified = {
      {0.263, -1.62, 0.335}, {0.274, -1.76, 0.503}, {0.221, -1.85, 0.602}, {0.182, -1.93, 0.668}};
  switch (v) {
    case Variant::song: return song;
    case Variant::improved: return improved;
    case Variant::simplified: return simplified;
  }
  return song;
}

}  // namespace

Variant table_variant(int table_id) {
  switch (table_id) {
    case 1: return Variant::song;
    case 2: return Variant::improved;
    case 3: return Variant::simplified;
    default: throw InvalidArgument("tables", "table id must be 1, 2 or 3");
  }
}

SchemeReport optimize_backaction(Variant v, int m, double alpha, std::vector<OptEval>* log) {
  OptProblem prob;
  prob.names = {"r", "s", "T"};
  prob.box = {{-2.0, 2.0}, {-2.5, 2.5}, {0.0, 1.0}};
  prob.objective = [v, m, alpha](const std::vector<double>& x) {
    try {
      return ba_fidelity_probability(BackactionParams{v, x[0], x[1], x[2], m}, alpha, 1);
    } catch (const ZeroProbabilityEvent&) {
      return FidProb{0.0, 0.0};
    }
  };
  if (m >= 2 && m <= 8 && m % 2 == 0) prob.seeds.push_back(warm_starts(v)[m / 2 - 1]);
  SchemeReport rep = maximize_lex(prob, log);
  rep.params.emplace_back("m", static_cast<double>(m));
  rep.target_alpha = alpha;
  rep.target_phase = 0.0;
  rep.notes.push_back(std::string("variant=") + variant_name(v));
  return rep;
}

std::vector<SchemeReport> reproduce_table(int table_id) {
  const Variant v = table_variant(table_id);
  std::vector<SchemeReport> rows;
  for (int m : {2, 4, 6, 8}) rows.push_back(optimize_backaction(v, m, 2.0));
  return rows;
}

SchemeReport optimize_subtraction(double alpha, int m) {
  if (m < 0) throw InvalidArgument("tables", "negative photon count");
  const int parity = m % 2 == 0 ? 1 : -1;
  const FockVector target = cat_state(alpha, parity > 0 ? 0.0 : std::numbers::pi);
  OptProblem prob;
  prob.names = {"lamT"};
  prob.box = {{-0.95, 0.95}};
  prob.grid_points = 39;
  prob.refine_probability = false;
  prob.objective = [&](const std::vector<double>& x) {
    if (x[0] == 0.0 && m > 0) return FidProb{0.0, 0.0};
    const FockVector psi = subtracted_state(x[0], m);
    const int d = std::max(psi.dims[0], target.dims[0]);
    return FidProb{fidelity(pad(psi, {d}), pad(target, {d})), 1.0};
  };
  SchemeReport rep = maximize_lex(prob);
  rep.params.emplace_back("m", static_cast<double>(m));
  rep.target_alpha = alpha;
  rep.target_phase = parity > 0 ? 0.0 : std::numbers::pi;
  return rep;
}

}  // namespace catsim
