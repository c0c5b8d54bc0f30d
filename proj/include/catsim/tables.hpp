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

#include "catsim/backaction.hpp"
#include "catsim/optimize.hpp"

namespace catsim {

// Table 1: song, table 2: improved, table 3: simplified.
Variant table_variant(int table_id);

// Lexicographic optimum of (r, s, T) for an even cat of amplitude alpha
// conditioned on m counts. `log` receives every evaluation.
SchemeReport optimize_backaction(Variant v, int m, double alpha, std::vector<OptEval>* log = nullptr);

// Rows m = 2, 4, 6, 8 for the given table, target even cat alpha = 2.
std::vector<SchemeReport> reproduce_table(int table_id);

// Best lambda*T for subtracting m photons toward a cat of the parity of m.
SchemeReport optimize_subtraction(double alpha, int m);

}  // namespace catsim
