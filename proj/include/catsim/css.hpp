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

inline constexpr std::size_t kCssTermCap = 4096;

struct CssTerm {
  cplx coeff;
  std::vector<cplx> amps;  // one coherent amplitude per mode
};

// sum_k c_k |a_k1> x ... x |a_kM>, held exactly.
struct Css {
  int modes = 0;
  std::vector<CssTerm> terms;

  std::size_t size() const { return terms.size(); }
};

// <a|b> for single-mode coherent states.
cplx coherent_overlap(cplx a, cplx b);

Css css_coherent(const std::vector<cplx>& amps);
// (|-a> + e^{i phi}|a>)/sqrt(N_phi) on one mode.
Css css_cat(cplx alpha, double phi);
Css css_tensor(const Css& a, const Css& b);

cplx css_inner(const Css& a, const Css& b);
double css_norm2(const Css& s);
Css css_normalize(const Css& s);
Css css_scale(const Css& s, cplx c);
// Appends the terms of b (same mode count) to a.
Css css_add(const Css& a, const Css& b);
// Merges terms with amplitudes equal within tol. Throws TermCountOverflow
// if more than kCssTermCap terms remain.
Css css_dedup(const Css& s, double tol = 1e-12);

Css css_beam_splitter(const Css& s, int i, int j, double T);
Css css_displace(const Css& s, int mode, cplx delta);
// Projects one mode onto <n|. Returns the unnormalized remainder and its
// squared norm.
std::pair<Css, double> css_project_fock(const Css& s, int mode, int n);

// Fock expansion with `dim` levels per mode, normalized.
FockVector css_to_fock(const Css& s, int dim);

}  // namespace catsim
