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

#include <optional>
#include <utility>
#include <vector>

#include "catsim/css.hpp"
#include "catsim/fock.hpp"
#include "catsim/optimize.hpp"

namespace catsim {

// Kerr phase convention: |n> -> e^{+i chi t n^2}|n>. With chi t = pi/2 this
// maps |b> to (|-b> + i|b>)/sqrt 2 up to a global phase.

FockVector kerr_evolve_ideal(cplx alpha, double chi_t, int dim = 0);

// Lindblad evolution with loss rate gamma, written in units of chi.
// Integrated with an adaptive Dormand-Prince stepper (rtol 1e-9).
FockDensity kerr_master_evolve(cplx alpha, double gamma_over_chi, double chi_t, int dim = 0);
// Closed-form solution of the same master equation for a coherent input.
FockDensity kerr_exact_evolve(cplx alpha, double gamma_over_chi, double chi_t, int dim = 0);

enum class QSeriesForm { printed, corrected };
// Density matrix at chi t = pi/2 rebuilt from the Taylor coefficients of the
// double-series Q function, in either its printed or corrected form.
FockDensity kerr_q_series_density(double beta, double gamma_over_chi, QSeriesForm form, int dim = 0);

enum class KerrMethod { integrator, exact, series_corrected, series_printed };

// Fidelity with (|-b> + i|b>)/sqrt 2 after chi t = pi/2 under loss. With
// optimize_input the input amplitude is searched over [b/2, 2b].
SchemeReport kerr_loss_fidelity(double beta, double gamma_over_chi, bool optimize_input,
                                KerrMethod method = KerrMethod::integrator);

struct KerrMaterial {
  double gamma = 0.0;  // 1/s; 0 means derive from attenuation
  double chi = 0.0;    // 1/s; 0 means derive from n2
  std::optional<double> n2;            // m^2/W
  std::optional<double> a_eff;         // m^2
  std::optional<double> t_pulse;       // s
  std::optional<double> omega;         // rad/s
  std::optional<double> wavelength;    // m, used when omega is absent
  std::optional<double> loss_db_per_km;
  std::optional<double> group_index;   // default 1.468 when deriving gamma
};

double kerr_chi(const KerrMaterial& mat);
double kerr_gamma(const KerrMaterial& mat);
double material_ratio(const KerrMaterial& mat);
// Silica fibre at 1550 nm with the quoted loss rate 1.79e5 1/s.
KerrMaterial fused_silica();
// As2S3 fibre, 100 dB/km, n2 = 2e-18 m^2/W, same pulse geometry.
KerrMaterial chalcogenide();

// C_{n,N}: the Kerr output at chi t = pi/N is sum_n C_n |-a e^{2 pi i n/N}>.
std::vector<cplx> small_kerr_coefficients(int N);
// Kerr output at chi t = pi/N as a one-mode superposition.
Css small_kerr_state(double alpha_i, int N);

struct SmallKerrResult {
  Css state;          // conditioned mode-1 state, normalized
  double phi_star = 0.0;
  double fidelity = 0.0;
  cplx target_alpha;  // i alpha_i / sqrt 2
};

// Kerr, 50/50 splitter, x-quadrature measurement on mode 2 with result x.
SmallKerrResult small_kerr_condition(double alpha_i, int N, double x);
// Fidelity of the conditioned state for a given cat phase.
double small_kerr_fidelity_at(const SmallKerrResult& r, double phi);
// Probability that the x result falls in [-delta, delta].
double small_kerr_probability(double alpha_i, int N, double delta);
// Best cat fidelity (over the cat phase) of the Kerr output before the
// splitter, against a cat of amplitude i alpha_i.
double small_kerr_output_fidelity(double alpha_i, int N);

enum class GerryOutcome { a, b };
// Output after one detector fires: outcome b gives (|a e^{-i phi}> + |a>),
// outcome a the difference.
Css gerry_scheme(double alpha, double phi, GerryOutcome outcome);
double gerry_probability(double alpha, double phi, GerryOutcome outcome);

}  // namespace catsim
