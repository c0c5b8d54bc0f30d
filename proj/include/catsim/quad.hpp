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
#include <functional>
#include <vector>

namespace catsim {

enum class GridKind { gauss_hermite, trapezoid };
enum class Basis { x, p };

// Nodes and weights for integrals of the form  int f(x) dx.
struct QuadGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  GridKind kind = GridKind::trapezoid;

  double integrate(const std::function<double(double)>& f) const;
  std::size_t size() const { return nodes.size(); }
};

// Normalized Hermite function phi_m(x). Throws OverflowGuard for m > 500.
double hermite_fn(int m, double x);
// phi_0..phi_mmax at one point.
std::vector<double> hermite_fns(int mmax, double x);
// phi_m(x) e^{x^2/2}: the orthonormal polynomial for weight e^{-x^2}.
double hermite_poly(int m, double x);

// n-point Gauss-Hermite rule. The weights are "function weights": they
// integrate f(x) directly, with the e^{-x^2} factor already folded in.
// `scale` stretches the nodes for wide integrands.
QuadGrid gauss_hermite(int n, double scale = 1.0);
// Classical weights for  int e^{-x^2} g(x) dx.
QuadGrid gauss_hermite_classical(int n);
// Uniform trapezoid grid on [lo, hi] with spacing at most h.
QuadGrid trapezoid(double lo, double hi, double h);

// Gauss-Hermite integration with node doubling from n0 until successive
// estimates agree to tol.
double integrate_gh(const std::function<double(double)>& f, int n0 = 200, double tol = 1e-9,
                    double scale = 1.0);

// Cat wavefunction for (|-a> +/- |a>), parity = +1 or -1.
std::complex<double> cat_wavefunction(double alpha, int parity, Basis basis, double v);
// <x|a> with x = (a + a^dag)/sqrt 2.
std::complex<double> coherent_wavefunction_x(std::complex<double> alpha, double x);

}  // namespace catsim
