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

#include "catsim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "catsim/errors.hpp"

namespace catsim {

double SchemeReport::param(const std::string& name) const {
  for (const auto& [k, v] : params) {
    if (k == name) return v;
  }
  throw InvalidArgument("optimize", "SchemeReport: no parameter named " + name);
}

void SchemeReport::set_probability(double p) {
  probability = p;
  log10_probability = p > 0.0 ? std::log10(p) : -std::numeric_limits<double>::infinity();
}

namespace {

std::vector<double> project(std::vector<double> x, const std::vector<std::pair<double, double>>& box) {
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::clamp(x[k], box[k].first, box[k].second);
  return x;
}

struct Vertex {
  std::vector<double> x;
  double f;
};

// One Nelder-Mead run with standard coefficients.
Vertex nm_run(const std::function<double(const std::vector<double>&)>& f, const std::vector<double>& x0,
              const std::vector<std::pair<double, double>>& box, double step_frac, int budget, int& used) {
  const std::size_t n = x0.size();
  std::vector<Vertex> s;
  s.push_back({x0, f(x0)});
  ++used;
  for (std::size_t k = 0; k < n; ++k) {
    auto x = x0;
    const double w = box[k].second - box[k].first;
    double step = step_frac * (w > 0 ? w : 1.0);
    if (x[k] + step > box[k].second) step = -step;
    x[k] += step;
    x = project(x, box);
    s.push_back({x, f(x)});
    ++used;
  }
  auto by_f = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  while (used < budget) {
    std::sort(s.begin(), s.end(), by_f);
    double diam = 0.0;
    for (std::size_t v = 1; v <= n; ++v) {
      for (std::size_t k = 0; k < n; ++k) {
        const double w = box[k].second - box[k].first;
        diam = std::max(diam, std::abs(s[v].x[k] - s[0].x[k]) / (w > 0 ? w : 1.0));
      }
    }
    if (std::abs(s[n].f - s[0].f) <= 1e-14 * (1.0 + std::abs(s[0].f)) && diam < 1e-9) break;
    if (diam < 1e-12) break;
    std::vector<double> c(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t k = 0; k < n; ++k) c[k] += s[v].x[k] / n;
    }
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = c[k] + t * (s[n].x[k] - c[k]);
      return project(x, box);
    };
    const auto xr = along(-1.0);
    const double fr = f(xr);
    ++used;
    if (fr < s[0].f) {
      const auto xe = along(-2.0);
      const double fe = f(xe);
      ++used;
      s[n] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < s[n - 1].f) {
      s[n] = {xr, fr};
    } else {
      const bool outside = fr < s[n].f;
      const auto xc = along(outside ? -0.5 : 0.5);
      const double fc = f(xc);
      ++used;
      if (fc < std::min(fr, s[n].f)) {
        s[n] = {xc, fc};
      } else {
        for (std::size_t v = 1; v <= n; ++v) {
          for (std::size_t k = 0; k < n; ++k) s[v].x[k] = s[0].x[k] + 0.5 * (s[v].x[k] - s[0].x[k]);
          s[v].x = project(s[v].x, box);
          s[v].f = f(s[v].x);
          ++used;
        }
      }
    }
  }
  return *std::min_element(s.begin(), s.end(), by_f);
}

}  // namespace

std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> x0,
                                const std::vector<std::pair<double, double>>& box, int max_evals,
                                int* evals) {
  if (x0.size() != box.size()) throw DimensionMismatch("optimize", "nelder_mead: box size");
  x0 = project(std::move(x0), box);
  int used = 0;
  Vertex best = nm_run(f, x0, box, 0.05, max_evals, used);
  // Restart from the converged point; a collapsed simplex often stalls short
  // of the optimum.
  double step = 0.02;
  while (used < max_evals) {
    const Vertex again = nm_run(f, best.x, box, step, max_evals, used);
    const bool improved = again.f < best.f - 1e-14 * (1.0 + std::abs(best.f));
    if (again.f < best.f) best = again;
    if (!improved) break;
    step *= 0.5;
  }
  if (evals) *evals = used;
  return best.x;
}

SchemeReport maximize_lex(const OptProblem& problem, std::vector<OptEval>* log) {
  const std::size_t dim = problem.box.size();
  if (dim == 0 || !problem.objective) throw InvalidArgument("optimize", "maximize_lex: empty problem");
  for (const auto& [lo, hi] : problem.box) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
      throw InvalidArgument("optimize", "maximize_lex: box must be finite");
    }
  }
  std::vector<OptEval> evals;
  auto eval = [&](const std::vector<double>& x) {
    FidProb r{0.0, 0.0};
    try {
      r = problem.objective(x);
    } catch (const ZeroProbabilityEvent&) {
      r = {0.0, 0.0};
    }
    if (!std::isfinite(r.fidelity)) r.fidelity = 0.0;
    if (!std::isfinite(r.probability)) r.probability = 0.0;
    evals.push_back({x, r.fidelity, r.probability});
    return r;
  };

  // Grid phase.
  const int g = std::max(2, problem.grid_points);
  std::vector<int> idx(dim, 0);
  std::vector<OptEval> grid;
  while (true) {
    std::vector<double> x(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      const auto [lo, hi] = problem.box[k];
      x[k] = lo + (hi - lo) * idx[k] / (g - 1);
    }
    const auto r = eval(x);
    grid.push_back({x, r.fidelity, r.probability});
    std::size_t k = 0;
    while (k < dim && ++idx[k] == g) idx[k++] = 0;
    if (k == dim) break;
  }
  auto lex_better = [](const OptEval& a, const OptEval& b) {
    if (a.fidelity != b.fidelity) return a.fidelity > b.fidelity;
    return a.probability > b.probability;
  };
  std::stable_sort(grid.begin(), grid.end(), lex_better);

  std::vector<std::vector<double>> starts;
  for (int k = 0; k < problem.top_k && k < static_cast<int>(grid.size()); ++k) starts.push_back(grid[k].x);
  for (const auto& s : problem.seeds) {
    if (s.size() != dim) throw DimensionMismatch("optimize", "maximize_lex: seed size");
    starts.push_back(project(s, problem.box));
  }

  auto neg_f = [&](const std::vector<double>& x) { return -eval(x).fidelity; };
  std::vector<std::vector<double>> optima;
  for (const auto& s : starts) optima.push_back(nelder_mead(neg_f, s, problem.box, problem.max_evals));

  double f_best = 0.0;
  for (const auto& e : evals) f_best = std::max(f_best, e.fidelity);
  if (!(f_best > 0.0)) {
    if (log) *log = evals;
    throw NoFeasiblePoint("optimize", "maximize_lex: no point with positive fidelity");
  }

  if (problem.refine_probability) {
    const double fstar = f_best;
    const double tol = problem.tol_f;
    auto walk = [&](const std::vector<double>& x) {
      const auto r = eval(x);
      const double lp = r.probability > 0.0 ? std::log(r.probability) : -1e3;
      const double excess = std::max(0.0, (fstar - r.fidelity) / tol - 0.5);
      return -lp + problem.penalty * excess;
    };
    std::vector<double> x0;
    double pbest = -1.0;
    for (const auto& e : evals) {
      if (e.fidelity >= fstar - tol && e.probability > pbest) {
        pbest = e.probability;
        x0 = e.x;
      }
    }
    nelder_mead(walk, x0, problem.box, problem.max_evals);
  }

  f_best = 0.0;
  for (const auto& e : evals) f_best = std::max(f_best, e.fidelity);
  const OptEval* pick = nullptr;
  for (const auto& e : evals) {
    if (e.fidelity >= f_best - problem.tol_f && (!pick || e.probability > pick->probability)) pick = &e;
  }

  SchemeReport rep;
  rep.fidelity = pick->fidelity;
  rep.set_probability(pick->probability);
  for (std::size_t k = 0; k < dim; ++k) {
    const std::string name = k < problem.names.size() ? problem.names[k] : "x" + std::to_string(k);
    rep.params.emplace_back(name, pick->x[k]);
  }
  rep.notes.push_back("evaluations=" + std::to_string(evals.size()));
  if (log) *log = std::move(evals);
  return rep;
}

}  // namespace catsim
