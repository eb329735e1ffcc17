// Copyright 2026 The tbounds Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Derivative-free local maximization (Nelder-Mead simplex). The simplex is
// rebuilt around the incumbent after each convergence until a rebuild stops
// improving, which guards against premature collapse in flat directions.

#ifndef TBOUNDS_OPTIMIZE_HPP
#define TBOUNDS_OPTIMIZE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace tbounds {

struct SearchOptions {
  double initial_step = 0.25;
  /// Stop once every vertex lies within this (max-norm) distance of the best.
  double step_tolerance = 1e-10;
  std::size_t max_evaluations = 10000;
  std::size_t max_rebuilds = 8;
};

struct SearchResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

template <class Objective>
struct Simplex {
  Objective& f;
  std::size_t& evals;
  std::vector<std::vector<double>> pts;
  std::vector<double> vals;

  void sort() {
    std::vector<std::size_t> idx(vals.size());
    std::iota(idx.begin(), idx.end(), 0);
    // Stable on ties so the run is reproducible.
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
    std::vector<std::vector<double>> p2;
    std::vector<double> v2;
    for (auto k : idx) {
      p2.push_back(std::move(pts[k]));
      v2.push_back(vals[k]);
    }
    pts = std::move(p2);
    vals = std::move(v2);
  }

  double eval(const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? -HUGE_VAL : v;
  }

  double diameter() const {
    double d = 0.0;
    for (std::size_t k = 1; k < pts.size(); ++k)
      for (std::size_t i = 0; i < pts[0].size(); ++i)
        d = std::max(d, std::abs(pts[k][i] - pts[0][i]));
    return d;
  }
};

}  // namespace detail

/// Maximizes `f` starting from `x0`. Deterministic for a deterministic `f`.
template <class Objective>
SearchResult maximize(Objective&& f, std::vector<double> x0,
                      const SearchOptions& opts = {}) {
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
  const std::size_t n = x0.size();
  SearchResult best;
  best.x = x0;
  std::size_t evals = 0;
  best.value = f(x0);
  if (std::isnan(best.value)) best.value = -HUGE_VAL;
  ++evals;
  if (n == 0) {
    best.evaluations = evals;
    best.converged = true;
    return best;
  }

  for (std::size_t rebuild = 0; rebuild <= opts.max_rebuilds; ++rebuild) {
    detail::Simplex<std::remove_reference_t<Objective>> s{f, evals, {}, {}};
    s.pts.push_back(best.x);
    s.vals.push_back(best.value);
    for (std::size_t i = 0; i < n; ++i) {
      auto p = best.x;
      p[i] += opts.initial_step;
      s.vals.push_back(s.eval(p));
      s.pts.push_back(std::move(p));
    }
    s.sort();

    bool converged = false;
    while (evals < opts.max_evaluations) {
      if (s.diameter() < opts.step_tolerance) {
        converged = true;
        break;
      }
      std::vector<double> centroid(n, 0.0);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) centroid[i] += s.pts[k][i] / static_cast<double>(n);
      const auto& worst = s.pts[n];
      auto along = [&](double t) {
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = centroid[i] + t * (centroid[i] - worst[i]);
        return p;
      };

      auto xr = along(kReflect);
      const double fr = s.eval(xr);
      if (fr > s.vals[0]) {
        auto xe = along(kExpand);
        const double fe = s.eval(xe);
        if (fe > fr) {
          s.pts[n] = std::move(xe);
          s.vals[n] = fe;
        } else {
          s.pts[n] = std::move(xr);
          s.vals[n] = fr;
        }
      } else if (fr > s.vals[n - 1]) {
        s.pts[n] = std::move(xr);
        s.vals[n] = fr;
      } else {
        const bool outside = fr > s.vals[n];
        auto xc = along(outside ? kContract : -kContract);
        const double fc = s.eval(xc);
        if (fc > (outside ? fr : s.vals[n])) {
          s.pts[n] = std::move(xc);
          s.vals[n] = fc;
        } else {
          for (std::size_t k = 1; k <= n; ++k) {
            for (std::size_t i = 0; i < n; ++i)
              s.pts[k][i] = s.pts[0][i] + kShrink * (s.pts[k][i] - s.pts[0][i]);
            s.vals[k] = s.eval(s.pts[k]);
          }
        }
      }
      s.sort();
    }

    const bool improved = s.vals[0] > best.value;
    if (s.vals[0] >= best.value) {
      best.x = s.pts[0];
      best.value = s.vals[0];
    }
    best.converged = converged;
    if (!converged || !improved) break;
  }
  best.evaluations = evals;
  return best;
}

}  // namespace tbounds

#endif  // TBOUNDS_OPTIMIZE_HPP
