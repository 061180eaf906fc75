// Copyright 2026 The qht Authors
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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qht {

struct NelderMeadOptions {
  double initial_step = 0.25;
  /// Converged when the spread of simplex values is below f_tolerance and
  /// every vertex lies within x_tolerance (sup norm) of the best one.
  double f_tolerance = 1e-10;
  double x_tolerance = 1e-6;
  int max_evaluations = 20000;
  /// Dimension-dependent coefficients (expansion 1 + 2/n, contraction
  /// 3/4 - 1/(2n), shrink 1 - 1/n) instead of (2, 1/2, 1/2); they keep the
  /// simplex from collapsing early in higher dimensions.
  bool adaptive = false;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Derivative-free maximisation of f : R^n -> R with reflection /
/// expansion / contraction / shrink coefficients (1, 2, 1/2, 1/2), or their
/// adaptive variants.
template <typename F>
NelderMeadResult nelder_mead_maximize(F&& f, std::vector<double> x0,
                                      const NelderMeadOptions& opts = {}) {
  const std::size_t n = x0.size();
  NelderMeadResult res;
  if (n == 0) {
    res.value = f(x0);
    res.x = std::move(x0);
    res.evaluations = 1;
    res.converged = true;
    return res;
  }
  // internally minimise g = -f
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return -f(x);
  };
  for (std::size_t i = 0; i < n; ++i) {
    // step inward when possible so the start simplex stays in the unit box
    const double step = pts[i + 1][i] + opts.initial_step <= 1.0
                            ? opts.initial_step
                            : -opts.initial_step;
    pts[i + 1][i] += step;
  }
  for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  const double dn = static_cast<double>(n);
  const double expand = opts.adaptive ? 1.0 + 2.0 / dn : 2.0;
  const double contract = opts.adaptive ? 0.75 - 0.5 / dn : 0.5;
  const double shrink = opts.adaptive ? 1.0 - 1.0 / dn : 0.5;
  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double xspread = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        xspread = std::max(xspread, std::abs(pts[i][k] - pts[best][k]));
    const double fspread = vals[worst] - vals[best];
    if (fspread <= opts.f_tolerance && xspread <= opts.x_tolerance) {
      res.converged = true;
      break;
    }
    if (evals >= opts.max_evaluations) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    for (std::size_t k = 0; k < n; ++k)
      xr[k] = centroid[k] + (centroid[k] - pts[worst][k]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      for (std::size_t k = 0; k < n; ++k)
        xe[k] = centroid[k] + expand * (centroid[k] - pts[worst][k]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    for (std::size_t k = 0; k < n; ++k) {
      xc[k] = outside ? centroid[k] + contract * (xr[k] - centroid[k])
                      : centroid[k] + contract * (pts[worst][k] - centroid[k]);
    }
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k)
        pts[i][k] = pts[best][k] + shrink * (pts[i][k] - pts[best][k]);
      vals[i] = eval(pts[i]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  const auto idx = static_cast<std::size_t>(it - vals.begin());
  res.x = pts[idx];
  res.value = -vals[idx];
  res.evaluations = evals;
  return res;
}

}  // namespace qht
