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
#include <limits>
#include <stdexcept>

namespace qht {

struct ScalarSearch {
  int grid_points = 201;
  double tolerance = 1e-10;
};

struct ScalarOptimum {
  double arg = 0.0;
  double value = -std::numeric_limits<double>::infinity();
};

/// Maximises f on [lo, hi]: evaluate a uniform grid, then golden-section
/// refine inside the two cells adjacent to the best grid point until the
/// bracket is narrower than opts.tolerance. The returned value is never
/// below the best grid value.
template <typename F>
ScalarOptimum grid_golden_maximize(F&& f, double lo, double hi,
                                   const ScalarSearch& opts = {}) {
  if (!(hi >= lo)) throw std::invalid_argument("grid_golden_maximize: hi < lo");
  const int n = std::max(opts.grid_points, 3);
  const double step = (hi - lo) / (n - 1);

  ScalarOptimum best;
  int best_k = 0;
  for (int k = 0; k < n; ++k) {
    const double x = (k == n - 1) ? hi : lo + step * k;
    const double v = f(x);
    if (v > best.value || k == 0) {
      best = {x, v};
      best_k = k;
    }
  }
  if (hi == lo || !std::isfinite(best.value)) return best;

  double a = lo + step * std::max(best_k - 1, 0);
  double b = (best_k + 1 >= n - 1) ? hi : lo + step * (best_k + 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > opts.tolerance) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  if (fc > best.value) best = {c, fc};
  if (fd > best.value) best = {d, fd};
  return best;
}

template <typename F>
ScalarOptimum grid_golden_minimize(F&& f, double lo, double hi,
                                   const ScalarSearch& opts = {}) {
  ScalarOptimum r =
      grid_golden_maximize([&](double x) { return -f(x); }, lo, hi, opts);
  r.value = -r.value;
  return r;
}

/// Root of a continuous g with g(lo) and g(hi) of opposite sign.
template <typename G>
double bisect_root(G&& g, double lo, double hi, double tol = 1e-12,
                   int max_iter = 200) {
  double glo = g(lo);
  if (glo == 0.0) return lo;
  const double ghi = g(hi);
  if (ghi == 0.0) return hi;
  if ((glo > 0) == (ghi > 0)) {
    throw std::invalid_argument("bisect_root: root not bracketed");
  }
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0) == (glo > 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace qht
