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

// Asymptotic error exponents for testing the completely mixed state (null)
// against a bipartite pure state |Psi> (alternative), per POVM class.

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "qht/classical_ht.hpp"
#include "qht/exponent.hpp"
#include "qht/schmidt.hpp"

namespace qht {

enum class PovmClass { Global, OneWayLOCC, Separable };

inline const char* to_string(PovmClass c) {
  switch (c) {
    case PovmClass::Global:
      return "global";
    case PovmClass::OneWayLOCC:
      return "oneway";
    case PovmClass::Separable:
      return "sep";
  }
  return "?";
}

/// The classical pair that one-way LOCC reduces to: the uniform
/// distribution on the d_A d_B product-basis labels against the diagonal of
/// sigma_Psi = sum_i lambda_i |ii><ii|. Labels are "(a,b)", 1-based.
inline LabeledDistPair one_way_reduction(const SchmidtSpectrum& s) {
  const int d = s.total_dim();
  std::vector<std::string> labels;
  std::vector<double> p(static_cast<std::size_t>(d), 1.0 / d);
  std::vector<double> q(static_cast<std::size_t>(d), 0.0);
  labels.reserve(static_cast<std::size_t>(d));
  for (int a = 0; a < s.d_a(); ++a) {
    for (int b = 0; b < s.d_b(); ++b) {
      labels.push_back("(" + std::to_string(a + 1) + "," +
                       std::to_string(b + 1) + ")");
      if (a == b) q[static_cast<std::size_t>(a * s.d_b() + b)] = s.lambda(a);
    }
  }
  return LabeledDistPair::make(std::move(labels), std::move(p), std::move(q));
}

struct SteinExponents {
  Exponent alpha;
  Exponent beta;
  Exponent strong_converse;
};

/// Stein-type exponents. beta is +inf for every class; the alpha exponent
/// and its strong converse equal ln d_A d_B - E for one-way LOCC and
/// separable POVMs, and ln d_A d_B globally.
inline SteinExponents stein_exponents(const SchmidtSpectrum& s, PovmClass c) {
  const double log_d = s.log_total_dim();
  if (c == PovmClass::Global) {
    return {Exponent(log_d), Exponent::infinity(), Exponent(log_d)};
  }
  const double a = log_d - measures(s).entropy_of_entanglement;
  return {Exponent(a), Exponent::infinity(), Exponent(a)};
}

struct ExponentReport {
  Exponent stein_alpha;
  Exponent stein_beta;
  Exponent chernoff;
  /// ln d_A d_B - ln R_s for one-way LOCC; equal to `chernoff` otherwise.
  Exponent chernoff_paper_closed_form;
  bool closed_form_valid = true;
  /// Minimiser of the reduced-pair overlap (one-way LOCC only).
  double chernoff_s_star = 0.0;
};

/// The Schmidt-rank closed form for the one-way Chernoff exponent holds
/// exactly when the reduced overlap D^(s-1) sum lambda^s is minimised at
/// s = 0, i.e. when its log-derivative there, ln D + mean(ln lambda_i), is
/// nonnegative.
inline bool one_way_closed_form_valid(const SchmidtSpectrum& s) {
  double mean_log = 0.0;
  for (double x : s.lambdas()) mean_log += std::log(x);
  mean_log /= s.rank();
  return s.log_total_dim() + mean_log >= 0.0;
}

inline ExponentReport chernoff_exponent_class(const SchmidtSpectrum& s,
                                              PovmClass c,
                                              const ScalarSearch& opts = {}) {
  ExponentReport rep;
  const SteinExponents st = stein_exponents(s, c);
  rep.stein_alpha = st.alpha;
  rep.stein_beta = st.beta;
  const double log_d = s.log_total_dim();
  switch (c) {
    case PovmClass::Global:
      rep.chernoff = Exponent(log_d);
      rep.chernoff_paper_closed_form = rep.chernoff;
      break;
    case PovmClass::Separable:
      rep.chernoff = Exponent(log_d - measures(s).log_robustness);
      rep.chernoff_paper_closed_form = rep.chernoff;
      break;
    case PovmClass::OneWayLOCC: {
      const ChernoffResult exact = chernoff(one_way_reduction(s), opts);
      rep.chernoff = exact.exponent;
      rep.chernoff_s_star = exact.s_star;
      rep.chernoff_paper_closed_form =
          Exponent(log_d - std::log(static_cast<double>(s.rank())));
      rep.closed_form_valid = one_way_closed_form_valid(s);
      break;
    }
  }
  return rep;
}

/// A Hoeffding exponent that is either known exactly (lower == upper) or
/// only bracketed.
struct HoeffdingBound {
  Exponent lower;
  Exponent upper;
  /// r at or below which the exponent is pinned by a boundary case
  /// (see hoeffding_A / hoeffding_B).
  std::optional<double> threshold;
  /// One-way B only: the competing threshold ln d_A d_B + ln R_s, kept for
  /// comparison against `threshold`.
  std::optional<double> printed_threshold;

  bool exact() const { return lower == upper; }
  static HoeffdingBound point(Exponent e) { return {e, e, {}, {}}; }
};

/// sup_{0 <= s < 1} (-r s - ln sum_i lambda_i^s) / (1 - s), the
/// spectrum-dependent part of the one-way A exponent.
inline double one_way_a_sup(const SchmidtSpectrum& s, double r,
                            const ScalarSearch& opts = {}) {
  auto g = [&](double t) {
    double acc = 0.0;
    for (double x : s.lambdas()) acc += std::pow(x, t);
    return (-r * t - std::log(acc)) / (1.0 - t);
  };
  return grid_golden_maximize(g, 0.0, kHoeffdingSMax, opts).value;
}

/// Best type 1 exponent with the type 2 exponent held at least r.
///
/// Separable POVMs: [ln D - LR, ln D - E] for r <= ln d_min - LR, and
/// exactly ln D - LR above that (`threshold` = ln d_min - LR).
inline HoeffdingBound hoeffding_A(const SchmidtSpectrum& s, PovmClass c,
                                  double r, const ScalarSearch& opts = {}) {
  if (!(r > 0.0)) throw std::invalid_argument("hoeffding_A: r <= 0");
  const double log_d = s.log_total_dim();
  switch (c) {
    case PovmClass::Global:
      return HoeffdingBound::point(Exponent(log_d));
    case PovmClass::OneWayLOCC:
      return HoeffdingBound::point(Exponent(log_d + one_way_a_sup(s, r, opts)));
    case PovmClass::Separable: {
      const MeasureReport m = measures(s);
      const double cut = std::log(static_cast<double>(s.d_min())) - m.log_robustness;
      HoeffdingBound b;
      b.lower = Exponent(log_d - m.log_robustness);
      b.upper = r <= cut ? Exponent(log_d - m.entropy_of_entanglement) : b.lower;
      b.threshold = cut;
      return b;
    }
  }
  throw std::logic_error("hoeffding_A: bad class");
}

/// Best type 2 exponent with the type 1 exponent held at least r.
///
/// All piecewise boundaries are closed on the +inf side. One-way LOCC uses
/// the threshold ln D - ln R_s (accepting the support of sigma_Psi reaches
/// that type 1 exponent with zero type 2 error); the competing ln D + ln R_s
/// is reported in `printed_threshold`. Separable POVMs between
/// ln D - LR and ln D - E are only bracketed by [0, ln d_min - LR].
inline HoeffdingBound hoeffding_B(const SchmidtSpectrum& s, PovmClass c,
                                  double r, const ScalarSearch& opts = {}) {
  if (!(r >= 0.0)) throw std::invalid_argument("hoeffding_B: r < 0");
  const double log_d = s.log_total_dim();
  switch (c) {
    case PovmClass::Global: {
      HoeffdingBound b = HoeffdingBound::point(
          r <= log_d ? Exponent::infinity() : Exponent(0.0));
      b.threshold = log_d;
      return b;
    }
    case PovmClass::OneWayLOCC: {
      const double log_rank = std::log(static_cast<double>(s.rank()));
      const double cut = log_d - log_rank;
      HoeffdingBound b;
      if (r <= cut) {
        b = HoeffdingBound::point(Exponent::infinity());
      } else {
        auto g = [&](double t) {
          double acc = 0.0;
          for (double x : s.lambdas()) acc += std::pow(x, 1.0 - t);
          return (-(r - log_d) * t - std::log(acc)) / (1.0 - t);
        };
        b = HoeffdingBound::point(Exponent(
            grid_golden_maximize(g, 0.0, kHoeffdingSMax, opts).value));
      }
      b.threshold = cut;
      b.printed_threshold = log_d + log_rank;
      return b;
    }
    case PovmClass::Separable: {
      const MeasureReport m = measures(s);
      const double lo_cut = log_d - m.log_robustness;
      const double hi_cut = log_d - m.entropy_of_entanglement;
      HoeffdingBound b;
      if (r <= lo_cut) {
        b = HoeffdingBound::point(Exponent::infinity());
      } else if (r >= hi_cut) {
        b = HoeffdingBound::point(Exponent(0.0));
      } else {
        b.lower = Exponent(0.0);
        b.upper = Exponent(std::log(static_cast<double>(s.d_min())) -
                           m.log_robustness);
      }
      b.threshold = lo_cut;
      return b;
    }
  }
  throw std::logic_error("hoeffding_B: bad class");
}

/// Minimal mean error for discriminating two pure states with priors
/// (k0, k1) and squared overlap `overlap_sq`: 1/2 - 1/2 sqrt(1 - nu) with
/// nu = 4 overlap_sq k0 k1, evaluated as nu / (2 (1 + sqrt(1 - nu))).
inline double helstrom_two_pure(double overlap_sq, double k0, double k1) {
  if (k0 < 0.0 || k1 < 0.0 || std::abs(k0 + k1 - 1.0) > 1e-12) {
    throw std::invalid_argument("helstrom_two_pure: priors must be a distribution");
  }
  const double nu = 4.0 * overlap_sq * k0 * k1;
  if (nu > 1.0 + 1e-12 || nu < 0.0) {
    throw std::invalid_argument("helstrom_two_pure: nu outside [0,1]");
  }
  const double root = std::sqrt(std::max(0.0, 1.0 - nu));
  return nu / (2.0 * (1.0 + root));
}

}  // namespace qht
