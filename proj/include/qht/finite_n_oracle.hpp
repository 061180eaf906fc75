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

// Exact finite-blocklength optimal errors. One-way LOCC is computed through
// its classical reduction, global POVMs through the Helstrom formula.

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qht/classical_ht.hpp"
#include "qht/exponent_formulas.hpp"
#include "qht/schmidt.hpp"

namespace qht::oracle {

inline constexpr int kMaxTrendLength = 500;
inline constexpr int kMaxAlphabet = 36;

/// Exact n-copy one-way LOCC optimum beta_{n,->}(alpha).
inline NeymanPearsonResult one_way_beta(const SchmidtSpectrum& s, int n,
                                        double alpha) {
  return neyman_pearson_iid(one_way_reduction(s), n, alpha);
}

/// Smallest n >= 1 with d_max^(-n) <= alpha, i.e. ceil(-ln alpha / ln d_max)
/// evaluated without rounding trouble at exact powers.
inline int zero_error_threshold(double alpha, const SchmidtSpectrum& s) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("zero_error_threshold: alpha outside (0,1)");
  }
  if (s.d_max() == 1) {
    throw std::invalid_argument("zero_error_threshold: d_max = 1");
  }
  const double log_d = std::log(static_cast<double>(s.d_max()));
  const double log_alpha = std::log(alpha);
  int n = std::max(1, static_cast<int>(std::ceil(-log_alpha / log_d)) - 1);
  while (-n * log_d > log_alpha + 1e-12) ++n;
  return n;
}

/// ln P_{n,g}(pi0, pi1): the trace norm of pi0 I / D^n - pi1 |Psi><Psi|^(n)
/// is pi0 (D^n - 1) / D^n + |pi0 / D^n - pi1|, so P = min(pi0 D^-n, pi1).
inline double log_global_mean_error(const SchmidtSpectrum& s, int n, double pi0,
                                    double pi1) {
  if (n < 1) throw std::invalid_argument("global_mean_error: n < 1");
  if (pi0 < 0.0 || pi1 < 0.0 || std::abs(pi0 + pi1 - 1.0) > 1e-12) {
    throw std::invalid_argument("global_mean_error: priors must be a distribution");
  }
  const double a = pi0 > 0.0 ? std::log(pi0) - n * s.log_total_dim() : -kInf;
  const double b = pi1 > 0.0 ? std::log(pi1) : -kInf;
  return std::min(a, b);
}

/// P_{n,g} in the linear domain; exact whenever D^-n is representable.
inline double global_mean_error(const SchmidtSpectrum& s, int n, double pi0,
                                double pi1) {
  log_global_mean_error(s, n, pi0, pi1);  // argument checks
  return std::min(pi0 * std::pow(static_cast<double>(s.total_dim()), -n), pi1);
}

struct TrendRow {
  int n = 0;
  double error = 0.0;
  /// -(1/n) ln(error); +inf when the error is exactly zero.
  double estimate = 0.0;
};

struct OracleTrend {
  std::vector<TrendRow> rows;
};

struct TrendMode {
  enum class Kind { SteinAlpha, HoeffdingBeta };
  Kind kind = Kind::SteinAlpha;
  /// beta cap (SteinAlpha) or the type 1 exponent r (HoeffdingBeta).
  double parameter = 0.0;

  static TrendMode stein_alpha(double beta_cap) {
    if (!(beta_cap > 0.0 && beta_cap < 1.0)) {
      throw std::invalid_argument("stein_alpha trend: cap outside (0,1)");
    }
    return {Kind::SteinAlpha, beta_cap};
  }
  static TrendMode hoeffding_beta(double r) {
    if (!(r > 0.0)) throw std::invalid_argument("hoeffding_beta trend: r <= 0");
    return {Kind::HoeffdingBeta, r};
  }
};

inline double exponent_estimate(int n, double log_error) {
  return log_error == -kInf ? kInf : -log_error / n;
}

/// Exact one-way optimal errors for n = 1 .. n_max.
///
/// stein_alpha(cap): minimal alpha with beta <= cap, estimate of the alpha
/// exponent. hoeffding_beta(r): minimal beta with alpha <= e^(-r n),
/// estimate of the beta exponent.
inline OracleTrend exponent_trend(const SchmidtSpectrum& s, const TrendMode& mode,
                                  int n_max) {
  if (n_max < 1 || n_max > kMaxTrendLength) {
    throw std::invalid_argument("exponent_trend: n_max outside [1, 500]");
  }
  if (s.total_dim() > kMaxAlphabet) {
    throw std::invalid_argument("exponent_trend: more than 36 single-copy labels");
  }
  const LabeledDistPair pair = one_way_reduction(s);
  OracleTrend trend;
  trend.rows.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const IidClassTable table(pair, n);
    TrendRow row;
    row.n = n;
    double log_err = 0.0;
    if (mode.kind == TrendMode::Kind::SteinAlpha) {
      const NeymanPearsonResult np = neyman_pearson_iid_beta_cap(table, mode.parameter);
      log_err = np.log_alpha;
      row.error = np.alpha_achieved;
    } else {
      const NeymanPearsonResult np =
          neyman_pearson_iid(table, std::exp(-mode.parameter * n));
      log_err = np.log_beta;
      row.error = np.beta_opt;
    }
    row.estimate = exponent_estimate(n, log_err);
    trend.rows.push_back(row);
  }
  return trend;
}

/// -(1/n) ln P_{n,g}(kappa0, kappa1 | phi0 || psi) with the composite priors
/// kappa0 = (pi0 / d_max^n) / Z and kappa1 = pi1 / Z, Z = pi0 / d_max^n + pi1.
/// The limit is -2 ln <psi|phi0> + ln d_max.
inline OracleTrend separable_witness_trend(const SchmidtSpectrum& s, int n_max,
                                           double pi0 = 0.5, double pi1 = 0.5) {
  if (n_max < 1 || n_max > kMaxTrendLength) {
    throw std::invalid_argument("separable_witness_trend: n_max outside [1, 500]");
  }
  const double overlap_sq = measures(s).overlap_sq_with_phi0;
  const double log_dmax = std::log(static_cast<double>(s.d_max()));
  OracleTrend trend;
  for (int n = 1; n <= n_max; ++n) {
    const double w0 = pi0 * std::exp(-n * log_dmax);
    const double z = w0 + pi1;
    const double p =
        helstrom_two_pure(std::pow(overlap_sq, n), w0 / z, pi1 / z);
    trend.rows.push_back({n, p, exponent_estimate(n, p > 0.0 ? std::log(p) : -kInf)});
  }
  return trend;
}

/// Numerical arbitration of the one-way B threshold.
struct BThresholdArbitration {
  double corrected_threshold = 0.0;  // ln D - ln R_s
  double printed_threshold = 0.0;    // ln D + ln R_s
  double r_below = 0.0;
  double r_above = 0.0;
  /// First n with beta = 0 at alpha_n = e^(-r_below n), if any.
  std::optional<int> zero_beta_at;
  /// beta stayed positive at r_above for every n.
  bool above_beta_positive = true;
  double above_first_estimate = 0.0;
  double above_last_estimate = 0.0;
  /// The finite-branch formula and the classical Hoeffding value of the
  /// swapped reduced pair, both at r_above.
  Exponent finite_branch_formula;
  Exponent classical_reduction;
  std::string verdict;  // "corrected", "printed" or "inconclusive"
};

inline BThresholdArbitration arbitrate_B(const SchmidtSpectrum& s, double r_below,
                                         double r_above, int n_max) {
  BThresholdArbitration out;
  const double log_d = s.log_total_dim();
  const double log_rank = std::log(static_cast<double>(s.rank()));
  out.corrected_threshold = log_d - log_rank;
  out.printed_threshold = log_d + log_rank;
  out.r_below = r_below;
  out.r_above = r_above;

  const OracleTrend below = exponent_trend(s, TrendMode::hoeffding_beta(r_below), n_max);
  for (const auto& row : below.rows) {
    if (row.error == 0.0) {
      out.zero_beta_at = row.n;
      break;
    }
  }
  const OracleTrend above = exponent_trend(s, TrendMode::hoeffding_beta(r_above), n_max);
  for (const auto& row : above.rows)
    if (row.error == 0.0) out.above_beta_positive = false;
  out.above_first_estimate = above.rows.front().estimate;
  out.above_last_estimate = above.rows.back().estimate;

  out.finite_branch_formula = hoeffding_B(s, PovmClass::OneWayLOCC, r_above).lower;
  out.classical_reduction = hoeffding_exponent(one_way_reduction(s).swapped(), r_above);

  // r_above lies between the two candidate thresholds: the printed one
  // predicts beta = 0 there, the corrected one a finite exponent.
  const bool between = r_above > out.corrected_threshold && r_above <= out.printed_threshold;
  const bool below_ok = r_below <= out.corrected_threshold && out.zero_beta_at.has_value();
  if (between && below_ok && out.above_beta_positive &&
      out.above_last_estimate < out.above_first_estimate) {
    out.verdict = "corrected";
  } else if (between && !out.above_beta_positive) {
    out.verdict = "printed";
  } else {
    out.verdict = "inconclusive";
  }
  return out;
}

}  // namespace qht::oracle
