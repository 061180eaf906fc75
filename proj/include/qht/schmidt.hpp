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
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qht {

enum class SpectrumErrorKind {
  NotNormalized,
  RankExceedsDimension,
  NegativeCoefficient,
  InvalidDimension,
};

inline const char* to_string(SpectrumErrorKind k) {
  switch (k) {
    case SpectrumErrorKind::NotNormalized:
      return "NotNormalized";
    case SpectrumErrorKind::RankExceedsDimension:
      return "RankExceedsDimension";
    case SpectrumErrorKind::NegativeCoefficient:
      return "NegativeCoefficient";
    case SpectrumErrorKind::InvalidDimension:
      return "InvalidDimension";
  }
  return "Unknown";
}

class SpectrumError : public std::invalid_argument {
 public:
  SpectrumError(SpectrumErrorKind kind, const std::string& what)
      : std::invalid_argument(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}
  SpectrumErrorKind kind() const { return kind_; }

 private:
  SpectrumErrorKind kind_;
};

/// A bipartite pure state sum_i sqrt(lambda_i)|i>|i> given by its Schmidt
/// coefficients and the local dimensions. Only strictly positive
/// coefficients are stored, in nonincreasing order, so rank() is structural.
class SchmidtSpectrum {
 public:
  static constexpr double kInputTolerance = 1e-9;
  static constexpr double kInvariantTolerance = 1e-12;

  /// Zeros are dropped, entries sorted descending, and the vector is
  /// renormalised when its sum is within 1e-9 of one.
  static SchmidtSpectrum validate(std::span<const double> raw, int d_a,
                                  int d_b) {
    if (d_a < 1 || d_b < 1) {
      throw SpectrumError(SpectrumErrorKind::InvalidDimension,
                          "local dimensions must be positive");
    }
    std::vector<double> kept;
    kept.reserve(raw.size());
    for (double x : raw) {
      if (std::isnan(x) || x < 0.0) {
        throw SpectrumError(SpectrumErrorKind::NegativeCoefficient,
                            "coefficient " + std::to_string(x));
      }
      if (x > 0.0) kept.push_back(x);
    }
    const double total = std::accumulate(kept.begin(), kept.end(), 0.0);
    if (kept.empty() || std::abs(total - 1.0) > kInputTolerance) {
      throw SpectrumError(SpectrumErrorKind::NotNormalized,
                          "coefficients sum to " + std::to_string(total));
    }
    if (static_cast<int>(kept.size()) > std::min(d_a, d_b)) {
      throw SpectrumError(SpectrumErrorKind::RankExceedsDimension,
                          std::to_string(kept.size()) +
                              " positive coefficients for dimensions " +
                              std::to_string(d_a) + "x" + std::to_string(d_b));
    }
    std::sort(kept.begin(), kept.end(), std::greater<>());
    for (double& x : kept) x /= total;
    return SchmidtSpectrum(std::move(kept), d_a, d_b);
  }

  static SchmidtSpectrum validate(std::initializer_list<double> raw, int d_a,
                                  int d_b) {
    return validate(std::span<const double>(raw.begin(), raw.size()), d_a,
                    d_b);
  }

  const std::vector<double>& lambdas() const { return lambdas_; }
  /// Coefficient for Schmidt index h (0-based), zero beyond the rank.
  double lambda(int h) const {
    return h < rank() ? lambdas_[static_cast<std::size_t>(h)] : 0.0;
  }
  int d_a() const { return d_a_; }
  int d_b() const { return d_b_; }
  int d_min() const { return std::min(d_a_, d_b_); }
  int d_max() const { return std::max(d_a_, d_b_); }
  int total_dim() const { return d_a_ * d_b_; }
  int rank() const { return static_cast<int>(lambdas_.size()); }
  double log_total_dim() const {
    return std::log(static_cast<double>(d_a_)) +
           std::log(static_cast<double>(d_b_));
  }

  bool is_product() const { return rank() == 1; }
  bool is_maximally_entangled() const {
    if (rank() != d_min()) return false;
    const double u = 1.0 / d_min();
    return std::all_of(lambdas_.begin(), lambdas_.end(), [u](double x) {
      return std::abs(x - u) <= kInvariantTolerance;
    });
  }

  friend bool operator==(const SchmidtSpectrum&,
                         const SchmidtSpectrum&) = default;

 private:
  SchmidtSpectrum(std::vector<double> l, int d_a, int d_b)
      : lambdas_(std::move(l)), d_a_(d_a), d_b_(d_b) {}

  std::vector<double> lambdas_;
  int d_a_ = 1;
  int d_b_ = 1;
};

/// Spectrum of |Psi1> (x) |Psi2> on (dA1 dA2) x (dB1 dB2).
inline SchmidtSpectrum tensor_product(const SchmidtSpectrum& a,
                                      const SchmidtSpectrum& b) {
  std::vector<double> l;
  for (double x : a.lambdas())
    for (double y : b.lambdas()) l.push_back(x * y);
  return SchmidtSpectrum::validate(l, a.d_a() * b.d_a(), a.d_b() * b.d_b());
}

struct MeasureReport {
  double entropy_of_entanglement = 0.0;  // nats
  int schmidt_rank = 1;
  double log_robustness = 0.0;  // nats
  double overlap_sq_with_phi0 = 1.0;
};

/// Entanglement quantities of the state: E = -sum lambda ln lambda,
/// LR = 2 ln sum sqrt(lambda), and |<psi|phi_0>|^2 where phi_0 is the
/// uniform superposition over d_min Schmidt vectors.
inline MeasureReport measures(const SchmidtSpectrum& s) {
  MeasureReport r;
  double sqrt_sum = 0.0;
  for (double x : s.lambdas()) {
    r.entropy_of_entanglement -= x * std::log(x);
    sqrt_sum += std::sqrt(x);
  }
  r.schmidt_rank = s.rank();
  r.log_robustness = 2.0 * std::log(sqrt_sum);
  r.overlap_sq_with_phi0 = sqrt_sum * sqrt_sum / s.d_min();
  return r;
}

}  // namespace qht
