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

// Classical simple-vs-simple hypothesis testing on finite alphabets.
//
// Conventions: the null distribution p is what we try to reject, the
// alternative q is what we try to certify. A test accepts the alternative
// on outcome x with probability T(x); alpha = sum p T (type 1) and
// beta = sum q (1 - T) (type 2). All logarithms are natural.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qht/exponent.hpp"
#include "qht/line_search.hpp"

namespace qht {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Two aligned probability vectors over the same labelled outcomes.
struct LabeledDistPair {
  static constexpr double kSumTolerance = 1e-12;

  std::vector<std::string> labels;
  std::vector<double> p_null;
  std::vector<double> p_alt;

  static LabeledDistPair make(std::vector<std::string> labels,
                              std::vector<double> p_null,
                              std::vector<double> p_alt) {
    if (labels.size() != p_null.size() || labels.size() != p_alt.size()) {
      throw std::invalid_argument("LabeledDistPair: length mismatch");
    }
    auto check = [](const std::vector<double>& v, const char* which) {
      double total = 0.0;
      for (double x : v) {
        if (!(x >= 0.0)) {
          throw std::invalid_argument(std::string("LabeledDistPair: ") +
                                      which + " has a negative entry");
        }
        total += x;
      }
      if (std::abs(total - 1.0) > kSumTolerance) {
        throw std::invalid_argument(std::string("LabeledDistPair: ") + which +
                                    " sums to " + std::to_string(total));
      }
    };
    check(p_null, "null");
    check(p_alt, "alternative");
    return LabeledDistPair{std::move(labels), std::move(p_null),
                           std::move(p_alt)};
  }

  /// Unlabelled convenience constructor; labels are "0", "1", ...
  static LabeledDistPair make(std::vector<double> p_null,
                              std::vector<double> p_alt) {
    std::vector<std::string> labels(p_null.size());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = std::to_string(i);
    return make(std::move(labels), std::move(p_null), std::move(p_alt));
  }

  std::size_t size() const { return labels.size(); }

  /// Exchange the roles of null and alternative.
  LabeledDistPair swapped() const { return {labels, p_alt, p_null}; }
};

/// sum_x p(x)^(1-s) q(x)^s, where outcomes with p(x) = 0 or q(x) = 0
/// contribute nothing (also at the endpoints s = 0 and s = 1).
inline double renyi_overlap(const LabeledDistPair& pair, double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::invalid_argument("renyi_overlap: s outside [0,1]");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const double p = pair.p_null[i];
    const double q = pair.p_alt[i];
    if (p > 0.0 && q > 0.0) total += std::pow(p, 1.0 - s) * std::pow(q, s);
  }
  return total;
}

struct ChernoffResult {
  Exponent exponent;
  double s_star = 0.0;
};

/// -ln min_{s in [0,1]} renyi_overlap(pair, s), with the minimiser.
inline ChernoffResult chernoff(const LabeledDistPair& pair,
                               const ScalarSearch& opts = {}) {
  const ScalarOptimum m = grid_golden_minimize(
      [&](double s) { return renyi_overlap(pair, s); }, 0.0, 1.0, opts);
  if (m.value <= 0.0) return {Exponent::infinity(), m.arg};
  return {Exponent(-std::log(m.value)), m.arg};
}

inline Exponent chernoff_exponent(const LabeledDistPair& pair,
                                  const ScalarSearch& opts = {}) {
  return chernoff(pair, opts).exponent;
}

/// Largest s used on the half-open interval [0, 1) of Hoeffding-type sups.
inline constexpr double kHoeffdingSMax = 1.0 - 1e-8;

/// sup_{0 <= s < 1} (-r s - ln renyi_overlap(pair, s)) / (1 - s).
///
/// This is the best type 1 exponent reachable while the type 2 exponent
/// stays at least r. The value at s -> 1 is resolved analytically: the
/// numerator tends to -r - ln renyi(1); a positive limit diverges, a zero
/// limit is resolved by L'Hopital.
inline Exponent hoeffding_exponent(const LabeledDistPair& pair, double r,
                                   const ScalarSearch& opts = {}) {
  if (!(r > 0.0)) throw std::invalid_argument("hoeffding_exponent: r <= 0");
  const double at_one = renyi_overlap(pair, 1.0);
  if (at_one <= 0.0) return Exponent::infinity();
  const double numerator_at_one = -r - std::log(at_one);
  if (numerator_at_one > 1e-14) return Exponent::infinity();

  auto objective = [&](double s) {
    const double ov = renyi_overlap(pair, s);
    if (ov <= 0.0) return kInf;
    return (-r * s - std::log(ov)) / (1.0 - s);
  };
  const ScalarOptimum m =
      grid_golden_maximize(objective, 0.0, kHoeffdingSMax, opts);
  if (std::isinf(m.value) && m.value > 0) return Exponent::infinity();
  double best = m.value;
  if (numerator_at_one >= -1e-14) {
    // d/ds renyi at s = 1 divided by renyi(1)
    double slope = 0.0;
    for (std::size_t i = 0; i < pair.size(); ++i) {
      const double p = pair.p_null[i];
      const double q = pair.p_alt[i];
      if (p > 0.0 && q > 0.0) slope += q * std::log(q / p);
    }
    best = std::max(best, r + slope / at_one);
  }
  return Exponent(best);
}

enum class Direction { NullToAlt, AltToNull };

/// D(null||alt) or D(alt||null); 0 ln(0/q) = 0 and p ln(p/0) = +inf.
inline Exponent relative_entropy(const LabeledDistPair& pair,
                                 Direction direction) {
  const auto& a = direction == Direction::NullToAlt ? pair.p_null : pair.p_alt;
  const auto& b = direction == Direction::NullToAlt ? pair.p_alt : pair.p_null;
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] <= 0.0) continue;
    if (b[i] <= 0.0) return Exponent::infinity();
    total += a[i] * std::log(a[i] / b[i]);
  }
  return Exponent(total);
}

// ---------------------------------------------------------------------------
// Exact Neyman-Pearson tests on i.i.d. products.

struct NeymanPearsonResult {
  double alpha_achieved = 0.0;
  double beta_opt = 1.0;
  /// The test accepts the alternative when LR > lr_threshold and with
  /// probability `randomization` when LR == lr_threshold.
  double lr_threshold = kInf;
  double randomization = 0.0;
  /// Natural logs of the two errors; -inf exactly when the error is zero.
  double log_alpha = -kInf;
  double log_beta = 0.0;
};

namespace detail {

inline double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

inline double log_sum(const std::vector<double>& xs) {
  double m = -kInf;
  for (double x : xs) m = std::max(m, x);
  if (m == -kInf) return -kInf;
  if (m == kInf) return kInf;
  double acc = 0.0;
  double comp = 0.0;  // Kahan
  for (double x : xs) {
    const double y = std::exp(x - m) - comp;
    const double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  }
  return m + std::log(acc);
}

}  // namespace detail

/// One likelihood-ratio level of the n-fold product: all outcome strings
/// sharing the same LR value, with their total null and alternative mass.
struct LikelihoodClass {
  double log_lr = 0.0;  // +inf when null mass is 0, -inf when alt mass is 0
  double log_null = -kInf;
  double log_alt = -kInf;
};

/// The n-fold product of a pair, aggregated into likelihood-ratio classes
/// sorted by decreasing LR.
///
/// Letters with the same ratio q/p are merged; strings containing a letter
/// with q = 0 (and none with p = 0) form the single LR = 0 class, strings
/// with a p = 0 letter (and none with q = 0) the single LR = +inf class.
/// The remaining strings are enumerated by type (count vector), so the
/// cost is C(n + k - 1, k - 1) for k distinct letters on both supports.
class IidClassTable {
 public:
  static constexpr std::uint64_t kMaxTypes = 20'000'000;
  static constexpr double kTieTolerance = 1e-12;

  IidClassTable(const LabeledDistPair& pair, int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("IidClassTable: n < 1");
    // ratio q/p -> summed (p, q); letters of equal ratio are interchangeable
    std::map<double, std::pair<double, double>> seen;
    double null_on_common = 0.0;  // null mass of letters with q > 0
    double alt_on_common = 0.0;   // alt mass of letters with p > 0
    for (std::size_t i = 0; i < pair.size(); ++i) {
      const double p = pair.p_null[i];
      const double q = pair.p_alt[i];
      if (p > 0.0 && q > 0.0) {
        auto& acc = seen[q / p];
        acc.first += p;
        acc.second += q;
        null_on_common += p;
        alt_on_common += q;
      }
    }
    for (const auto& [ratio, pq] : seen) {
      letters_p_.push_back(std::log(pq.first));
      letters_q_.push_back(std::log(pq.second));
    }

    const std::uint64_t types = count_types(n, letters_p_.size());
    if (types > kMaxTypes) {
      throw std::invalid_argument("IidClassTable: " + std::to_string(types) +
                                  " type classes exceed the feasibility cap");
    }

    std::vector<LikelihoodClass> raw;
    raw.reserve(static_cast<std::size_t>(types) + 2);
    enumerate(raw);

    // Strings leaving the common support.
    const double alt_inf = 1.0 - std::pow(std::min(alt_on_common, 1.0), n);
    if (alt_inf > 0.0) raw.push_back({kInf, -kInf, std::log(alt_inf)});
    const double null_zero = 1.0 - std::pow(std::min(null_on_common, 1.0), n);
    if (null_zero > 0.0) raw.push_back({-kInf, std::log(null_zero), -kInf});

    std::sort(raw.begin(), raw.end(),
              [](const LikelihoodClass& a, const LikelihoodClass& b) {
                return a.log_lr > b.log_lr;
              });
    for (const auto& c : raw) {
      if (!classes_.empty() && same_level(classes_.back().log_lr, c.log_lr)) {
        auto& last = classes_.back();
        last.log_null = detail::log_add(last.log_null, c.log_null);
        last.log_alt = detail::log_add(last.log_alt, c.log_alt);
      } else {
        classes_.push_back(c);
      }
    }
  }

  int blocklength() const { return n_; }
  const std::vector<LikelihoodClass>& classes() const { return classes_; }

  static std::uint64_t count_types(int n, std::size_t k) {
    if (k == 0) return 1;
    // C(n + k - 1, k - 1), saturating
    long double c = 1.0L;
    for (std::size_t i = 1; i < k; ++i) {
      c = c * static_cast<long double>(n + i) / static_cast<long double>(i);
      if (c > 1e18L) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(c + 0.5L);
  }

 private:
  static bool same_level(double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return a == b;
    return std::abs(a - b) <= kTieTolerance * std::max(1.0, std::abs(a));
  }

  void enumerate(std::vector<LikelihoodClass>& out) const {
    const std::size_t k = letters_p_.size();
    if (k == 0) return;
    const double log_n_fact = std::lgamma(n_ + 1.0);
    // Depth-first over compositions of n into k parts.
    auto rec = [&](auto&& self, std::size_t idx, int left, double lcoef,
                   double lp, double lq) -> void {
      if (idx + 1 == k) {
        const double c = left;
        const double coef = lcoef - std::lgamma(c + 1.0);
        const double log_null = log_n_fact + coef + lp + c * letters_p_[idx];
        const double log_alt = log_n_fact + coef + lq + c * letters_q_[idx];
        // LR from the exponents alone so equal types tie exactly
        const double log_lr =
            (lq - lp) + c * (letters_q_[idx] - letters_p_[idx]);
        out.push_back({log_lr, log_null, log_alt});
        return;
      }
      for (int c = 0; c <= left; ++c) {
        self(self, idx + 1, left - c, lcoef - std::lgamma(c + 1.0),
             lp + c * letters_p_[idx], lq + c * letters_q_[idx]);
      }
    };
    rec(rec, 0, n_, 0.0, 0.0, 0.0);
  }

  int n_;
  std::vector<double> letters_p_;  // log p per merged letter
  std::vector<double> letters_q_;
  std::vector<LikelihoodClass> classes_;
};

/// Most powerful level-alpha test on the n-fold product: minimal beta
/// subject to alpha_n <= alpha.
///
/// Classes are accepted in decreasing LR order; the boundary class is
/// randomised to spend the type 1 budget exactly. A class fits the
/// remaining budget when it exceeds it by at most a relative 1e-12.
inline NeymanPearsonResult neyman_pearson_iid(const IidClassTable& table,
                                              double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("neyman_pearson_iid: alpha outside [0,1]");
  }
  constexpr double kSlack = 1e-12;
  const auto& cls = table.classes();
  NeymanPearsonResult res;
  std::vector<double> accepted_null;
  std::vector<double> rejected_alt;
  double remaining = alpha;
  std::size_t i = 0;
  res.randomization = 1.0;
  for (; i < cls.size(); ++i) {
    const auto& c = cls[i];
    if (c.log_alt == -kInf) break;  // LR = 0: accepting cannot lower beta
    if (c.log_null == -kInf) {
      res.lr_threshold = kInf;
      continue;
    }
    const double p = std::exp(c.log_null);
    if (remaining >= p * (1.0 - kSlack)) {
      remaining = std::max(remaining - p, 0.0);
      accepted_null.push_back(c.log_null);
      res.lr_threshold = std::exp(c.log_lr);
      continue;
    }
    const double gamma = remaining / p;
    res.lr_threshold = std::exp(c.log_lr);
    res.randomization = gamma;
    if (gamma > 0.0) accepted_null.push_back(c.log_null + std::log(gamma));
    rejected_alt.push_back(c.log_alt + std::log1p(-gamma));
    ++i;
    break;
  }
  for (; i < cls.size(); ++i) rejected_alt.push_back(cls[i].log_alt);

  res.log_alpha = detail::log_sum(accepted_null);
  res.log_beta = detail::log_sum(rejected_alt);
  res.alpha_achieved = std::exp(res.log_alpha);
  res.beta_opt = std::exp(res.log_beta);
  return res;
}

inline NeymanPearsonResult neyman_pearson_iid(const LabeledDistPair& pair,
                                              int n, double alpha) {
  return neyman_pearson_iid(IidClassTable(pair, n), alpha);
}

/// The dual problem: minimal alpha subject to beta_n <= beta_cap.
///
/// Classes are rejected in increasing LR order while the type 2 budget
/// lasts; the boundary class is randomised.
inline NeymanPearsonResult neyman_pearson_iid_beta_cap(
    const IidClassTable& table, double beta_cap) {
  if (!(beta_cap >= 0.0 && beta_cap <= 1.0)) {
    throw std::invalid_argument("neyman_pearson_iid_beta_cap: cap outside [0,1]");
  }
  constexpr double kSlack = 1e-12;
  const auto& cls = table.classes();
  NeymanPearsonResult res;
  std::vector<double> accepted_null;
  std::vector<double> rejected_alt;
  double remaining = beta_cap;
  res.randomization = 1.0;
  bool split = false;
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(cls.size()) - 1;
  for (; i >= 0; --i) {
    const auto& c = cls[static_cast<std::size_t>(i)];
    if (c.log_alt == -kInf) continue;  // rejecting LR = 0 is free
    if (c.log_null == -kInf) break;    // never reject LR = +inf
    const double q = std::exp(c.log_alt);
    if (remaining >= q * (1.0 - kSlack)) {
      remaining = std::max(remaining - q, 0.0);
      rejected_alt.push_back(c.log_alt);
      continue;
    }
    const double rejected_fraction = remaining / q;
    res.randomization = 1.0 - rejected_fraction;
    if (rejected_fraction > 0.0) {
      rejected_alt.push_back(c.log_alt + std::log(rejected_fraction));
    }
    accepted_null.push_back(c.log_null + std::log1p(-rejected_fraction));
    split = true;
    break;
  }
  // cls[i] is the randomised level, or the lowest fully accepted one
  res.lr_threshold = i >= 0 ? std::exp(cls[static_cast<std::size_t>(i)].log_lr)
                            : kInf;
  if (split) --i;
  for (; i >= 0; --i) accepted_null.push_back(cls[static_cast<std::size_t>(i)].log_null);

  res.log_alpha = detail::log_sum(accepted_null);
  res.log_beta = detail::log_sum(rejected_alt);
  res.alpha_achieved = std::exp(res.log_alpha);
  res.beta_opt = std::exp(res.log_beta);
  return res;
}

inline NeymanPearsonResult neyman_pearson_iid_beta_cap(
    const LabeledDistPair& pair, int n, double beta_cap) {
  return neyman_pearson_iid_beta_cap(IidClassTable(pair, n), beta_cap);
}

}  // namespace qht
