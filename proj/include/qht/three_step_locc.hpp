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

// A three-round LOCC protocol applied copy by copy:
//
//   1. Alice measures {M_w}, w a nonempty subset of her Schmidt labels,
//      M_w = sum_{h in w} m_w^h |h><h|, plus M_empty = I - sum_w M_w.
//      "empty" stops with verdict null.
//   2. Bob measures a Fourier basis {xi_j^w} of span{|h> : h in w} plus the
//      complement N_0; outcome 0 stops with verdict null.
//   3. Alice projects onto her conditional state under |Psi>; outcome k = 0
//      means verdict alternative.
//
// The weights m_w^h are the only free parameters. The copies then feed an
// optimal classical test, so the protocol's exponents are the classical
// Chernoff / Hoeffding exponents of its outcome distributions.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qht/classical_ht.hpp"
#include "qht/line_search.hpp"
#include "qht/nelder_mead.hpp"
#include "qht/schmidt.hpp"

namespace qht::three_step {

inline constexpr int kMaxLocalDim = 6;

class ConstraintViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Weights m_w^h for every nonempty subset w of {0..d_A-1} (0-based here,
/// printed 1-based). Subsets are ordered by bitmask 1 .. 2^d_A - 1 and the
/// weights of a subset follow its sorted members.
class ThreeStepParams {
 public:
  static constexpr double kRowSlack = 1e-12;

  static ThreeStepParams zeros(int d_a) {
    if (d_a < 1 || d_a > kMaxLocalDim) {
      throw std::invalid_argument("ThreeStepParams: d_A must be in [1, 6]");
    }
    ThreeStepParams p;
    p.d_a_ = d_a;
    const unsigned count = (1u << d_a) - 1u;
    p.offsets_.reserve(count + 1);
    p.offsets_.push_back(0);
    for (unsigned mask = 1; mask <= count; ++mask) {
      std::vector<int> mem;
      for (int h = 0; h < d_a; ++h)
        if (mask & (1u << h)) mem.push_back(h);
      p.offsets_.push_back(p.offsets_.back() + mem.size());
      p.members_.push_back(std::move(mem));
    }
    p.weights_.assign(p.offsets_.back(), 0.0);
    return p;
  }

  /// Builds from a flat weight vector in canonical order; validates.
  static ThreeStepParams from_flat(int d_a, std::span<const double> flat) {
    ThreeStepParams p = zeros(d_a);
    if (flat.size() != p.weights_.size()) {
      throw std::invalid_argument("ThreeStepParams: expected " +
                                  std::to_string(p.weights_.size()) + " weights");
    }
    std::copy(flat.begin(), flat.end(), p.weights_.begin());
    p.validate();
    return p;
  }

  int d_a() const { return d_a_; }
  std::size_t num_subsets() const { return members_.size(); }
  std::size_t num_weights() const { return weights_.size(); }

  /// Sorted members of subset `i` (bitmask i + 1).
  const std::vector<int>& members(std::size_t i) const { return members_[i]; }
  std::span<const double> weights(std::size_t i) const {
    return {weights_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::span<double> weights(std::size_t i) {
    return {weights_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  const std::vector<double>& flat() const { return weights_; }
  /// Overwrites all weights without validating them.
  void set_flat(std::span<const double> w) {
    if (w.size() != weights_.size()) {
      throw std::invalid_argument("ThreeStepParams: weight count mismatch");
    }
    std::copy(w.begin(), w.end(), weights_.begin());
  }

  /// Index of the subset with the given 0-based members.
  std::size_t index_of(std::span<const int> mem) const {
    unsigned mask = 0;
    for (int h : mem) {
      if (h < 0 || h >= d_a_) throw std::invalid_argument("subset member out of range");
      mask |= 1u << h;
    }
    if (mask == 0) throw std::invalid_argument("empty subset");
    return mask - 1;
  }

  /// sum over subsets containing h of m_w^h (diagonal of I - M_empty).
  double row_sum(int h) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < members_.size(); ++i) {
      const auto& mem = members_[i];
      for (std::size_t j = 0; j < mem.size(); ++j)
        if (mem[j] == h) acc += weights_[offsets_[i] + j];
    }
    return acc;
  }

  void validate() const {
    for (double m : weights_) {
      if (!(m >= 0.0 && m <= 1.0)) {
        throw ConstraintViolation("ThreeStepParams: weight outside [0,1]");
      }
    }
    for (int h = 0; h < d_a_; ++h) {
      if (row_sum(h) > 1.0 + kRowSlack) {
        throw ConstraintViolation("ThreeStepParams: weights on label " +
                                  std::to_string(h + 1) + " sum above 1");
      }
    }
  }

  /// Map arbitrary reals onto the feasible set: clip to [0,1], then scale
  /// down every label whose weights sum above one.
  void project() { project_weights(weights_); }

  /// project() applied to a flat weight vector laid out like this object.
  void project_weights(std::span<double> w) const {
    for (double& m : w) m = std::clamp(m, 0.0, 1.0);
    std::array<double, kMaxLocalDim> rows{};
    for (std::size_t i = 0; i < members_.size(); ++i) {
      const auto& mem = members_[i];
      for (std::size_t j = 0; j < mem.size(); ++j) rows[mem[j]] += w[offsets_[i] + j];
    }
    for (std::size_t i = 0; i < members_.size(); ++i) {
      const auto& mem = members_[i];
      for (std::size_t j = 0; j < mem.size(); ++j)
        if (rows[mem[j]] > 1.0) w[offsets_[i] + j] /= rows[mem[j]];
    }
  }

  static std::string subset_name(const std::vector<int>& mem) {
    std::string s = "{";
    for (std::size_t j = 0; j < mem.size(); ++j) {
      if (j) s += ",";
      s += std::to_string(mem[j] + 1);
    }
    return s + "}";
  }

 private:
  int d_a_ = 1;
  std::vector<std::vector<int>> members_;
  std::vector<std::size_t> offsets_;
  std::vector<double> weights_;
};

/// The projection onto Alice's Schmidt basis: m_{h}^h = 1, all else 0.
inline ThreeStepParams one_way_embedding(const SchmidtSpectrum& s) {
  ThreeStepParams p = ThreeStepParams::zeros(s.d_a());
  for (int h = 0; h < s.d_a(); ++h) {
    const std::array<int, 1> mem{h};
    p.weights(p.index_of(mem))[0] = 1.0;
  }
  return p;
}

/// Fourier basis of span{|h> : h in omega} inside C^d:
/// xi_j(omega_k) = exp(2 pi i j k / |omega|) / sqrt(|omega|).
inline std::vector<Eigen::VectorXcd> mub_basis(std::span<const int> omega,
                                               int d) {
  if (omega.empty()) throw std::invalid_argument("mub_basis: empty subset");
  std::vector<int> sorted(omega.begin(), omega.end());
  std::sort(sorted.begin(), sorted.end());
  for (int h : sorted)
    if (h < 0 || h >= d) throw std::invalid_argument("mub_basis: member out of range");
  const int w = static_cast<int>(sorted.size());
  const double norm = 1.0 / std::sqrt(static_cast<double>(w));
  std::vector<Eigen::VectorXcd> basis;
  for (int j = 0; j < w; ++j) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
    for (int k = 0; k < w; ++k) {
      const double phase = 2.0 * M_PI * j * k / w;
      v[sorted[static_cast<std::size_t>(k)]] = std::polar(norm, phase);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

using BasisFactory =
    std::vector<Eigen::VectorXcd> (*)(std::span<const int>, int);

/// Outcome distributions of one protocol run, labelled "{}", "{w};j=0" and
/// "{w};j=<j>;k=<k>".
struct ProtocolOutcomeDists {
  LabeledDistPair pair;
};

namespace detail {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline void check_dims(const ThreeStepParams& p, const SchmidtSpectrum& s) {
  if (p.d_a() != s.d_a()) {
    throw std::invalid_argument("three-step: parameter and spectrum d_A differ");
  }
  if (s.d_a() > s.d_b()) {
    throw std::invalid_argument(
        "three-step: Bob's space must contain Alice's Schmidt labels (d_A <= d_B)");
  }
  if (s.d_b() > kMaxLocalDim) {
    throw std::invalid_argument("three-step: local dimensions above 6");
  }
}

// Entries that vanish exactly (e.g. the alternative's mass on k = 1) come
// out of the operator algebra as +-1e-16-sized residue; x^s would turn that
// into a visible error, so it is snapped back to zero.
inline double clean_probability(double x) {
  if (std::abs(x) <= 1e-13) return 0.0;
  return x;
}

}  // namespace detail

/// Exact outcome distributions under rho_mix and |Psi>, built by explicit
/// operator algebra on C^{d_A} (x) C^{d_B}: Kraus operators sqrt(M_w) on A,
/// rank-one N_j on B, then Alice's projector
///   O_0 = sqrt(M_w rho_A) (|xi_j><xi_j|)^T sqrt(M_w rho_A) / <xi_j|M_w rho_A|xi_j>
/// with T the transpose in the Schmidt basis.
inline ProtocolOutcomeDists outcome_distributions(
    const ThreeStepParams& p, const SchmidtSpectrum& s,
    BasisFactory basis = &mub_basis) {
  p.validate();
  detail::check_dims(p, s);
  using Eigen::MatrixXcd;
  using Eigen::VectorXcd;
  const int da = s.d_a();
  const int db = s.d_b();
  const int dim = da * db;

  VectorXcd psi = VectorXcd::Zero(dim);
  for (int i = 0; i < s.rank(); ++i) psi[i * db + i] = std::sqrt(s.lambda(i));
  const MatrixXcd rho_mix = MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
  const MatrixXcd id_a = MatrixXcd::Identity(da, da);
  const MatrixXcd id_b = MatrixXcd::Identity(db, db);

  std::vector<std::string> labels;
  std::vector<double> pn;
  std::vector<double> pa;
  auto push = [&](std::string label, double null_mass, double alt_mass) {
    labels.push_back(std::move(label));
    pn.push_back(detail::clean_probability(null_mass));
    pa.push_back(detail::clean_probability(alt_mass));
  };

  MatrixXcd m_empty = id_a;
  for (std::size_t i = 0; i < p.num_subsets(); ++i) {
    const auto& mem = p.members(i);
    const auto w = p.weights(i);
    for (std::size_t j = 0; j < mem.size(); ++j) m_empty(mem[j], mem[j]) -= w[j];
  }
  {
    const MatrixXcd op = detail::kron(m_empty, id_b);
    push("{}", (op * rho_mix).trace().real(), (psi.adjoint() * op * psi)(0, 0).real());
  }

  for (std::size_t i = 0; i < p.num_subsets(); ++i) {
    const auto& mem = p.members(i);
    const auto w = p.weights(i);
    const std::string name = ThreeStepParams::subset_name(mem);

    MatrixXcd sqrt_m = MatrixXcd::Zero(da, da);
    MatrixXcd sqrt_m_rho = MatrixXcd::Zero(da, da);
    MatrixXcd m_rho = MatrixXcd::Zero(da, da);
    for (std::size_t j = 0; j < mem.size(); ++j) {
      const int h = mem[j];
      sqrt_m(h, h) = std::sqrt(w[j]);
      sqrt_m_rho(h, h) = std::sqrt(w[j] * s.lambda(h));
      m_rho(h, h) = w[j] * s.lambda(h);
    }
    const MatrixXcd kraus = detail::kron(sqrt_m, id_b);
    const MatrixXcd null_post = kraus * rho_mix * kraus.adjoint();
    const VectorXcd alt_post = kraus * psi;

    const std::vector<VectorXcd> xi_a = basis(mem, da);
    MatrixXcd n0 = id_b;
    std::vector<MatrixXcd> bob(xi_a.size());
    for (std::size_t j = 0; j < xi_a.size(); ++j) {
      VectorXcd xb = VectorXcd::Zero(db);
      xb.head(da) = xi_a[j];
      bob[j] = xb * xb.adjoint();
      n0 -= bob[j];
    }
    {
      const MatrixXcd op = detail::kron(id_a, n0);
      push(name + ";j=0", (op * null_post).trace().real(),
           (alt_post.adjoint() * op * alt_post)(0, 0).real());
    }
    for (std::size_t j = 0; j < xi_a.size(); ++j) {
      const VectorXcd& xi = xi_a[j];
      const double denom = (xi.adjoint() * m_rho * xi)(0, 0).real();
      MatrixXcd o0 = MatrixXcd::Zero(da, da);
      if (denom > 0.0) {
        const MatrixXcd proj = xi * xi.adjoint();
        o0 = sqrt_m_rho * proj.transpose() * sqrt_m_rho / denom;
      }
      const std::array<MatrixXcd, 2> alice{o0, id_a - o0};
      for (int k = 0; k < 2; ++k) {
        const MatrixXcd op = detail::kron(alice[static_cast<std::size_t>(k)], bob[j]);
        push(name + ";j=" + std::to_string(j + 1) + ";k=" + std::to_string(k),
             (op * null_post).trace().real(),
             (alt_post.adjoint() * op * alt_post)(0, 0).real());
      }
    }
  }
  return {LabeledDistPair::make(std::move(labels), std::move(pn), std::move(pa))};
}

namespace detail {

inline void check_objective_inputs(double s_param, const ThreeStepParams& p,
                                   const SchmidtSpectrum& s) {
  if (!(s_param >= 0.0 && s_param <= 1.0)) {
    throw std::invalid_argument("objective_f: s outside [0,1]");
  }
  p.validate();
  if (p.d_a() != s.d_a()) {
    throw std::invalid_argument("objective_f: parameter and spectrum d_A differ");
  }
}

// p^(1-s) q^s with the "either factor zero contributes nothing" convention
inline double weighted_term(double p, double q, double s) {
  if (p <= 0.0 || q <= 0.0) return 0.0;
  return std::pow(p, 1.0 - s) * std::pow(q, s);
}

}  // namespace detail

/// Closed form of -ln sum P_mix^(1-s) P_Psi^s over the protocol outcomes:
///
///   f = -ln[ (1 - (1/d_A) sum_w sum_h m)^(1-s) (1 - sum_w sum_h m lambda_h)^s
///          + (d_A d_B)^(s-1) sum_w |w|^(1-s) (sum_h m^2 lambda_h)^(1-s)
///                                        (sum_h m lambda_h)^(2s-1) ]
inline double objective_f(double s_param, const ThreeStepParams& p,
                          const SchmidtSpectrum& s) {
  detail::check_objective_inputs(s_param, p, s);
  const double dim = static_cast<double>(s.total_dim());
  double total_m = 0.0;
  double total_m_lambda = 0.0;
  double bracket = 0.0;
  for (std::size_t i = 0; i < p.num_subsets(); ++i) {
    const auto& mem = p.members(i);
    const auto w = p.weights(i);
    double sq = 0.0;
    double lin = 0.0;
    for (std::size_t j = 0; j < mem.size(); ++j) {
      const double l = s.lambda(mem[j]);
      total_m += w[j];
      total_m_lambda += w[j] * l;
      sq += w[j] * w[j] * l;
      lin += w[j] * l;
    }
    if (sq <= 0.0 || lin <= 0.0) continue;
    bracket += std::pow(dim, s_param - 1.0) *
               std::pow(static_cast<double>(mem.size()), 1.0 - s_param) *
               std::pow(sq, 1.0 - s_param) * std::pow(lin, 2.0 * s_param - 1.0);
  }
  bracket += detail::weighted_term(1.0 - total_m / s.d_a(), 1.0 - total_m_lambda,
                                   s_param);
  return -std::log(bracket);
}

/// The same objective with everything independent of s precomputed, so
/// that f(s) = -ln sum_k exp((1 - s) a_k + s b_k) costs one exp per term.
class ObjectiveEvaluator {
 public:
  ObjectiveEvaluator(const ThreeStepParams& p, const SchmidtSpectrum& s)
      : ObjectiveEvaluator(p, p.flat(), s) {}

  /// Weights `w` laid out like `layout`; they are not validated.
  ObjectiveEvaluator(const ThreeStepParams& layout, std::span<const double> w,
                     const SchmidtSpectrum& s) {
    const double log_dim = std::log(static_cast<double>(s.total_dim()));
    double total_m = 0.0;
    double total_m_lambda = 0.0;
    std::size_t offset = 0;
    for (std::size_t i = 0; i < layout.num_subsets(); ++i) {
      const auto& mem = layout.members(i);
      double sq = 0.0;
      double lin = 0.0;
      for (std::size_t j = 0; j < mem.size(); ++j) {
        const double m = w[offset + j];
        const double l = s.lambda(mem[j]);
        total_m += m;
        total_m_lambda += m * l;
        sq += m * m * l;
        lin += m * l;
      }
      offset += mem.size();
      if (sq <= 0.0 || lin <= 0.0) continue;
      // null mass |w| sq / (D lin), alternative mass lin
      log_null_[size_] = std::log(static_cast<double>(mem.size())) + std::log(sq) -
                         log_dim - std::log(lin);
      log_alt_[size_] = std::log(lin);
      ++size_;
    }
    const double empty_null = 1.0 - total_m / s.d_a();
    const double empty_alt = 1.0 - total_m_lambda;
    if (empty_null > 0.0 && empty_alt > 0.0) {
      log_null_[size_] = std::log(empty_null);
      log_alt_[size_] = std::log(empty_alt);
      ++size_;
    }
  }

  double operator()(double s) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < size_; ++k)
      acc += std::exp((1.0 - s) * log_null_[k] + s * log_alt_[k]);
    return -std::log(acc);
  }

  struct Derivatives {
    double value, first, second;
  };

  /// f, f' and f'' at s; f is concave since it is minus a log-sum-exp of
  /// functions affine in s.
  Derivatives derivatives(double s) const {
    if (size_ == 0) return {kInf, 0.0, 0.0};
    double top = -kInf;
    for (std::size_t k = 0; k < size_; ++k)
      top = std::max(top, (1.0 - s) * log_null_[k] + s * log_alt_[k]);
    double w = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k < size_; ++k) {
      const double e = std::exp((1.0 - s) * log_null_[k] + s * log_alt_[k] - top);
      const double c = log_alt_[k] - log_null_[k];
      w += e;
      m1 += e * c;
      m2 += e * c * c;
    }
    const double mean = m1 / w;
    return {-(top + std::log(w)), -mean, -(m2 / w - mean * mean)};
  }

 private:
  // one term per nonempty subset plus the empty outcome
  static constexpr std::size_t kMaxTerms = std::size_t{1} << kMaxLocalDim;
  std::array<double, kMaxTerms> log_null_{};
  std::array<double, kMaxTerms> log_alt_{};
  std::size_t size_ = 0;
};

enum class Mode { Chernoff, Hoeffding };

struct Objective {
  Mode mode = Mode::Chernoff;
  double r = 0.0;  // Hoeffding only

  static Objective chernoff() { return {Mode::Chernoff, 0.0}; }
  static Objective hoeffding(double r) {
    if (!(r > 0.0)) throw std::invalid_argument("hoeffding objective: r <= 0");
    return {Mode::Hoeffding, r};
  }
};

struct OptimizeOptions {
  int starts = 64;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int s_grid = 17;
  /// Objective evaluations allowed per simplex run.
  int max_evaluations = 20000;
};

struct OptimizeResult {
  double value = 0.0;
  ThreeStepParams argmax;
  double s_star = 0.0;
  /// The run that produced `value` stopped on the evaluation cap.
  bool budget_exhausted = false;
  int evaluations = 0;
  /// 0 = one-way embedding, 1 = all-zero, 2.. = sampled starts.
  int best_start = 0;
  /// Alice and Bob were exchanged because d_A > d_B.
  bool roles_swapped = false;
};

/// Maximiser of the concave f on [0,1]: Newton steps on f', falling back
/// to bisection whenever a step leaves the current bracket.
inline ScalarOptimum concave_sup(const ObjectiveEvaluator& f) {
  auto d = f.derivatives(0.0);
  if (!(d.first > 0.0)) return {0.0, d.value};
  const auto d1 = f.derivatives(1.0);
  if (!(d1.first < 0.0)) return {1.0, d1.value};
  double lo = 0.0, hi = 1.0, s = 0.5;
  for (int i = 0; i < 100; ++i) {
    d = f.derivatives(s);
    if (d.first == 0.0) break;
    (d.first > 0.0 ? lo : hi) = s;
    const double newton = d.second < 0.0 ? s - d.first / d.second : lo - 1.0;
    const double next = newton > lo && newton < hi ? newton : 0.5 * (lo + hi);
    const bool done = std::abs(next - s) <= 1e-14 || hi - lo <= 1e-14;
    s = next;
    if (done) break;
  }
  return {s, f(s)};
}

/// Best s for fixed weights: sup over s in [0,1] of f (Chernoff, exact) or over
/// s in [0, 1 - 1e-8] of (f - r s) / (1 - s) (Hoeffding).
inline ScalarOptimum inner_sup(const ObjectiveEvaluator& f, const Objective& obj,
                               const ScalarSearch& search) {
  if (obj.mode == Mode::Chernoff) return concave_sup(f);
  const double r = obj.r;
  return grid_golden_maximize(
      [&](double s) { return (f(s) - r * s) / (1.0 - s); }, 0.0, kHoeffdingSMax,
      search);
}

/// The protocol's exponent for fixed weights.
inline ScalarOptimum protocol_exponent(const ThreeStepParams& p,
                                       const SchmidtSpectrum& s,
                                       const Objective& obj,
                                       const ScalarSearch& search = {}) {
  return inner_sup(ObjectiveEvaluator(p, s), obj, search);
}

namespace detail {

inline std::vector<int> first_primes(std::size_t count) {
  std::vector<int> primes;
  for (int c = 2; primes.size() < count; ++c) {
    bool prime = true;
    for (int q : primes) {
      if (q * q > c) break;
      if (c % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

inline double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return r;
}

/// Halton points with a seeded Cranley-Patterson shift.
class ShiftedHalton {
 public:
  ShiftedHalton(std::size_t dim, std::uint64_t seed)
      : primes_(first_primes(dim)), shift_(dim) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& x : shift_) x = u(rng);
  }
  std::vector<double> point(std::uint64_t index) const {
    std::vector<double> x(shift_.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double v = radical_inverse(index + 1, primes_[k]) + shift_[k];
      x[k] = v - std::floor(v);
    }
    return x;
  }

 private:
  std::vector<int> primes_;
  std::vector<double> shift_;
};

}  // namespace detail

/// Multistart simplex search for the best protocol weights.
///
/// Runs Nelder-Mead from the one-way embedding, from all-zero weights and
/// from opts.starts shifted-Halton points; iterates are projected onto the
/// feasible set before every evaluation. The result is a feasible point,
/// hence a lower bound on the supremum over the protocol class, and never
/// below the embedding's value. Runs are reduced in start order; ties keep
/// the lexicographically smaller weight vector.
inline OptimizeResult optimize(const SchmidtSpectrum& spectrum_in,
                               const Objective& obj,
                               const OptimizeOptions& opts = {}) {
  const bool swap = spectrum_in.d_a() > spectrum_in.d_b();
  const SchmidtSpectrum s =
      swap ? SchmidtSpectrum::validate(spectrum_in.lambdas(), spectrum_in.d_b(),
                                       spectrum_in.d_a())
           : spectrum_in;
  const int da = s.d_a();
  // the Hoeffding inner search only needs s to sqrt(tol): the objective is
  // flat to second order at its maximiser
  const ScalarSearch search{opts.s_grid, std::sqrt(opts.tol)};

  ThreeStepParams scratch = ThreeStepParams::zeros(da);
  const std::size_t dim = scratch.num_weights();
  std::vector<double> buffer(dim);
  auto value_of = [&](const std::vector<double>& x) {
    std::copy(x.begin(), x.end(), buffer.begin());
    scratch.project_weights(buffer);
    return inner_sup(ObjectiveEvaluator(scratch, buffer, s), obj, search).value;
  };

  std::vector<std::vector<double>> starts;
  starts.push_back(one_way_embedding(s).flat());
  starts.push_back(ThreeStepParams::zeros(da).flat());
  const detail::ShiftedHalton halton(dim, opts.seed);
  for (int k = 0; k < opts.starts; ++k) {
    ThreeStepParams p = scratch;
    const auto x = halton.point(static_cast<std::uint64_t>(k));
    p.set_flat(x);
    p.project();
    starts.push_back(p.flat());
  }

  NelderMeadOptions nm;
  nm.f_tolerance = opts.tol;
  nm.x_tolerance = std::sqrt(opts.tol);
  nm.max_evaluations = opts.max_evaluations;
  nm.adaptive = true;

  OptimizeResult best;
  best.value = -kInf;
  best.argmax = scratch;
  int total_evals = 0;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    ThreeStepParams start = scratch;
    start.set_flat(starts[k]);
    const double start_value = value_of(starts[k]);

    NelderMeadResult run = nelder_mead_maximize(value_of, starts[k], nm);
    // one restart from the converged point with a smaller simplex
    NelderMeadOptions polish = nm;
    polish.initial_step = 0.05;
    NelderMeadResult again = nelder_mead_maximize(value_of, run.x, polish);
    const int evals = run.evaluations + again.evaluations;
    total_evals += evals + 1;
    if (again.value > run.value) {
      again.evaluations = evals;
      run = std::move(again);
    } else {
      run.converged = run.converged && again.converged;
    }

    ThreeStepParams candidate = scratch;
    double candidate_value = start_value;
    bool exhausted = false;
    if (run.value > start_value) {
      candidate.set_flat(run.x);
      candidate.project();
      candidate_value = value_of(candidate.flat());
      exhausted = !run.converged;
    } else {
      candidate = start;
    }
    const bool better = candidate_value > best.value;
    const bool tie = candidate_value == best.value &&
                     std::lexicographical_compare(candidate.flat().begin(),
                                                  candidate.flat().end(),
                                                  best.argmax.flat().begin(),
                                                  best.argmax.flat().end());
    if (better || tie) {
      best.value = candidate_value;
      best.argmax = candidate;
      best.best_start = static_cast<int>(k);
      best.budget_exhausted = exhausted;
    }
  }
  best.evaluations = total_evals;
  best.s_star = inner_sup(ObjectiveEvaluator(best.argmax, s), obj, search).arg;
  best.roles_swapped = swap;
  return best;
}

}  // namespace qht::three_step
