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


#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qht/exponent_formulas.hpp"
#include "qht/finite_n_oracle.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using qht::SchmidtSpectrum;
namespace orc = qht::oracle;

namespace {

SchmidtSpectrum sp(std::initializer_list<double> l, int da, int db) {
  return SchmidtSpectrum::validate(l, da, db);
}

// sum over outcome strings of min(pi0 p, pi1 q)
double bayes_error_by_strings(const qht::LabeledDistPair& pair, int n, double pi0, double pi1) {
  const std::size_t k = pair.size();
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= k;
  double acc = 0.0;
  for (std::size_t code = 0; code < total; ++code) {
    double p = 1.0, q = 1.0;
    std::size_t c = code;
    for (int i = 0; i < n; ++i) {
      p *= pair.p_null[c % k];
      q *= pair.p_alt[c % k];
      c /= k;
    }
    acc += std::min(pi0 * p, pi1 * q);
  }
  return acc;
}

}  // namespace

TEST_CASE("one-way beta reference values", "[oracle]") {
  const auto bell = sp({0.5, 0.5}, 2, 2);
  CHECK_THAT(orc::one_way_beta(bell, 1, 0.25).beta_opt, WithinAbs(0.5, 1e-15));
  CHECK(orc::one_way_beta(bell, 1, 0.5).beta_opt == 0.0);
  CHECK_THAT(orc::one_way_beta(sp({0.8, 0.2}, 2, 2), 1, 0.25).beta_opt, WithinAbs(0.2, 1e-15));
  // only half of (1,1) fits the budget
  CHECK_THAT(orc::one_way_beta(sp({0.8, 0.2}, 2, 2), 1, 0.125).beta_opt, WithinAbs(0.6, 1e-15));
}

TEST_CASE("one-way beta agrees with string enumeration", "[oracle][property]") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 40; ++t) {
    const auto s = oracle_ref::random_spectrum(rng, 3);
    const int n = 1 + t % 3;
    const double alpha = u(rng);
    CHECK_THAT(orc::one_way_beta(s, n, alpha).beta_opt,
               WithinAbs(oracle_ref::string_enumeration_beta(qht::one_way_reduction(s), n, alpha),
                         1e-12));
  }
}

TEST_CASE("zero-error threshold", "[oracle]") {
  CHECK(orc::zero_error_threshold(0.1, sp({0.5, 0.5}, 2, 2)) == 4);
  CHECK(orc::zero_error_threshold(0.25, sp({0.5, 0.5}, 2, 2)) == 2);
  CHECK(orc::zero_error_threshold(0.5, sp({1.0}, 2, 2)) == 1);
  CHECK(orc::zero_error_threshold(0.9, sp({1.0}, 3, 5)) == 1);
  CHECK(orc::zero_error_threshold(1.0 / 27, sp({1.0}, 2, 3)) == 3);
  CHECK(orc::zero_error_threshold(1e-6, sp({1.0}, 2, 3)) == 13);
  CHECK_THROWS_AS(orc::zero_error_threshold(0.0, sp({0.5, 0.5}, 2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(orc::zero_error_threshold(1.0, sp({0.5, 0.5}, 2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(orc::zero_error_threshold(0.5, sp({1.0}, 1, 1)), std::invalid_argument);
}

TEST_CASE("beta vanishes exactly from the zero-error threshold on full-rank square states",
          "[oracle][property]") {
  std::mt19937_64 rng(52);
  for (int d : {2, 3}) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto s = oracle_ref::random_square_spectrum(rng, d);
      for (double alpha : {0.001, 0.03, 0.07, 0.15, 0.3, 0.45, 0.6, 0.9}) {
        const int n_star = orc::zero_error_threshold(alpha, s);
        for (int n = 1; n <= (d == 2 ? 12 : 8); ++n) {
          const bool zero = orc::one_way_beta(s, n, alpha).beta_opt == 0.0;
          CHECK(zero == (n >= n_star));
        }
      }
    }
  }
}

TEST_CASE("global mean error", "[oracle]") {
  const auto bell = sp({0.5, 0.5}, 2, 2);
  CHECK_THAT(orc::global_mean_error(bell, 1, 0.5, 0.5), WithinAbs(0.125, 1e-16));
  CHECK_THAT(orc::global_mean_error(bell, 3, 0.5, 0.5), WithinAbs(1.0 / 128, 1e-17));
  CHECK(orc::global_mean_error(bell, 2, 1.0, 0.0) == 0.0);
  CHECK_THAT(orc::global_mean_error(bell, 1, 0.1, 0.9), WithinAbs(0.025, 1e-16));
  CHECK_THAT(orc::global_mean_error(bell, 1, 0.99, 0.01), WithinAbs(0.01, 1e-16));
  CHECK_THAT(orc::log_global_mean_error(bell, 400, 0.5, 0.5),
             WithinRel(std::log(0.5) - 400 * std::log(4.0), 1e-14));
  CHECK_THROWS_AS(orc::global_mean_error(bell, 0, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(orc::global_mean_error(bell, 1, 0.6, 0.6), std::invalid_argument);
}

TEST_CASE("global mean error matches dense diagonalisation", "[oracle][property]") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const auto s = oracle_ref::random_spectrum(rng, 3);
    const int n = s.total_dim() <= 4 ? 1 + t % 3 : 1 + t % 2;
    const double pi0 = u(rng);
    CHECK_THAT(orc::global_mean_error(s, n, pi0, 1.0 - pi0),
               WithinAbs(oracle_ref::dense_global_error(s, n, pi0, 1.0 - pi0), 1e-12));
  }
}

TEST_CASE("global mean error never exceeds the one-way mean error", "[oracle][property]") {
  std::mt19937_64 rng(54);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const auto s = oracle_ref::random_spectrum(rng, 3);
    const int n = 1 + t % 3;
    const double pi0 = u(rng);
    const double ow = bayes_error_by_strings(qht::one_way_reduction(s), n, pi0, 1.0 - pi0);
    CHECK(orc::global_mean_error(s, n, pi0, 1.0 - pi0) <= ow + 1e-15);
  }
}

TEST_CASE("stein trend of the one-way alpha exponent", "[oracle]") {
  const auto s = sp({0.8, 0.2}, 2, 2);
  const auto trend = orc::exponent_trend(s, orc::TrendMode::stein_alpha(0.1), 60);
  REQUIRE(trend.rows.size() == 60);
  CHECK(trend.rows[0].n == 1);
  CHECK_THAT(trend.rows[0].error, WithinAbs(0.375, 1e-15));
  CHECK_THAT(trend.rows[0].estimate, WithinAbs(0.980829253011726, 1e-12));
  for (const auto& row : trend.rows) {
    CHECK(row.error > 0.0);
    CHECK_THAT(row.estimate, WithinAbs(-std::log(row.error) / row.n, 1e-12));
  }
}

TEST_CASE("hoeffding beta trends on either side of the one-way threshold", "[oracle]") {
  const auto bell = sp({0.5, 0.5}, 2, 2);
  // below ln D - ln R_s = ln 2 the support test already meets the alpha budget
  const auto below = orc::exponent_trend(bell, orc::TrendMode::hoeffding_beta(0.5), 30);
  for (const auto& row : below.rows) {
    CHECK(row.error == 0.0);
    CHECK(std::isinf(row.estimate));
  }
  const auto above = orc::exponent_trend(bell, orc::TrendMode::hoeffding_beta(1.0), 30);
  for (const auto& row : above.rows) CHECK(row.error > 0.0);
  CHECK(above.rows.back().estimate < above.rows.front().estimate);
  // the limiting exponent is zero there
  CHECK(above.rows.back().estimate < 0.05);
}

TEST_CASE("separable witness trend approaches ln D - LR", "[oracle]") {
  for (const auto& s : {sp({0.8, 0.2}, 2, 2), sp({0.6, 0.3, 0.1}, 3, 3), sp({0.5, 0.5}, 2, 3)}) {
    const double limit = qht::chernoff_exponent_class(s, qht::PovmClass::Separable).chernoff.value();
    const auto trend = orc::separable_witness_trend(s, 60);
    REQUIRE(trend.rows.size() == 60);
    double prev_gap = INFINITY;
    for (const auto& row : trend.rows) {
      const double gap = std::abs(row.estimate - limit);
      CHECK(gap <= prev_gap + 1e-12);
      prev_gap = gap;
    }
    CHECK(prev_gap < 0.03);
  }
}

TEST_CASE("separable witness trend at n = 1", "[oracle]") {
  const auto s = sp({0.8, 0.2}, 2, 2);
  const double ov = qht::measures(s).overlap_sq_with_phi0;
  const double k0 = 0.25 / 0.75;
  const double ref = 0.5 - 0.5 * std::sqrt(1.0 - 4.0 * ov * k0 * (1.0 - k0));
  CHECK_THAT(orc::separable_witness_trend(s, 1).rows[0].error, WithinAbs(ref, 1e-15));
}

TEST_CASE("B threshold arbitration", "[oracle]") {
  const auto bell = sp({0.5, 0.5}, 2, 2);
  const auto a = orc::arbitrate_B(bell, std::log(2.0), std::log(4.0), 40);
  CHECK_THAT(a.corrected_threshold, WithinAbs(std::log(2.0), 1e-15));
  CHECK_THAT(a.printed_threshold, WithinAbs(std::log(8.0), 1e-15));
  REQUIRE(a.zero_beta_at.has_value());
  CHECK(*a.zero_beta_at == 1);
  CHECK(a.above_beta_positive);
  CHECK(a.above_last_estimate < a.above_first_estimate);
  CHECK_THAT(a.finite_branch_formula.value(), WithinAbs(a.classical_reduction.value(), 1e-9));
  CHECK(a.verdict == "corrected");

  const auto s = sp({0.6, 0.4}, 2, 2);
  const auto b = orc::arbitrate_B(s, 0.6, 1.2, 40);
  CHECK(b.verdict == "corrected");
  // r_above outside (corrected, printed] cannot discriminate
  CHECK(orc::arbitrate_B(s, 0.6, 3.0, 10).verdict == "inconclusive");
}

TEST_CASE("oracle guards", "[oracle]") {
  const auto s = sp({0.8, 0.2}, 2, 2);
  CHECK_THROWS_AS(orc::exponent_trend(s, orc::TrendMode::stein_alpha(0.1), 0), std::invalid_argument);
  CHECK_THROWS_AS(orc::exponent_trend(s, orc::TrendMode::stein_alpha(0.1), 501), std::invalid_argument);
  CHECK_THROWS_AS(orc::exponent_trend(sp({1.0}, 6, 7), orc::TrendMode::stein_alpha(0.1), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(orc::TrendMode::stein_alpha(1.0), std::invalid_argument);
  CHECK_THROWS_AS(orc::TrendMode::hoeffding_beta(0.0), std::invalid_argument);
  CHECK_THROWS_AS(orc::separable_witness_trend(s, 0), std::invalid_argument);
}
