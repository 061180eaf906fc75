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
#include <sstream>

#include "oracles.hpp"
#include "qht/exponent.hpp"
#include "qht/schmidt.hpp"

using Catch::Matchers::WithinAbs;
using qht::SchmidtSpectrum;
using qht::SpectrumError;
using qht::SpectrumErrorKind;

namespace {

SpectrumErrorKind kind_of(std::initializer_list<double> l, int da, int db) {
  try {
    SchmidtSpectrum::validate(l, da, db);
  } catch (const SpectrumError& e) {
    return e.kind();
  }
  FAIL("expected a SpectrumError");
  return SpectrumErrorKind::InvalidDimension;
}

}  // namespace

TEST_CASE("validate keeps maximally entangled and product inputs", "[schmidt]") {
  const auto bell = SchmidtSpectrum::validate({0.5, 0.5}, 2, 2);
  CHECK(bell.rank() == 2);
  CHECK(bell.is_maximally_entangled());
  const auto prod = SchmidtSpectrum::validate({1.0}, 2, 3);
  CHECK(prod.rank() == 1);
  CHECK(prod.is_product());
  CHECK(prod.d_min() == 2);
  CHECK(prod.d_max() == 3);
}

TEST_CASE("validate drops zeros and sorts descending", "[schmidt]") {
  const auto s = SchmidtSpectrum::validate({0.2, 0.8, 0.0}, 2, 2);
  REQUIRE(s.rank() == 2);
  CHECK(s.lambdas()[0] == 0.8);
  CHECK(s.lambdas()[1] == 0.2);
  CHECK(s.lambda(5) == 0.0);
}

TEST_CASE("validate renormalises only within 1e-9", "[schmidt]") {
  const auto s = SchmidtSpectrum::validate({0.5 + 4e-10, 0.5}, 2, 2);
  CHECK_THAT(s.lambdas()[0] + s.lambdas()[1], WithinAbs(1.0, 1e-15));
  CHECK(kind_of({0.5 + 2e-9, 0.5}, 2, 2) == SpectrumErrorKind::NotNormalized);
  CHECK(kind_of({0.8, 0.3}, 2, 2) == SpectrumErrorKind::NotNormalized);
  CHECK(kind_of({0.0, 0.0}, 2, 2) == SpectrumErrorKind::NotNormalized);
}

TEST_CASE("validate reports rank, sign and dimension errors", "[schmidt]") {
  CHECK(kind_of({0.4, 0.3, 0.3}, 2, 4) == SpectrumErrorKind::RankExceedsDimension);
  CHECK(kind_of({1.2, -0.2}, 2, 2) == SpectrumErrorKind::NegativeCoefficient);
  CHECK(kind_of({1.0}, 0, 2) == SpectrumErrorKind::InvalidDimension);
  CHECK(std::string(qht::to_string(SpectrumErrorKind::NotNormalized)) == "NotNormalized");
}

TEST_CASE("measures of the reference states", "[schmidt]") {
  const auto bell = qht::measures(SchmidtSpectrum::validate({0.5, 0.5}, 2, 2));
  CHECK_THAT(bell.entropy_of_entanglement, WithinAbs(std::log(2.0), 1e-15));
  CHECK(bell.schmidt_rank == 2);
  CHECK_THAT(bell.log_robustness, WithinAbs(std::log(2.0), 1e-15));
  CHECK_THAT(bell.overlap_sq_with_phi0, WithinAbs(1.0, 1e-15));

  const auto prod = qht::measures(SchmidtSpectrum::validate({1.0}, 3, 2));
  CHECK(prod.entropy_of_entanglement == 0.0);
  CHECK(prod.schmidt_rank == 1);
  CHECK(prod.log_robustness == 0.0);

  // reference values from a 50-digit evaluation
  const auto m = qht::measures(SchmidtSpectrum::validate({0.8, 0.2}, 2, 2));
  CHECK_THAT(m.entropy_of_entanglement, WithinAbs(0.500402423538188, 1e-14));
  CHECK_THAT(m.log_robustness, WithinAbs(0.587786664902119, 1e-14));
  CHECK_THAT(m.overlap_sq_with_phi0, WithinAbs(0.9, 1e-15));
}

TEST_CASE("robustness identity and measure bounds on random spectra", "[schmidt][property]") {
  std::mt19937_64 rng(20260101);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto s = oracle_ref::random_spectrum(rng);
    const auto m = qht::measures(s);
    const double lhs = s.log_total_dim() - m.log_robustness;
    const double rhs = -std::log(m.overlap_sq_with_phi0) + std::log(static_cast<double>(s.d_max()));
    CHECK_THAT(lhs, WithinAbs(rhs, 1e-12));
    const double log_rank = std::log(static_cast<double>(s.rank()));
    CHECK(m.entropy_of_entanglement >= -1e-15);
    CHECK(m.entropy_of_entanglement <= log_rank + 1e-12);
    CHECK(m.log_robustness >= -1e-15);
    CHECK(m.log_robustness <= log_rank + 1e-12);
    CHECK(m.overlap_sq_with_phi0 > 0.0);
    CHECK(m.overlap_sq_with_phi0 <= 1.0 + 1e-12);
  }
}

TEST_CASE("measures ignore input order", "[schmidt][property]") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = oracle_ref::random_spectrum(rng);
    std::vector<double> raw = s.lambdas();
    raw.push_back(0.0);
    std::shuffle(raw.begin(), raw.end(), rng);
    const auto t = SchmidtSpectrum::validate(raw, s.d_a(), s.d_b());
    const auto a = qht::measures(s);
    const auto b = qht::measures(t);
    CHECK(a.schmidt_rank == b.schmidt_rank);
    CHECK_THAT(a.entropy_of_entanglement, WithinAbs(b.entropy_of_entanglement, 1e-14));
    CHECK_THAT(a.log_robustness, WithinAbs(b.log_robustness, 1e-14));
    CHECK_THAT(a.overlap_sq_with_phi0, WithinAbs(b.overlap_sq_with_phi0, 1e-14));
  }
}

TEST_CASE("entropy is concave under mixing spectra", "[schmidt][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = oracle_ref::random_square_spectrum(rng, 4);
    const auto b = oracle_ref::random_square_spectrum(rng, 4);
    std::vector<double> mid(4);
    for (int i = 0; i < 4; ++i) mid[static_cast<std::size_t>(i)] = 0.5 * (a.lambda(i) + b.lambda(i));
    const auto m = SchmidtSpectrum::validate(mid, 4, 4);
    CHECK(qht::measures(m).entropy_of_entanglement >=
          0.5 * (qht::measures(a).entropy_of_entanglement +
                 qht::measures(b).entropy_of_entanglement) - 1e-14);
  }
}

TEST_CASE("tensor products multiply spectra and add measures", "[schmidt]") {
  const auto s = SchmidtSpectrum::validate({0.8, 0.2}, 2, 2);
  const auto t = qht::tensor_product(s, s);
  CHECK(t.d_a() == 4);
  CHECK(t.rank() == 4);
  CHECK_THAT(t.lambdas()[0], WithinAbs(0.64, 1e-15));
  CHECK_THAT(t.lambdas()[3], WithinAbs(0.04, 1e-15));
  CHECK_THAT(qht::measures(t).entropy_of_entanglement,
             WithinAbs(2 * qht::measures(s).entropy_of_entanglement, 1e-14));
  CHECK_THAT(qht::measures(t).log_robustness, WithinAbs(2 * qht::measures(s).log_robustness, 1e-14));
}

TEST_CASE("Exponent holds nonnegative reals and infinity", "[exponent]") {
  CHECK(qht::Exponent(0.5).value() == 0.5);
  CHECK(qht::Exponent::infinity().is_infinite());
  CHECK(qht::Exponent(INFINITY).is_infinite());
  CHECK(qht::Exponent(-1e-14).value() == 0.0);
  CHECK_FALSE(std::signbit(qht::Exponent(-0.0).value()));
  CHECK_THROWS_AS(qht::Exponent(-1e-3), std::invalid_argument);
  CHECK_THROWS_AS(qht::Exponent(NAN), std::invalid_argument);
  CHECK(qht::Exponent(1.0) < qht::Exponent::infinity());
  CHECK_THAT(qht::Exponent(std::log(2.0)).in_bits(), WithinAbs(1.0, 1e-15));
  std::ostringstream os;
  os << qht::Exponent::infinity();
  CHECK(os.str() == "inf");
}
