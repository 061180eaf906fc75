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

#include <cmath>
#include <sstream>

#include "qht/figures.hpp"
#include "qht/svg_chart.hpp"

using Catch::Matchers::WithinAbs;
using qht::SchmidtSpectrum;
namespace fig = qht::figures;

namespace {

const double kLn2 = std::log(2.0);

fig::FigureOptions quick(bool bits = false) {
  fig::FigureOptions o;
  o.bits = bits;
  o.optimizer.starts = 16;
  return o;
}

}  // namespace

TEST_CASE("number formatting", "[figures]") {
  CHECK(fig::format_number(0.0) == "0");
  CHECK(fig::format_number(-0.0) == "0");
  CHECK(fig::format_number(INFINITY) == "inf");
  CHECK(fig::format_number(-INFINITY) == "-inf");
  CHECK(fig::format_number(NAN) == "nan");
  CHECK(fig::format_number(0.5) == "0.5");
  CHECK(fig::format_number(kLn2) == "0.69314718056");
  CHECK(fig::format_number(1e-20) == "1e-20");
}

TEST_CASE("csv layout", "[figures]") {
  fig::Table t;
  t.header = {"a", "b"};
  t.rows = {{1.0, 2.5}, {INFINITY, 0.0}};
  std::ostringstream out;
  fig::write_csv(out, t);
  CHECK(out.str() == "a,b\n1,2.5\ninf,0\n");
  CHECK(t.column("b") == 1);
  CHECK_THROWS_AS(t.column("c"), std::out_of_range);
}

TEST_CASE("sweep families", "[figures]") {
  const auto f1 = fig::make_sweep(fig::Family::Fig1, 4);
  REQUIRE(f1.grid.size() == 4);
  CHECK(f1.grid.back() == 0.5);
  CHECK(f1.spectra[0].lambda(0) == 0.875);
  const auto f2 = fig::make_sweep(fig::Family::Fig2, 5);
  CHECK(f2.parameter_name == "t");
  CHECK(f2.grid.back() == 0.25);
  CHECK(f2.spectra.back().total_dim() == 16);
  CHECK(f2.spectra.back().is_maximally_entangled());
  CHECK_THROWS_AS(fig::make_sweep(fig::Family::Fig2, 5, true), qht::SpectrumError);
  CHECK_THROWS_AS(fig::make_sweep(fig::Family::Fig1, 0), std::invalid_argument);
  CHECK_THROWS_AS(fig::make_sweep(fig::Family::Custom, 3), std::invalid_argument);
}

TEST_CASE("chernoff figure on the two-qubit family", "[figures]") {
  const auto sw = fig::make_sweep(fig::Family::Fig1, 5);
  const auto res = fig::chernoff_figure(sw, quick());
  const auto& t = res.table;
  CHECK(t.header[0] == "lambda");
  CHECK(t.header[1] == "xi_global_nats");
  CHECK(t.header.back() == "optimizer_converged");
  CHECK_FALSE(res.budget_exhausted);
  REQUIRE(t.rows.size() == 5);
  const auto& last = t.rows.back();  // lambda = 1/2
  CHECK_THAT(last[t.column("xi_global_nats")], WithinAbs(std::log(4.0), 1e-12));
  for (const char* c : {"xi_sep_nats", "xi_twoway_threestep_nats", "xi_oneway_exact_nats",
                        "xi_oneway_paper_nats"})
    CHECK_THAT(last[t.column(c)], WithinAbs(kLn2, 1e-6));
  for (const auto& row : t.rows) {
    CHECK(row[t.column("xi_oneway_exact_nats")] <= row[t.column("xi_twoway_threestep_nats")] + 1e-9);
    CHECK(row[t.column("xi_twoway_threestep_nats")] <= row[t.column("xi_sep_nats")] + 1e-9);
    CHECK(row[t.column("xi_sep_nats")] <= row[t.column("xi_global_nats")] + 1e-12);
    CHECK(row[t.column("optimizer_converged")] == 1.0);
  }
  // lambda = 0.2 separates the one-way and three-step values
  const auto& mid = t.rows[1];
  CHECK(mid[0] == 0.2);
  CHECK(mid[t.column("xi_twoway_threestep_nats")] > mid[t.column("xi_oneway_exact_nats")] + 1e-3);
}

TEST_CASE("bit units rescale every exponent column", "[figures]") {
  fig::SweepSpec sw = fig::make_sweep(fig::Family::Fig1, 2);
  const auto nats = fig::chernoff_figure(sw, quick(false)).table;
  const auto bits = fig::chernoff_figure(sw, quick(true)).table;
  CHECK(bits.header[1] == "xi_global_bits");
  for (std::size_t r = 0; r < nats.rows.size(); ++r) {
    CHECK(bits.rows[r][0] == nats.rows[r][0]);
    for (std::size_t c = 1; c + 1 < nats.header.size(); ++c)
      CHECK_THAT(bits.rows[r][c], WithinAbs(nats.rows[r][c] / kLn2, 1e-12));
  }
}

TEST_CASE("hoeffding figure", "[figures]") {
  const auto s = fig::fig3_default_spectrum();
  const auto res = fig::hoeffding_figure(s, 1.5, 6, quick());
  const auto& t = res.table;
  CHECK(t.header[0] == "r_nats");
  REQUIRE(t.rows.size() == 6);
  const double cut = qht::hoeffding_A(s, qht::PovmClass::Separable, 1.0).threshold.value();
  for (const auto& row : t.rows) {
    const double r = row[0];
    if (r > cut) CHECK(row[t.column("A_sep_upper_nats")] == row[t.column("A_sep_lower_nats")]);
    CHECK(row[t.column("A_oneway_nats")] <= row[t.column("A_twoway_threestep_nats")] + 1e-9);
    CHECK(row[t.column("A_twoway_threestep_nats")] <= row[t.column("A_sep_upper_nats")] + 1e-9);
    CHECK(row[t.column("A_sep_upper_nats")] <= row[t.column("A_global_nats")] + 1e-12);
  }
  CHECK_THROWS_AS(fig::hoeffding_figure(s, 0.0, 6, quick()), std::invalid_argument);
  CHECK_THROWS_AS(fig::hoeffding_figure(s, 1.0, 0, quick()), std::invalid_argument);
  CHECK(fig::fig4_spectrum(s).total_dim() == 16);
  CHECK(fig::fig4_spectrum(s).rank() == 4);
}

TEST_CASE("svg output is deterministic and labelled", "[figures]") {
  const auto t = fig::chernoff_figure(fig::make_sweep(fig::Family::Fig1, 3), quick()).table;
  std::ostringstream a, b;
  fig::write_svg(a, t, "Chernoff");
  fig::write_svg(b, t, "Chernoff");
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("<svg", 0) == 0);
  CHECK(a.str().find("xi_sep_nats") != std::string::npos);
  CHECK(a.str().find("optimizer_converged") == std::string::npos);
  fig::Table inf_only;
  inf_only.header = {"x", "y"};
  inf_only.rows = {{1.0, INFINITY}};
  std::ostringstream c;
  CHECK_NOTHROW(fig::write_svg(c, inf_only, "empty"));
}
