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

// Exponent sweeps: Chernoff exponents over a family of spectra, or
// Hoeffding A exponents over a grid of r for one spectrum, per POVM class.

#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qht/exponent_formulas.hpp"
#include "qht/schmidt.hpp"
#include "qht/three_step_locc.hpp"

namespace qht::figures {

/// A numeric table; CSV is its canonical serialisation.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw std::out_of_range("Table: no column " + name);
  }
};

inline std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Comma separated, LF line endings, 12 significant digits.
inline void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

enum class Family { Fig1, Fig2, Custom };

/// A family of spectra swept for the Chernoff figures.
struct SweepSpec {
  Family family = Family::Fig1;
  std::string parameter_name = "lambda";
  std::vector<double> grid;
  std::vector<SchmidtSpectrum> spectra;
};

/// fig1: lambda_k = k / (2 grid), spectrum (lambda, 1 - lambda) on 2x2.
/// fig2: t_k = k / (4 grid), spectrum (t, t, t, 1 - 3t) on 4x4; with `raw`
/// the unnormalised (t, t, t, 1 - t), which fails validation.
inline SweepSpec make_sweep(Family family, int grid, bool raw = false) {
  if (grid < 1) throw std::invalid_argument("sweep: grid < 1");
  SweepSpec sw;
  sw.family = family;
  for (int k = 1; k <= grid; ++k) {
    if (family == Family::Fig1) {
      const double l = 0.5 * k / grid;
      sw.grid.push_back(l);
      sw.spectra.push_back(SchmidtSpectrum::validate({l, 1.0 - l}, 2, 2));
    } else if (family == Family::Fig2) {
      const double t = 0.25 * k / grid;
      sw.parameter_name = "t";
      sw.grid.push_back(t);
      const double last = raw ? 1.0 - t : 1.0 - 3.0 * t;
      sw.spectra.push_back(SchmidtSpectrum::validate({t, t, t, last}, 4, 4));
    } else {
      throw std::invalid_argument("sweep: custom families come with their spectra");
    }
  }
  return sw;
}

inline SweepSpec custom_sweep(std::vector<SchmidtSpectrum> spectra) {
  SweepSpec sw;
  sw.family = Family::Custom;
  sw.parameter_name = "index";
  for (std::size_t i = 0; i < spectra.size(); ++i) sw.grid.push_back(static_cast<double>(i + 1));
  sw.spectra = std::move(spectra);
  return sw;
}

struct FigureOptions {
  bool bits = false;
  three_step::OptimizeOptions optimizer;
};

struct FigureResult {
  Table table;
  /// Some row's optimizer run stopped on its evaluation cap.
  bool budget_exhausted = false;
};

inline double unit_scale(bool bits) { return bits ? 1.0 / std::numbers::ln2 : 1.0; }
inline std::string unit_suffix(bool bits) { return bits ? "_bits" : "_nats"; }

/// Columns: parameter, xi_global, xi_sep, xi_twoway_threestep,
/// xi_oneway_exact, xi_oneway_paper (the Schmidt-rank closed form) and the
/// optimizer_converged flag.
inline FigureResult chernoff_figure(const SweepSpec& sw, const FigureOptions& opts) {
  const double k = unit_scale(opts.bits);
  const std::string u = unit_suffix(opts.bits);
  FigureResult out;
  out.table.header = {sw.parameter_name,        "xi_global" + u,        "xi_sep" + u,
                      "xi_twoway_threestep" + u, "xi_oneway_exact" + u, "xi_oneway_paper" + u,
                      "optimizer_converged"};
  for (std::size_t i = 0; i < sw.spectra.size(); ++i) {
    const SchmidtSpectrum& s = sw.spectra[i];
    const ExponentReport ow = chernoff_exponent_class(s, PovmClass::OneWayLOCC);
    const three_step::OptimizeResult two =
        three_step::optimize(s, three_step::Objective::chernoff(), opts.optimizer);
    out.budget_exhausted = out.budget_exhausted || two.budget_exhausted;
    out.table.rows.push_back({
        sw.grid[i],
        k * chernoff_exponent_class(s, PovmClass::Global).chernoff.value(),
        k * chernoff_exponent_class(s, PovmClass::Separable).chernoff.value(),
        k * two.value,
        k * ow.chernoff.value(),
        k * ow.chernoff_paper_closed_form.value(),
        two.budget_exhausted ? 0.0 : 1.0,
    });
  }
  return out;
}

/// r_k = rmax k / grid, k = 1 .. grid. Columns: r, A_global, A_sep_upper,
/// A_sep_lower, A_twoway_threestep, A_oneway, optimizer_converged. The r
/// column is in the same unit as the exponents.
inline FigureResult hoeffding_figure(const SchmidtSpectrum& s, double rmax, int grid,
                                     const FigureOptions& opts) {
  if (grid < 1) throw std::invalid_argument("hoeffding sweep: grid < 1");
  if (!(rmax > 0.0)) throw std::invalid_argument("hoeffding sweep: rmax <= 0");
  const double k = unit_scale(opts.bits);
  const std::string u = unit_suffix(opts.bits);
  FigureResult out;
  out.table.header = {"r" + u,       "A_global" + u,           "A_sep_upper" + u,
                      "A_sep_lower" + u, "A_twoway_threestep" + u, "A_oneway" + u,
                      "optimizer_converged"};
  for (int i = 1; i <= grid; ++i) {
    const double r = rmax * i / grid;
    const HoeffdingBound sep = hoeffding_A(s, PovmClass::Separable, r);
    const three_step::OptimizeResult two =
        three_step::optimize(s, three_step::Objective::hoeffding(r), opts.optimizer);
    out.budget_exhausted = out.budget_exhausted || two.budget_exhausted;
    out.table.rows.push_back({
        k * r,
        k * hoeffding_A(s, PovmClass::Global, r).lower.value(),
        k * sep.upper.value(),
        k * sep.lower.value(),
        k * two.value,
        k * hoeffding_A(s, PovmClass::OneWayLOCC, r).lower.value(),
        two.budget_exhausted ? 0.0 : 1.0,
    });
  }
  return out;
}

/// The single-copy state of the Hoeffding figures,
/// (1/sqrt 5)|11> + (2/sqrt 5)|22>.
inline SchmidtSpectrum fig3_default_spectrum() {
  return SchmidtSpectrum::validate({0.8, 0.2}, 2, 2);
}

/// Two copies of `s` viewed as one bipartite state.
inline SchmidtSpectrum fig4_spectrum(const SchmidtSpectrum& s) {
  return tensor_product(s, s);
}

}  // namespace qht::figures
