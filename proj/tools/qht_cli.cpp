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

// qht: exponent reports, figure sweeps, finite-n oracles and the three-step
// protocol optimizer.
//
// Exit codes: 0 ok, 2 invalid input, 3 conflicting flags, 4 optimizer
// budget exhausted (output is still written).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qht/exponent_formulas.hpp"
#include "qht/figures.hpp"
#include "qht/finite_n_oracle.hpp"
#include "qht/svg_chart.hpp"
#include "qht/three_step_locc.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitConflict = 3;
constexpr int kExitBudget = 4;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FlagConflict : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpectrumFlags {
  std::vector<double> lambda;
  std::vector<int> dims;
  std::string input;
  CLI::Option* lambda_opt = nullptr;
  CLI::Option* dims_opt = nullptr;
  CLI::Option* input_opt = nullptr;

  void attach(CLI::App* app) {
    lambda_opt = app->add_option("--lambda", lambda, "Schmidt coefficients, comma separated")
                     ->delimiter(',');
    dims_opt = app->add_option("--dims", dims, "local dimensions dA,dB")
                   ->delimiter(',')
                   ->expected(2);
    input_opt = app->add_option("--input", input, "JSON spectrum {\"lambda\":[..],\"dA\":..,\"dB\":..}");
    input_opt->excludes(lambda_opt);
    input_opt->excludes(dims_opt);
  }
  bool given() const { return lambda_opt->count() > 0 || input_opt->count() > 0; }
};

qht::SchmidtSpectrum spectrum_from_json(const json& j) {
  if (!j.is_object() || !j.contains("lambda") || !j.contains("dA") || !j.contains("dB")) {
    throw InvalidInput("spectrum JSON needs \"lambda\", \"dA\" and \"dB\"");
  }
  try {
    const auto l = j.at("lambda").get<std::vector<double>>();
    return qht::SchmidtSpectrum::validate(l, j.at("dA").get<int>(), j.at("dB").get<int>());
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("spectrum JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

std::optional<qht::SchmidtSpectrum> resolve_spectrum(const SpectrumFlags& f) {
  if (f.input_opt->count()) return spectrum_from_json(read_json_file(f.input));
  if (f.lambda_opt->count()) {
    const int n = static_cast<int>(f.lambda.size());
    const int da = f.dims.size() == 2 ? f.dims[0] : n;
    const int db = f.dims.size() == 2 ? f.dims[1] : n;
    return qht::SchmidtSpectrum::validate(f.lambda, da, db);
  }
  return std::nullopt;
}

qht::SchmidtSpectrum require_spectrum(const SpectrumFlags& f) {
  auto s = resolve_spectrum(f);
  if (!s) throw InvalidInput("a spectrum is required (--lambda/--dims or --input)");
  return *s;
}

json number(double x) {
  if (std::isinf(x)) return x > 0 ? json("inf") : json("-inf");
  return json(x);
}

json number(const qht::Exponent& e, double scale) {
  return e.is_infinite() ? json("inf") : json(e.value() * scale);
}

/// Writes to `path`, or to stdout when it is empty.
template <typename Writer>
void emit(const std::string& path, Writer&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  write(out);
}

// ---- report ---------------------------------------------------------------

struct ReportArgs {
  SpectrumFlags spectrum;
  std::vector<double> r;
  bool bits = false;
  std::string format = "json";
  std::string out;
};

json hoeffding_row(const qht::SchmidtSpectrum& s, double r, double k) {
  using qht::PovmClass;
  json row;
  row["r"] = r * k;
  if (r > 0.0) {
    row["A_global"] = number(qht::hoeffding_A(s, PovmClass::Global, r).lower, k);
    row["A_oneway"] = number(qht::hoeffding_A(s, PovmClass::OneWayLOCC, r).lower, k);
    const auto sep = qht::hoeffding_A(s, PovmClass::Separable, r);
    row["A_sep_lower"] = number(sep.lower, k);
    row["A_sep_upper"] = number(sep.upper, k);
  }
  row["B_global"] = number(qht::hoeffding_B(s, PovmClass::Global, r).lower, k);
  const auto ow = qht::hoeffding_B(s, PovmClass::OneWayLOCC, r);
  row["B_oneway"] = number(ow.lower, k);
  row["B_oneway_threshold"] = *ow.threshold * k;
  row["B_oneway_printed_threshold"] = *ow.printed_threshold * k;
  const auto sep_b = qht::hoeffding_B(s, PovmClass::Separable, r);
  row["B_sep_lower"] = number(sep_b.lower, k);
  row["B_sep_upper"] = number(sep_b.upper, k);
  return row;
}

json build_report(const qht::SchmidtSpectrum& s, const ReportArgs& a) {
  using qht::PovmClass;
  const double k = qht::figures::unit_scale(a.bits);
  json j;
  j["lambda"] = s.lambdas();
  j["dA"] = s.d_a();
  j["dB"] = s.d_b();
  j["units"] = a.bits ? "bits" : "nats";
  const auto m = qht::measures(s);
  j["entropy_of_entanglement"] = m.entropy_of_entanglement * k;
  j["schmidt_rank"] = m.schmidt_rank;
  j["log_robustness"] = m.log_robustness * k;
  j["overlap_sq_with_phi0"] = m.overlap_sq_with_phi0;
  for (PovmClass c : {PovmClass::Global, PovmClass::OneWayLOCC, PovmClass::Separable}) {
    const std::string name = qht::to_string(c);
    const auto st = qht::stein_exponents(s, c);
    j["stein_alpha_" + name] = number(st.alpha, k);
    j["stein_beta_" + name] = number(st.beta, k);
    j["strong_converse_" + name] = number(st.strong_converse, k);
  }
  for (PovmClass c : {PovmClass::Global, PovmClass::OneWayLOCC, PovmClass::Separable}) {
    j["chernoff_" + std::string(qht::to_string(c))] =
        number(qht::chernoff_exponent_class(s, c).chernoff, k);
  }
  const auto ow = qht::chernoff_exponent_class(s, PovmClass::OneWayLOCC);
  j["chernoff_oneway_closed_form"] = number(ow.chernoff_paper_closed_form, k);
  j["closed_form_valid"] = ow.closed_form_valid;
  j["chernoff_oneway_s_star"] = ow.chernoff_s_star;
  if (!a.r.empty()) {
    json rows = json::array();
    for (double r : a.r) {
      if (!(r >= 0.0)) throw InvalidInput("--r must be nonnegative");
      rows.push_back(hoeffding_row(s, r / k, k));
    }
    j["hoeffding"] = rows;
  }
  return j;
}

void flatten_csv(const json& j, const std::string& prefix, std::ostream& out) {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten_csv(value, name, out);
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      for (std::size_t i = 0; i < value.size(); ++i)
        flatten_csv(value[i], name + "[" + std::to_string(i) + "]", out);
    } else if (value.is_number_float()) {
      out << name << "," << qht::figures::format_number(value.get<double>()) << "\n";
    } else if (value.is_string()) {
      out << name << "," << value.get<std::string>() << "\n";
    } else {
      std::string v = value.dump();
      for (char& ch : v)
        if (ch == ',') ch = ';';
      out << name << "," << v << "\n";
    }
  }
}

int run_report(const ReportArgs& a) {
  const qht::SchmidtSpectrum s = require_spectrum(a.spectrum);
  const json j = build_report(s, a);
  emit(a.out, [&](std::ostream& os) {
    if (a.format == "csv") {
      os << "quantity,value\n";
      flatten_csv(j, "", os);
    } else {
      os << j.dump(2) << "\n";
    }
  });
  return kExitOk;
}

// ---- optimizer flags shared by figure / optimize ---------------------------

struct OptimizerFlags {
  int starts = 64;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int s_grid = 17;

  void attach(CLI::App* app) {
    app->add_option("--starts", starts, "sampled optimizer starts")->check(CLI::NonNegativeNumber);
    app->add_option("--seed", seed, "optimizer seed");
    app->add_option("--tol", tol, "optimizer tolerance")->check(CLI::PositiveNumber);
    app->add_option("--s-grid", s_grid, "grid points of the Hoeffding inner search over s")
        ->check(CLI::Range(3, 100000));
  }
  qht::three_step::OptimizeOptions options() const {
    qht::three_step::OptimizeOptions o;
    o.starts = starts;
    o.seed = seed;
    o.tol = tol;
    o.s_grid = s_grid;
    return o;
  }
};

// ---- figure ----------------------------------------------------------------

struct FigureArgs {
  std::string which;
  SpectrumFlags spectrum;
  OptimizerFlags optimizer;
  int grid = 25;
  double rmax = 1.5;
  bool bits = false;
  bool fig2_raw = false;
  std::string format = "csv";
  std::string out;
  CLI::Option* rmax_opt = nullptr;
};

std::string svg_path_for(const std::string& csv_path) {
  const auto dot = csv_path.find_last_of('.');
  const auto slash = csv_path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return csv_path + ".svg";
  }
  return csv_path.substr(0, dot) + ".svg";
}

int run_figure(const FigureArgs& a) {
  namespace fig = qht::figures;
  const bool chernoff_family = a.which == "1" || a.which == "2" || a.which == "custom";
  if (a.fig2_raw && a.which != "2") throw FlagConflict("--fig2-raw applies to figure 2 only");
  if (chernoff_family && a.rmax_opt->count()) {
    throw FlagConflict("--rmax applies to figures 3 and 4 only");
  }
  if ((a.which == "1" || a.which == "2") && a.spectrum.given()) {
    throw FlagConflict("figures 1 and 2 sweep fixed families; use 'custom' with --input");
  }
  if (a.format == "both" && a.out.empty()) throw FlagConflict("--format both needs --out");

  fig::FigureOptions opts;
  opts.bits = a.bits;
  opts.optimizer = a.optimizer.options();
  fig::FigureResult result;
  std::string title;
  if (a.which == "1" || a.which == "2") {
    const auto family = a.which == "1" ? fig::Family::Fig1 : fig::Family::Fig2;
    result = fig::chernoff_figure(fig::make_sweep(family, a.grid, a.fig2_raw), opts);
    title = a.which == "1" ? "Chernoff exponents, (lambda, 1-lambda) on 2x2"
                           : "Chernoff exponents, (t, t, t, 1-3t) on 4x4";
  } else if (a.which == "custom") {
    if (!a.spectrum.input_opt->count()) throw InvalidInput("figure custom needs --input");
    const json j = read_json_file(a.spectrum.input);
    const json list = j.is_object() && j.contains("spectra") ? j.at("spectra") : j;
    std::vector<qht::SchmidtSpectrum> spectra;
    if (list.is_array()) {
      for (const auto& item : list) spectra.push_back(spectrum_from_json(item));
    } else {
      spectra.push_back(spectrum_from_json(list));
    }
    result = fig::chernoff_figure(fig::custom_sweep(std::move(spectra)), opts);
    title = "Chernoff exponents";
  } else if (a.which == "3" || a.which == "4") {
    const qht::SchmidtSpectrum base =
        resolve_spectrum(a.spectrum).value_or(fig::fig3_default_spectrum());
    const qht::SchmidtSpectrum s = a.which == "3" ? base : fig::fig4_spectrum(base);
    result = fig::hoeffding_figure(s, a.rmax, a.grid, opts);
    title = a.which == "3" ? "Hoeffding exponents A(r)" : "Hoeffding exponents A(r), two copies";
  } else {
    throw InvalidInput("figure must be 1, 2, 3, 4 or custom");
  }

  if (a.format == "csv" || a.format == "both") {
    emit(a.out, [&](std::ostream& os) { fig::write_csv(os, result.table); });
  }
  if (a.format == "svg" || a.format == "both") {
    const std::string path = a.format == "both" ? svg_path_for(a.out) : a.out;
    emit(path, [&](std::ostream& os) { fig::write_svg(os, result.table, title); });
  }
  if (result.budget_exhausted) {
    std::cerr << "qht: optimizer budget exhausted on at least one row "
                 "(optimizer_converged = 0)\n";
    return kExitBudget;
  }
  return kExitOk;
}

// ---- optimize ----------------------------------------------------------------

struct OptimizeArgs {
  SpectrumFlags spectrum;
  OptimizerFlags optimizer;
  std::string mode = "chernoff";
  double r = 0.0;
  CLI::Option* r_opt = nullptr;
  bool bits = false;
  std::string out;
};

int run_optimize(const OptimizeArgs& a) {
  namespace ts = qht::three_step;
  if (a.mode == "chernoff" && a.r_opt->count()) throw FlagConflict("--r needs --mode hoeffding");
  if (a.mode == "hoeffding" && !a.r_opt->count()) throw InvalidInput("--mode hoeffding needs --r");
  const qht::SchmidtSpectrum s = require_spectrum(a.spectrum);
  const double k = qht::figures::unit_scale(a.bits);
  const ts::Objective obj =
      a.mode == "chernoff" ? ts::Objective::chernoff() : ts::Objective::hoeffding(a.r / k);
  const ts::OptimizeResult res = ts::optimize(s, obj, a.optimizer.options());

  json j;
  j["mode"] = a.mode;
  if (a.mode == "hoeffding") j["r"] = a.r;
  j["units"] = a.bits ? "bits" : "nats";
  j["value"] = number(res.value * k);
  j["s_star"] = res.s_star;
  j["budget_exhausted"] = res.budget_exhausted;
  j["evaluations"] = res.evaluations;
  j["best_start"] = res.best_start;
  j["roles_swapped"] = res.roles_swapped;
  json w = json::object();
  for (std::size_t i = 0; i < res.argmax.num_subsets(); ++i) {
    const auto span = res.argmax.weights(i);
    w[ts::ThreeStepParams::subset_name(res.argmax.members(i))] =
        std::vector<double>(span.begin(), span.end());
  }
  j["weights"] = w;
  emit(a.out, [&](std::ostream& os) { os << j.dump(2) << "\n"; });
  return res.budget_exhausted ? kExitBudget : kExitOk;
}

// ---- oracle ----------------------------------------------------------------

struct OracleArgs {
  std::string which;
  SpectrumFlags spectrum;
  int n = 1;
  int nmax = 200;
  double alpha = 0.25;
  double cap = 0.1;
  double r = 0.0;
  std::string mode = "stein";
  bool arbitrate_b = false;
  bool bits = false;
  std::string out;
  CLI::Option* r_opt = nullptr;
};

int run_oracle(OracleArgs a) {
  namespace orc = qht::oracle;
  namespace fig = qht::figures;
  if (a.arbitrate_b) {
    if (!a.which.empty() && a.which != "arbitrate") {
      throw FlagConflict("--arbitrate-B conflicts with oracle " + a.which);
    }
    a.which = "arbitrate";
  }
  const double k = fig::unit_scale(a.bits);
  const std::string u = fig::unit_suffix(a.bits);
  std::ostringstream os;
  if (a.which == "np") {
    if (!(a.alpha >= 0.0 && a.alpha <= 1.0)) throw InvalidInput("--alpha outside [0,1]");
    if (a.n < 1 || a.n > orc::kMaxTrendLength) throw InvalidInput("--n outside [1, 500]");
    const auto res = orc::one_way_beta(require_spectrum(a.spectrum), a.n, a.alpha);
    os << "n,alpha,alpha_achieved,beta_opt,lr_threshold,randomization,ln_alpha,ln_beta\n";
    os << a.n << "," << fig::format_number(a.alpha) << ","
       << fig::format_number(res.alpha_achieved) << "," << fig::format_number(res.beta_opt)
       << "," << fig::format_number(res.lr_threshold) << ","
       << fig::format_number(res.randomization) << "," << fig::format_number(res.log_alpha)
       << "," << fig::format_number(res.log_beta) << "\n";
  } else if (a.which == "zero") {
    if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw InvalidInput("--alpha outside (0,1)");
    std::optional<qht::SchmidtSpectrum> s = resolve_spectrum(a.spectrum);
    if (!s) {
      if (a.spectrum.dims.size() != 2) throw InvalidInput("oracle zero needs --dims or a spectrum");
      s = qht::SchmidtSpectrum::validate({1.0}, a.spectrum.dims[0], a.spectrum.dims[1]);
    }
    os << "alpha,d_max,n_star\n";
    os << fig::format_number(a.alpha) << "," << s->d_max() << ","
       << orc::zero_error_threshold(a.alpha, *s) << "\n";
  } else if (a.which == "trend") {
    if (a.nmax < 1 || a.nmax > orc::kMaxTrendLength) throw InvalidInput("--nmax outside [1, 500]");
    const qht::SchmidtSpectrum s =
        resolve_spectrum(a.spectrum).value_or(qht::SchmidtSpectrum::validate({0.8, 0.2}, 2, 2));
    orc::TrendMode mode;
    if (a.mode == "stein") {
      if (a.r_opt->count()) throw FlagConflict("--r needs --mode hoeffding");
      if (!(a.cap > 0.0 && a.cap < 1.0)) throw InvalidInput("--cap outside (0,1)");
      mode = orc::TrendMode::stein_alpha(a.cap);
    } else {
      if (!(a.r > 0.0)) throw InvalidInput("--mode hoeffding needs --r > 0");
      mode = orc::TrendMode::hoeffding_beta(a.r / k);
    }
    const auto trend = orc::exponent_trend(s, mode, a.nmax);
    os << "n," << (a.mode == "stein" ? "alpha" : "beta") << ",estimate" << u << "\n";
    for (const auto& row : trend.rows) {
      os << row.n << "," << fig::format_number(row.error) << ","
         << fig::format_number(row.estimate * k) << "\n";
    }
  } else if (a.which == "arbitrate") {
    if (a.nmax < 1 || a.nmax > orc::kMaxTrendLength) throw InvalidInput("--nmax outside [1, 500]");
    const qht::SchmidtSpectrum s =
        resolve_spectrum(a.spectrum).value_or(qht::SchmidtSpectrum::validate({0.5, 0.5}, 2, 2));
    const double log_d = s.log_total_dim();
    const double log_rank = std::log(static_cast<double>(s.rank()));
    const double below = log_d - log_rank;
    const double above = a.r_opt->count() ? a.r / k : log_d;
    if (!(below > 0.0)) throw InvalidInput("arbitration needs ln D - ln R_s > 0");
    const auto arb = orc::arbitrate_B(s, below, above, a.nmax);
    os << "quantity,value\n";
    os << "corrected_threshold" << u << "," << fig::format_number(arb.corrected_threshold * k) << "\n";
    os << "printed_threshold" << u << "," << fig::format_number(arb.printed_threshold * k) << "\n";
    os << "r_below" << u << "," << fig::format_number(arb.r_below * k) << "\n";
    os << "r_above" << u << "," << fig::format_number(arb.r_above * k) << "\n";
    os << "zero_beta_at_n," << (arb.zero_beta_at ? std::to_string(*arb.zero_beta_at) : "none") << "\n";
    os << "above_beta_positive," << (arb.above_beta_positive ? "true" : "false") << "\n";
    os << "above_first_estimate" << u << "," << fig::format_number(arb.above_first_estimate * k) << "\n";
    os << "above_last_estimate" << u << "," << fig::format_number(arb.above_last_estimate * k) << "\n";
    os << "finite_branch_formula" << u << ","
       << fig::format_number(arb.finite_branch_formula.value() * k) << "\n";
    os << "classical_reduction" << u << ","
       << fig::format_number(arb.classical_reduction.value() * k) << "\n";
    os << "verdict," << arb.verdict << "\n";
  } else {
    throw InvalidInput("oracle needs one of np, zero, trend, arbitrate");
  }
  emit(a.out, [&](std::ostream& out) { out << os.str(); });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Error exponents for testing the completely mixed state against a bipartite pure state"};
  app.require_subcommand(1);

  ReportArgs report;
  CLI::App* report_cmd = app.add_subcommand("report", "exponent report for one spectrum");
  report.spectrum.attach(report_cmd);
  report_cmd->add_option("--r", report.r, "type 1/2 exponent constraints for Hoeffding rows")
      ->delimiter(',');
  report_cmd->add_flag("--bits", report.bits, "report in bits instead of nats");
  report_cmd->add_option("--format", report.format)->check(CLI::IsMember({"json", "csv"}));
  report_cmd->add_option("--out", report.out, "output path (default stdout)");

  FigureArgs figure;
  CLI::App* figure_cmd = app.add_subcommand("figure", "exponent sweeps as CSV and SVG");
  figure_cmd->add_option("which", figure.which, "1, 2, 3, 4 or custom")->required();
  figure.spectrum.attach(figure_cmd);
  figure.optimizer.attach(figure_cmd);
  figure_cmd->add_option("--grid", figure.grid, "number of sweep points")
      ->check(CLI::PositiveNumber);
  figure.rmax_opt = figure_cmd->add_option("--rmax", figure.rmax, "largest r (figures 3, 4)")
                        ->check(CLI::PositiveNumber);
  figure_cmd->add_flag("--bits", figure.bits, "exponents in bits instead of nats");
  figure_cmd->add_flag("--fig2-raw", figure.fig2_raw, "use (t, t, t, 1-t) for figure 2");
  figure_cmd->add_option("--format", figure.format)->check(CLI::IsMember({"csv", "svg", "both"}));
  figure_cmd->add_option("--out", figure.out, "output path; with 'both' the SVG gets .svg");

  OptimizeArgs optimize;
  CLI::App* optimize_cmd = app.add_subcommand("optimize", "optimize the three-step protocol");
  optimize.spectrum.attach(optimize_cmd);
  optimize.optimizer.attach(optimize_cmd);
  optimize_cmd->add_option("--mode", optimize.mode)->check(CLI::IsMember({"chernoff", "hoeffding"}));
  optimize.r_opt = optimize_cmd->add_option("--r", optimize.r, "type 2 exponent constraint")
                       ->check(CLI::PositiveNumber);
  optimize_cmd->add_flag("--bits", optimize.bits, "exponents in bits instead of nats");
  optimize_cmd->add_option("--out", optimize.out);

  OracleArgs oracle;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "exact finite-n computations");
  oracle_cmd->add_option("which", oracle.which, "np, zero, trend or arbitrate");
  oracle.spectrum.attach(oracle_cmd);
  oracle_cmd->add_option("--n", oracle.n, "blocklength");
  oracle_cmd->add_option("--nmax", oracle.nmax, "largest blocklength of a trend");
  oracle_cmd->add_option("--alpha", oracle.alpha, "type 1 error level");
  oracle_cmd->add_option("--cap", oracle.cap, "type 2 error cap (stein trend)");
  oracle.r_opt = oracle_cmd->add_option("--r", oracle.r, "type 1 exponent (hoeffding trend)");
  oracle_cmd->add_option("--mode", oracle.mode)->check(CLI::IsMember({"stein", "hoeffding"}));
  oracle_cmd->add_flag("--arbitrate-B", oracle.arbitrate_b, "run the one-way B threshold arbitration");
  oracle_cmd->add_flag("--bits", oracle.bits, "exponents in bits instead of nats");
  oracle_cmd->add_option("--out", oracle.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ExcludesError& e) {
    app.exit(e);
    return kExitConflict;
  } catch (const CLI::RequiresError& e) {
    app.exit(e);
    return kExitConflict;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (report_cmd->parsed()) return run_report(report);
    if (figure_cmd->parsed()) return run_figure(figure);
    if (optimize_cmd->parsed()) return run_optimize(optimize);
    if (oracle_cmd->parsed()) return run_oracle(oracle);
  } catch (const FlagConflict& e) {
    std::cerr << "qht: " << e.what() << "\n";
    return kExitConflict;
  } catch (const qht::SpectrumError& e) {
    std::cerr << "qht: invalid spectrum: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const InvalidInput& e) {
    std::cerr << "qht: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qht: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
