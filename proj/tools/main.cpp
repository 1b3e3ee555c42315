/*
 * Copyright 2026 The ncent Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// ncent: figure data, entanglement reports, spectra and verification suites.
//
// Exit codes: 0 success or separable, 10 entangled, 2 usage, 3 parse,
// 4 numerical failure (including a failed verification suite).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncent/ncent.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kEntangled = 10;
constexpr int kUsage = 2;
constexpr int kParse = 3;
constexpr int kNumerical = 4;

int exit_code(ncent::ErrorKind kind) {
  using ncent::ErrorKind;
  switch (kind) {
    case ErrorKind::invalid_argument: return kUsage;
    case ErrorKind::parse:
    case ErrorKind::basis_malformed:
    case ErrorKind::invalid_matrix: return kParse;
    default: return kNumerical;
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw ncent::Error(ncent::ErrorKind::invalid_argument, "cannot write '" + out + "'");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

ncent::io::Format parse_format(const std::string& s) {
  return s == "json" ? ncent::io::Format::json : ncent::io::Format::csv;
}

struct FigOptions {
  int figure = 0;
  std::vector<double> grid_min, grid_max;
  std::vector<int> steps;
  std::string mode = "figure";
  std::string source = "pipeline";
  double theta = 1.0;
  std::string out, format = "csv", gnuplot;
};

int run_fig(const FigOptions& o) {
  ncent::FigureRequest req = ncent::default_request(o.figure);
  req.figure = o.figure;
  auto apply = [&](size_t k, ncent::Grid& g) {
    if (k < o.grid_min.size()) g.min = o.grid_min[k];
    if (k < o.grid_max.size()) g.max = o.grid_max[k];
    if (k < o.steps.size()) g.steps = o.steps[k];
  };
  apply(0, req.grid);
  apply(1, req.second);
  req.mode = o.mode == "computed" ? ncent::AlphaMode::computed : ncent::AlphaMode::figure;
  req.source = o.source == "transcribed" ? ncent::EigenSource::transcribed : ncent::EigenSource::pipeline;
  req.theta = o.theta;

  const ncent::Table t = ncent::run_figure(req);
  emit(parse_format(o.format) == ncent::io::Format::json ? ncent::to_json(t) : ncent::to_csv(t), o.out);
  if (!o.gnuplot.empty()) emit(ncent::gnuplot_script(req, o.out.empty() ? "data.csv" : o.out), o.gnuplot);
  return kOk;
}

struct ReportOptions {
  std::string family;
  ncent::ReportParams params;
  std::string out, format = "json";
};

std::string report_csv(const ncent::EntanglementReport& r) {
  using ncent::io::format_sig;
  std::string s = "family,nu_tilde_x,nu_tilde_y,nu_min,margin,entangled,log_negativity\n";
  s += std::string(ncent::to_string(r.family)) + "," + format_sig(r.nu_tilde_x) + "," + format_sig(r.nu_tilde_y) + "," +
       format_sig(r.nu_min_theta) + "," + format_sig(r.margin) + "," + (r.entangled ? "true" : "false") + "," +
       format_sig(r.log_negativity) + "\n";
  return s;
}

int run_report(const ReportOptions& o) {
  const auto r = ncent::entanglement_report(ncent::parse_family(o.family), o.params);
  emit(o.format == "csv" ? report_csv(r) : ncent::to_json(r), o.out);
  return r.entangled ? kEntangled : kOk;
}

struct SpectrumOptions {
  std::string path;
  bool pt = false;
  std::string out, format = "csv";
};

int run_spectrum(const SpectrumOptions& o) {
  ncent::VarianceMatrix v = ncent::io::load_variance(o.path);
  if (o.pt) {
    if (!v.basis().has_particle(2)) {
      throw ncent::Error(ncent::ErrorKind::basis_malformed, "partial transpose needs a particle 2 in the basis");
    }
    v = ncent::partial_transpose(v, 2);
  }
  const auto spec = ncent::symplectic_spectrum(v);
  const double margin = spec.min() - 1.0;
  std::string text;
  if (o.format == "json") {
    std::string nus;
    for (size_t i = 0; i < spec.values.size(); ++i) nus += (i ? ", " : "") + ncent::io::format_sig(spec.values[i]);
    text = "{\"nu\": [" + nus + "], \"margin\": " + ncent::io::format_sig(margin) + "}";
  } else {
    text = "nu: ";
    for (size_t i = 0; i < spec.values.size(); ++i) text += (i ? ", " : "") + ncent::io::format_sig(spec.values[i]);
    text += "; margin: " + ncent::io::format_sig(margin);
  }
  emit(text, o.out);
  return kOk;
}

struct ExportOptions {
  std::string family;
  ncent::ReportParams params;
  std::string out, format = "csv";
};

// Writes the variance matrix a report is computed from.
int run_export(const ExportOptions& o) {
  const ncent::ReportParams& p = o.params;
  auto matrix = [&]() -> ncent::VarianceMatrix {
    switch (ncent::parse_family(o.family)) {
      case ncent::Family::commutative_1d: return ncent::variance_1d_pair(ncent::Pair1DParams::from_reduced(p.eta, p.zeta));
      case ncent::Family::commutative_2d: return ncent::variance_2d_pair({p.alpha, p.a1});
      case ncent::Family::nc_single:
        return ncent::single_particle_nc_variance({p.alpha, {p.a1, 0.0}, {p.p0x, p.p0y}, p.theta});
      case ncent::Family::nc_pair: {
        ncent::NCPairParams q;
        q.alpha = p.alpha;
        q.theta = p.theta;
        q.a = {p.b1, 0.0};
        q.p0 = {p.p0x, p.p0y};
        return ncent::assemble_nc_variance(ncent::nc_blocks(q));
      }
    }
    throw ncent::Error(ncent::ErrorKind::invalid_argument, "unknown family");
  }();
  emit(o.format == "json" ? ncent::io::to_json(matrix) : ncent::io::to_csv(matrix), o.out);
  return kOk;
}

void add_params(CLI::App* cmd, ncent::ReportParams& p) {
  cmd->add_option("--eta", p.eta, "alpha / beta (1d-commutative)");
  cmd->add_option("--zeta", p.zeta, "p0^2 / beta (1d-commutative)");
  cmd->add_option("--alpha", p.alpha, "packet width parameter");
  cmd->add_option("--a1", p.a1, "separation along x (2d-commutative, nc-single)");
  cmd->add_option("--theta", p.theta, "non-commutative parameter");
  cmd->add_option("--b1", p.b1, "separation along x (nc-pair)");
  cmd->add_option("--p0x", p.p0x, "relative momentum, x");
  cmd->add_option("--p0y", p.p0y, "relative momentum, y");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of Gaussian pair states on commutative and non-commutative planes"};
  app.require_subcommand(1);

  FigOptions fig;
  auto* fig_cmd = app.add_subcommand("fig", "emit the data series of a figure");
  fig_cmd->add_option("--fig", fig.figure, "figure id")->required()->check(CLI::Range(1, 8));
  fig_cmd->add_option("--grid-min", fig.grid_min, "abscissa minimum (give twice for fig 1: eta, zeta)")->expected(1, 2)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  fig_cmd->add_option("--grid-max", fig.grid_max, "abscissa maximum")->expected(1, 2)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  fig_cmd->add_option("--steps", fig.steps, "number of grid points")->expected(1, 2)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  fig_cmd->add_option("--mode", fig.mode, "alpha choice for figs 3-8")->check(CLI::IsMember({"computed", "figure"}));
  fig_cmd->add_option("--source", fig.source, "branch eigenvalues for figs 3-8")
      ->check(CLI::IsMember({"pipeline", "transcribed"}));
  fig_cmd->add_option("--theta", fig.theta, "non-commutative parameter");
  fig_cmd->add_option("--out", fig.out, "output path (default stdout)");
  fig_cmd->add_option("--format", fig.format)->check(CLI::IsMember({"csv", "json"}));
  fig_cmd->add_option("--gnuplot", fig.gnuplot, "also write a gnuplot script to this path");

  ReportOptions rep;
  auto* rep_cmd = app.add_subcommand("report", "entanglement report for one parameter point");
  rep_cmd->add_option("family", rep.family, "1d-commutative | 2d-commutative | nc-single | nc-pair")
      ->required()
      ->check(CLI::IsMember({"1d-commutative", "2d-commutative", "nc-single", "nc-pair"}));
  add_params(rep_cmd, rep.params);
  rep_cmd->add_option("--out", rep.out, "output path (default stdout)");
  rep_cmd->add_option("--format", rep.format)->check(CLI::IsMember({"csv", "json"}));

  SpectrumOptions spec;
  auto* spec_cmd = app.add_subcommand("spectrum", "symplectic spectrum of a variance matrix file");
  spec_cmd->add_option("file", spec.path, "CSV or JSON variance matrix")->required();
  spec_cmd->add_flag("--pt", spec.pt, "flip the momenta of particle 2 first");
  spec_cmd->add_option("--out", spec.out, "output path (default stdout)");
  spec_cmd->add_option("--format", spec.format)->check(CLI::IsMember({"csv", "json"}));

  ExportOptions exp;
  auto* exp_cmd = app.add_subcommand("export", "write the variance matrix of a family");
  exp_cmd->add_option("family", exp.family)
      ->required()
      ->check(CLI::IsMember({"1d-commutative", "2d-commutative", "nc-single", "nc-pair"}));
  add_params(exp_cmd, exp.params);
  exp_cmd->add_option("--out", exp.out, "output path (default stdout)");
  exp_cmd->add_option("--format", exp.format)->check(CLI::IsMember({"csv", "json"}));

  std::string suite = "all";
  std::string verify_out;
  auto* ver_cmd = app.add_subcommand("verify", "run a verification suite");
  ver_cmd->add_option("--suite", suite)->check(CLI::IsMember({"core", "oracle", "reductions", "closed-forms", "all"}));
  ver_cmd->add_option("--out", verify_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*fig_cmd) return run_fig(fig);
    if (*rep_cmd) return run_report(rep);
    if (*spec_cmd) return run_spectrum(spec);
    if (*exp_cmd) return run_export(exp);
    if (*ver_cmd) {
      const auto results = ncent::run_verification(suite);
      emit(ncent::to_json(results), verify_out);
      for (const auto& r : results) {
        if (!r.passed()) return kNumerical;
      }
      return kOk;
    }
  } catch (const ncent::Error& e) {
    std::cerr << "ncent: " << ncent::to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "ncent: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
