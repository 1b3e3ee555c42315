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


#include "ncent/report.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include <json.hpp>

#include "ncent/commutative.hpp"
#include "ncent/error.hpp"
#include "ncent/io.hpp"
#include "ncent/nc_bipartite.hpp"
#include "ncent/nc_kinematics.hpp"
#include "ncent/oracle.hpp"
#include "ncent/sweeps.hpp"
#include "ncent/symplectic.hpp"

namespace ncent {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Json = nlohmann::ordered_json;

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(io::format_sig(x));
}

double rel(double x, double ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); }

Check gate(std::string name, double value, double threshold, bool gating = true) {
  return {std::move(name), value <= threshold, value, threshold, gating};
}

std::vector<double> linspace(double lo, double hi, int n) { return Grid{lo, hi, n}.values(); }

// Entrywise deviation measured against the largest entry of the reference.
double scaled_dev(const PairBlocks& x, const PairBlocks& ref) {
  double dev = 0.0, scale = 0.0;
  for (char b : {'A', 'B', 'C', 'D', 'E', 'G'}) {
    dev = std::max(dev, (x.get(b) - ref.get(b)).cwiseAbs().maxCoeff());
    scale = std::max(scale, ref.get(b).cwiseAbs().maxCoeff());
  }
  return dev / scale;
}

SuiteResult core_suite() {
  SuiteResult r{"core", {}};
  std::mt19937_64 rng(20260416);

  {
    const VarianceMatrix vac(Matrix::Identity(2, 2) * 0.5, bases::single_mode());
    r.checks.push_back(gate("vacuum spectrum", std::abs(symplectic_spectrum(vac).min() - 1.0), 1e-12));
  }
  {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const VarianceMatrix v = random_variance(bases::two_mode(), rng, 1.0, 3.0);
      const auto before = symplectic_spectrum(v).values;
      const auto after = symplectic_spectrum(symplectic_congruence(v, random_symplectic(v.basis(), rng))).values;
      for (size_t i = 0; i < before.size(); ++i) worst = std::max(worst, rel(after[i], before[i]));
    }
    r.checks.push_back(gate("symplectic invariance", worst, 1e-9));
  }
  {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const VarianceMatrix v = random_variance(bases::planar_particle(), rng, 1.0, 3.0);
      const Williamson w = williamson(v);
      Matrix d = w.s * v.matrix() * w.s.transpose();
      Matrix target = Matrix::Zero(4, 4);
      for (Eigen::Index i = 0; i < 4; ++i) {
        if (v.basis()[i].kind != Kind::position) continue;
        const double half = 0.5 * w.nu(std::count_if(v.basis().entries().begin(), v.basis().entries().begin() + i,
                                                      [](const Coord& c) { return c.kind == Kind::position; }));
        target(i, i) = target(v.basis().conjugate_of(i), v.basis().conjugate_of(i)) = half;
      }
      worst = std::max(worst, (d - target).cwiseAbs().maxCoeff());
      if (!is_symplectic(w.s, v.basis())) worst = std::max(worst, 1.0);
    }
    r.checks.push_back(gate("williamson reconstruction", worst, 1e-9));
  }
  {
    int disagreements = 0;
    for (int k = 0; k < 200; ++k) {
      const bool physical = k < 100;
      const VarianceMatrix v =
          physical ? random_variance(bases::two_mode(), rng, 1.0, 3.0) : random_variance(bases::two_mode(), rng, 0.2, 0.95);
      const bool by_nu = is_physical_commutative(v).physical;
      const bool by_eig = uncertainty_min_eigenvalue(v) >= -tol::physicality;
      if (by_nu != by_eig || by_nu != physical) ++disagreements;
    }
    r.checks.push_back(gate("positivity equivalence", disagreements, 0));
  }
  {
    std::uniform_real_distribution<double> eta(0.2, 5.0), zeta(0.0, 10.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double e = eta(rng), z = zeta(rng);
      const auto br = nu_ppt_1d_branches(Pair1DParams::from_reduced(e, z));
      worst = std::max(worst, std::abs(nu_ppt_1d_closed(e, z) - br.pipeline));
    }
    r.checks.push_back(gate("1d closed form vs pipeline", worst, 1e-10));
  }
  {
    double worst = 0.0;
    for (double u : linspace(0.0, 10.0, 101)) {
      const Pair2DParams p{1.0, std::sqrt(u)};
      const BranchPair c = nu_ppt_2d(p), q = nu_ppt_2d_pipeline(p);
      worst = std::max({worst, std::abs(c.x - q.x), std::abs(c.y - q.y)});
    }
    r.checks.push_back(gate("2d closed form vs pipeline", worst, 1e-10));
  }
  {
    double worst = 0.0;
    for (double th : {0.0, 0.5, 1.0, 2.0, 5.0}) {
      for (double al : {0.1, 1.0, 10.0}) {
        worst = std::max(worst, std::abs(single_particle_ppt({al, {0.3, -0.2}, {0.1, 0.4}, th}) - 1.0));
      }
    }
    r.checks.push_back(gate("single particle separable", worst, 1e-10));
  }
  {
    double arg = 0.0, value = 0.0;
    for (double th : {0.5, 1.0, 2.0}) {
      const UncertaintyMinimum m = minimize_xx_uncertainty(th);
      arg = std::max(arg, rel(m.alpha0, 2.0 / th));
      value = std::max(value, rel(m.min_xx, th / 2.0));
    }
    r.checks.push_back(gate("uncertainty argmin", arg, 1e-6));
    r.checks.push_back(gate("uncertainty minimum value", value, 1e-10));
  }
  return r;
}

std::vector<NCPairParams> figure_grid() {
  std::vector<NCPairParams> out;
  for (double s : {0.5, 1.4, 2.0}) {
    for (double u : {0.0, 1.0, 4.0}) out.push_back(NCPairParams::figure(1.0, s, std::sqrt(u)));
  }
  return out;
}

SuiteResult oracle_suite() {
  SuiteResult r{"oracle", {}};
  double worst = 0.0, imag = 0.0, n2 = 0.0;
  for (const NCPairParams& p : figure_grid()) {
    const oracle::StateMoments m = oracle::state_moments(p);
    imag = std::max(imag, m.max_imag);
    n2 = std::max(n2, rel(m.norm_sq, normalization(p)));
    for (const oracle::BlockCheck& c : oracle::verify_blocks(p)) worst = std::max(worst, c.rel_error);
  }
  r.checks.push_back(gate("figure regime blocks", worst, 1e-6));
  r.checks.push_back(gate("normalization overlap", n2, 1e-8));
  r.checks.push_back(gate("hermiticity", imag, 1e-9));

  double fourier = 0.0;
  const NCPairParams p = NCPairParams::figure(1.0, 1.4, 0.7);
  using Spec = oracle::MomentumOperatorSpec;
  const std::vector<std::pair<Spec, Spec>> pairs = {
      {Spec::identity(), Spec::identity()},
      {Spec::x(1), Spec::p(2)},
      {Spec::product({oracle::Factor::x, 1}, {oracle::Factor::p, 1}, true), Spec::identity()},
      {Spec::p(1), Spec::x(2)}};
  for (const auto& [a, b] : pairs) {
    const auto direct = oracle::twisted_expectation(a, b, p);
    const auto via_fourier = oracle::twisted_expectation_fourier(a, b, p);
    fourier = std::max(fourier, std::abs(direct - via_fourier) / std::max(std::abs(direct), 1e-12));
  }
  r.checks.push_back(gate("fourier route", fourier, 1e-7));

  // Outside the figure regime the printed blocks are only diagnosed.
  NCPairParams g;
  g.alpha = 1.0;
  g.theta = 1.4;
  g.a = {0.5, 0.3};
  g.p0 = {0.4, 0.2};
  double general = 0.0;
  for (const oracle::BlockCheck& c : oracle::verify_blocks(g)) {
    general = std::max(general, std::abs(c.oracle - c.closed_form) / std::max(std::abs(c.closed_form), 1e-6));
  }
  r.checks.push_back(gate("general regime blocks", general, 1e-6, false));
  return r;
}

SuiteResult reductions_suite() {
  SuiteResult r{"reductions", {}};
  constexpr double kTheta = 1e-8;
  double blocks = 0.0, branches = 0.0, ent_zero = 0.0, ent_small = 0.0, report = 0.0;
  for (double u : linspace(0.0, 6.0, 25)) {
    const double b1 = std::sqrt(u);
    const Pair2DParams c{1.0, b1};
    const NCPairParams p = NCPairParams::figure(1.0, kTheta, b1);
    blocks = std::max(blocks, scaled_dev(effective_blocks(nc_blocks(p), kTheta), blocks_2d_pair(c)));
    const BranchPair nc = ppt_branch_eigs(p), cm = nu_ppt_2d(c);
    branches = std::max({branches, rel(nc.x, cm.x), rel(nc.y, cm.y)});

    const double ec = log_negativity(cm.min());
    ent_zero = std::max(ent_zero, std::abs(log_negativity_nc(NCPairParams::figure(1.0, 0.0, b1)) - ec));
    try {
      ent_small = std::max(ent_small, std::abs(log_negativity_nc(p) - ec));
    } catch (const Error&) {
      ent_small = std::numeric_limits<double>::infinity();
    }

    ReportParams rp;
    rp.alpha = 1.0;
    rp.theta = 0.0;
    rp.b1 = b1;
    rp.a1 = b1;
    const auto a = entanglement_report(Family::nc_pair, rp), b = entanglement_report(Family::commutative_2d, rp);
    report = std::max({report, std::abs(a.margin - b.margin), std::abs(a.log_negativity - b.log_negativity)});
  }
  r.checks.push_back(gate("theta to zero blocks", blocks, 1e-6));
  r.checks.push_back(gate("theta to zero branches", branches, 1e-6));
  r.checks.push_back(gate("theta zero entanglement", ent_zero, 1e-12));
  r.checks.push_back(gate("nc-pair report at theta zero", report, 1e-12));
  // alpha_min scales as 1/theta, so E at small theta does not approach E^C.
  r.checks.push_back(gate("small theta entanglement", ent_small, 1e-6, false));

  double coincide = 0.0;
  for (double s : {0.5, 1.4, 2.0}) {
    const NCPairParams p = NCPairParams::figure(1.0, s, 0.0);
    const BranchPair a = ppt_branch_eigs(p), b = physicality_branch_eigs(p);
    coincide = std::max({coincide, rel(a.x, b.x), rel(a.y, b.y), rel(a.x, a.y)});
  }
  r.checks.push_back(gate("zero separation coincidence", coincide, 1e-12));
  return r;
}

SuiteResult closed_forms_suite() {
  SuiteResult r{"closed-forms", {}};
  double worst = 0.0;
  for (const NCPairParams& p : figure_grid()) worst = std::max(worst, compare_closed_forms(p).max_rel_dev);
  r.checks.push_back(gate("printed branch eigenvalues", worst, 1e-9));
  return r;
}

}  // namespace

Family parse_family(const std::string& name) {
  if (name == "1d-commutative") return Family::commutative_1d;
  if (name == "2d-commutative") return Family::commutative_2d;
  if (name == "nc-single") return Family::nc_single;
  if (name == "nc-pair") return Family::nc_pair;
  throw Error(ErrorKind::invalid_argument, "unknown family '" + name + "'");
}

const char* to_string(Family f) {
  switch (f) {
    case Family::commutative_1d: return "1d-commutative";
    case Family::commutative_2d: return "2d-commutative";
    case Family::nc_single: return "nc-single";
    case Family::nc_pair: return "nc-pair";
  }
  return "?";
}

EntanglementReport entanglement_report(Family family, const ReportParams& in) {
  EntanglementReport r{family, in, "", kNaN, kNaN, 1.0, 0.0, false, 0.0};
  auto finish = [&](double nu_tilde, double nu_min, double e) {
    const Verdict v = verdict_from(nu_tilde, nu_min);
    r.nu_min_theta = nu_min;
    r.margin = v.margin;
    r.entangled = v.entangled;
    r.log_negativity = e;
  };
  switch (family) {
    case Family::commutative_1d: {
      r.nu_tilde_x = nu_ppt_1d(Pair1DParams::from_reduced(in.eta, in.zeta));
      finish(r.nu_tilde_x, 1.0, log_negativity(r.nu_tilde_x));
      break;
    }
    case Family::commutative_2d: {
      const BranchPair b = nu_ppt_2d(Pair2DParams{in.alpha, in.a1});
      r.nu_tilde_x = b.x;
      r.nu_tilde_y = b.y;
      finish(b.min(), 1.0, log_negativity(b.min()));
      break;
    }
    case Family::nc_single: {
      r.nu_tilde_x = single_particle_ppt({in.alpha, {in.a1, 0.0}, {in.p0x, in.p0y}, in.theta});
      finish(r.nu_tilde_x, 1.0, log_negativity(r.nu_tilde_x));
      break;
    }
    case Family::nc_pair: {
      NCPairParams p;
      p.alpha = in.alpha;
      p.theta = in.theta;
      p.a = {in.b1, 0.0};
      p.p0 = {in.p0x, in.p0y};
      p.validate();
      if (p.in_figure_regime()) {
        r.regime = "figure";
        const BranchPair b = ppt_branch_eigs(p);
        r.nu_tilde_x = b.x;
        r.nu_tilde_y = b.y;
        const double nm = nu_min_theta(p.theta, p.b()(0));
        finish(b.min(), nm, shifted_log_negativity(b.min(), nm));
      } else {
        r.regime = "general";
        r.nu_tilde_x = ppt_spectrum_min(p);
        const double nm = physical_spectrum_min(p);
        finish(r.nu_tilde_x, nm, shifted_log_negativity(r.nu_tilde_x, nm));
      }
      break;
    }
  }
  return r;
}

std::string to_json(const EntanglementReport& r) {
  Json params;
  const ReportParams& p = r.params;
  switch (r.family) {
    case Family::commutative_1d: params = {{"eta", number(p.eta)}, {"zeta", number(p.zeta)}}; break;
    case Family::commutative_2d: params = {{"alpha", number(p.alpha)}, {"a1", number(p.a1)}}; break;
    case Family::nc_single:
      params = {{"alpha", number(p.alpha)}, {"theta", number(p.theta)}, {"a1", number(p.a1)},
                {"p0", {number(p.p0x), number(p.p0y)}}};
      break;
    case Family::nc_pair:
      params = {{"alpha", number(p.alpha)}, {"theta", number(p.theta)}, {"b1", number(p.b1)},
                {"p0", {number(p.p0x), number(p.p0y)}}};
      break;
  }
  Json j{{"family", to_string(r.family)}, {"params", params}};
  if (!r.regime.empty()) j["regime"] = r.regime;
  j["nu_tilde"] = {{"x", number(r.nu_tilde_x)}, {"y", number(r.nu_tilde_y)}};
  j["nu_min"] = number(r.nu_min_theta);
  j["margin"] = number(r.margin);
  j["entangled"] = r.entangled;
  j["log_negativity"] = number(r.log_negativity);
  return j.dump(2);
}

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed || !c.gating; });
}

std::vector<SuiteResult> run_verification(const std::string& suite) {
  if (suite == "core") return {core_suite()};
  if (suite == "oracle") return {oracle_suite()};
  if (suite == "reductions") return {reductions_suite()};
  if (suite == "closed-forms") return {closed_forms_suite()};
  if (suite == "all") return {core_suite(), oracle_suite(), reductions_suite()};
  throw Error(ErrorKind::invalid_argument, "unknown suite '" + suite + "'");
}

std::string to_json(const std::vector<SuiteResult>& results) {
  Json suites = Json::array();
  bool all = true;
  for (const SuiteResult& s : results) {
    Json checks = Json::array();
    for (const Check& c : s.checks) {
      checks.push_back({{"name", c.name},
                        {"passed", c.passed},
                        {"gating", c.gating},
                        {"value", number(c.value)},
                        {"threshold", number(c.threshold)}});
    }
    suites.push_back({{"suite", s.suite}, {"passed", s.passed()}, {"checks", checks}});
    all = all && s.passed();
  }
  return Json{{"passed", all}, {"suites", suites}}.dump(2);
}

}  // namespace ncent
