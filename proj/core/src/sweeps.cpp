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


#include "ncent/sweeps.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ncent/commutative.hpp"
#include "ncent/error.hpp"
#include "ncent/io.hpp"
#include "ncent/parallel.hpp"

namespace ncent {

unsigned worker_count() {
  if (const char* env = std::getenv("WORKER_COUNT")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void Grid::validate() const {
  if (steps < 2) throw Error(ErrorKind::invalid_argument, "grid needs at least 2 steps");
  if (!(min < max) || !std::isfinite(min) || !std::isfinite(max)) {
    throw Error(ErrorKind::invalid_argument, "grid needs finite min < max");
  }
}

std::vector<double> Grid::values() const {
  validate();
  std::vector<double> v(static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i) v[i] = i + 1 == steps ? max : min + (max - min) * i / (steps - 1);
  return v;
}

void FigureRequest::validate() const {
  if (figure < 1 || figure > 8) throw Error(ErrorKind::invalid_argument, "figure id must be in 1..8");
  grid.validate();
  if (figure == 1) second.validate();
  if (figure >= 3 && grid.min < 0.0) throw Error(ErrorKind::invalid_argument, "alpha b1^2 must be >= 0");
  if (figure == 2 && grid.min < 0.0) throw Error(ErrorKind::invalid_argument, "alpha a1^2 must be >= 0");
  if (!(theta > 0.0) || !std::isfinite(theta)) throw Error(ErrorKind::invalid_argument, "theta must be > 0");
}

FigureRequest default_request(int figure) {
  FigureRequest r;
  r.figure = figure;
  if (figure == 1) {
    r.grid = {0.2, 5.0, 49};
    r.second = {0.0, 10.0, 51};
  } else if (figure == 2) {
    r.grid = {0.0, 3.0, 121};
  }
  return r;
}

double caption_s(int figure) {
  switch (figure) {
    case 3: case 6: return 1.4;
    case 4: case 7: return 1.6;
    case 5: case 8: return 1.8;
    default: throw Error(ErrorKind::invalid_argument, "caption value exists for figures 3-8 only");
  }
}

Table fig1(const Grid& eta, const Grid& zeta) {
  const auto es = eta.values(), zs = zeta.values();
  if (es.front() <= 0.0) throw Error(ErrorKind::invalid_argument, "eta must be > 0");
  if (zs.front() < 0.0) throw Error(ErrorKind::invalid_argument, "zeta must be >= 0");
  const size_t nz = zs.size();
  auto rows = parallel_map(es.size() * nz, [&](size_t k) {
    const double e = es[k / nz], z = zs[k % nz];
    return std::vector<double>{e, z, nu_ppt_1d(Pair1DParams::from_reduced(e, z))};
  });
  return {{"eta", "zeta", "nu_tilde_minus"}, std::move(rows)};
}

Table fig2(const Grid& u, double alpha) {
  const auto us = u.values();
  auto rows = parallel_map(us.size(), [&](size_t k) {
    Pair2DParams p{alpha, std::sqrt(us[k] / alpha)};
    return std::vector<double>{us[k], nu_ppt_2d(p).x};
  });
  return {{"alpha_a1_sq", "nu_x_tilde"}, std::move(rows)};
}

NCPoint nc_point(double u, const FigureRequest& req, AlphaMinCache* cache) {
  NCPoint pt{};
  pt.u = u;
  if (req.mode == AlphaMode::figure) {
    pt.alpha = caption_s(req.figure) / req.theta;
    pt.b1 = std::sqrt(u / pt.alpha);
  } else {
    pt.b1 = b1_for_reduced_separation(req.theta, u, cache);
    pt.alpha = cache ? cache->get(req.theta, pt.b1) : alpha_min_search(req.theta, pt.b1);
  }
  const NCPairParams p = NCPairParams::figure(pt.alpha, req.theta, pt.b1);
  const bool printed = req.source == EigenSource::transcribed;
  const BranchPair ppt = printed ? transcribed_ppt_branch_eigs(p) : ppt_branch_eigs(p);
  const BranchPair phys = printed ? transcribed_physicality_branch_eigs(p) : physicality_branch_eigs(p);
  pt.nu_tilde_x = ppt.x;
  pt.nu_tilde = ppt.min();
  pt.nu_min = phys.min();
  // The commutative curve depends on u only.
  pt.e_commutative = log_negativity(nu_ppt_2d(Pair2DParams{1.0, std::sqrt(u)}).min());
  pt.e_noncommutative = shifted_log_negativity(pt.nu_tilde, pt.nu_min);
  return pt;
}

Table run_figure(const FigureRequest& req) {
  req.validate();
  if (req.figure == 1) return fig1(req.grid, req.second);
  if (req.figure == 2) return fig2(req.grid);
  const auto us = req.grid.values();
  AlphaMinCache cache;
  const bool entanglement = req.figure >= 6;
  auto rows = parallel_map(us.size(), [&](size_t k) {
    const NCPoint pt = nc_point(us[k], req, &cache);
    if (entanglement) return std::vector<double>{pt.u, pt.e_commutative, pt.e_noncommutative};
    return std::vector<double>{pt.u, pt.nu_tilde_x * pt.nu_tilde_x, pt.nu_min * pt.nu_min};
  });
  if (entanglement) return {{"alpha_b1_sq", "E_commutative", "E_noncommutative"}, std::move(rows)};
  return {{"alpha_b1_sq", "nu_x_tilde_sq", "nu_min_sq"}, std::move(rows)};
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << io::format_sig(row[i]);
    os << '\n';
  }
  return os.str();
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r;
    // Round-trip through the 12-digit text so CSV and JSON agree.
    for (size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = std::stod(io::format_sig(row[i]));
    rows.push_back(std::move(r));
  }
  return nlohmann::ordered_json{{"columns", t.columns}, {"rows", rows}}.dump(2);
}

std::string gnuplot_script(const FigureRequest& req, const std::string& data_path) {
  std::ostringstream os;
  os << "set datafile separator ','\nset key autotitle columnhead\n";
  if (req.figure == 1) {
    os << "set xlabel 'eta'\nset ylabel 'zeta'\nset pm3d map\n"
       << "splot '" << data_path << "' using 1:2:3 with pm3d\n";
    return os.str();
  }
  os << "set xlabel '" << (req.figure == 2 ? "alpha a1^2" : "alpha b1^2") << "'\n";
  if (req.figure == 2) {
    os << "plot '" << data_path << "' using 1:2 with lines\n";
  } else {
    os << "plot '" << data_path << "' using 1:2 with lines, '' using 1:3 with lines\n";
  }
  return os.str();
}

}  // namespace ncent
