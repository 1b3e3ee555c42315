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


#pragma once

#include <string>
#include <vector>

#include "ncent/nc_bipartite.hpp"

namespace ncent {

struct Grid {
  double min = 0.0;
  double max = 1.0;
  int steps = 2;

  void validate() const;
  std::vector<double> values() const;
};

enum class AlphaMode { computed, figure };
enum class EigenSource { pipeline, transcribed };

struct FigureRequest {
  int figure = 1;
  Grid grid{0.0, 6.0, 121};
  Grid second{0.0, 10.0, 51};  // zeta axis, fig 1 only
  AlphaMode mode = AlphaMode::figure;
  EigenSource source = EigenSource::pipeline;
  double theta = 1.0;

  void validate() const;
};

// Default grids per figure.
FigureRequest default_request(int figure);

// alpha theta pinned by the captions of figs 3-8.
double caption_s(int figure);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

Table fig1(const Grid& eta, const Grid& zeta);
Table fig2(const Grid& u, double alpha = 1.0);

// One point of the NC pair sweeps at reduced separation u = alpha b1^2.
struct NCPoint {
  double u;
  double alpha;
  double b1;
  double nu_tilde_x;  // PT branch along the separation
  double nu_tilde;    // min of the PT branches
  double nu_min;      // min of the physicality branches at alpha
  double e_commutative;
  double e_noncommutative;
};

NCPoint nc_point(double u, const FigureRequest& req, AlphaMinCache* cache = nullptr);

// Figs 3-5: (alpha_b1_sq, nu_x_tilde_sq, nu_min_sq).
// Figs 6-8: (alpha_b1_sq, E_commutative, E_noncommutative).
Table run_figure(const FigureRequest& req);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);
std::string gnuplot_script(const FigureRequest& req, const std::string& data_path);

}  // namespace ncent
