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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "helpers.hpp"
#include "ncent/commutative.hpp"
#include "ncent/parallel.hpp"
#include "ncent/sweeps.hpp"

using namespace ncent;
using doctest::Approx;

TEST_CASE("grid") {
  const auto v = Grid{0.0, 1.0, 11}.values();
  CHECK(v.size() == 11);
  CHECK(v.front() == 0.0);
  CHECK(v.back() == 1.0);
  CHECK(error_kind([] { Grid{2.0, 2.0, 1}.validate(); }) == ErrorKind::invalid_argument);
  CHECK(error_kind([] { Grid{1.0, 0.0, 5}.validate(); }) == ErrorKind::invalid_argument);
  CHECK(error_kind([] { Grid{0.0, 1.0, 0}.validate(); }) == ErrorKind::invalid_argument);
  CHECK(error_kind([] { Grid{0.0, NAN, 3}.validate(); }) == ErrorKind::invalid_argument);
}

TEST_CASE("figure 1 and 2 anchors") {
  const Table t1 = fig1({1.0, 2.0, 2}, {0.0, 1.0, 2});
  REQUIRE(t1.rows.size() == 4);
  CHECK(t1.columns == std::vector<std::string>{"eta", "zeta", "nu_tilde_minus"});
  CHECK(t1.rows[0][2] == Approx(1.0).epsilon(1e-12));

  const Table t2 = fig2({0.0, 3.0, 31});
  CHECK(t2.rows.front()[1] == Approx(1.0).epsilon(1e-12));
  // Entangled at intermediate separation, separable again far apart.
  double lowest = 1.0;
  for (const auto& row : t2.rows) lowest = std::min(lowest, row[1]);
  CHECK(lowest < 0.7);
  CHECK(t2.rows.back()[1] > 0.98);
}

TEST_CASE("request validation") {
  FigureRequest r = default_request(3);
  CHECK(r.figure == 3);
  CHECK(caption_s(3) == 1.4);
  CHECK(caption_s(8) == 1.8);
  r.figure = 9;
  CHECK(error_kind([&] { r.validate(); }) == ErrorKind::invalid_argument);
  CHECK(error_kind([] { caption_s(2); }) == ErrorKind::invalid_argument);
}

TEST_CASE("negativity curves vanish at large separation") {
  FigureRequest r = default_request(6);
  r.grid = {20.0, 21.0, 2};
  const Table t = run_figure(r);
  CHECK(t.columns == std::vector<std::string>{"alpha_b1_sq", "E_commutative", "E_noncommutative"});
  CHECK(t.rows[0][1] < 1e-6);
  CHECK(t.rows[0][2] < 1e-3);
}

TEST_CASE("figure mode pins alpha theta to the caption") {
  for (int fig : {3, 4, 5}) {
    FigureRequest r = default_request(fig);
    const NCPoint p = nc_point(2.0, r);
    CHECK(p.alpha * r.theta == Approx(caption_s(fig)).epsilon(1e-12));
    CHECK(p.alpha * p.b1 * p.b1 == Approx(2.0).epsilon(1e-12));
    CHECK(p.nu_tilde <= p.nu_tilde_x + 1e-15);
  }
}

TEST_CASE("computed mode hits the requested separation") {
  FigureRequest r = default_request(6);
  r.mode = AlphaMode::computed;
  AlphaMinCache cache;
  for (double u : {0.5, 2.0, 5.0}) {
    const NCPoint p = nc_point(u, r, &cache);
    CHECK(p.alpha * p.b1 * p.b1 == Approx(u).epsilon(1e-6));
    CHECK(p.alpha == Approx(alpha_min_search(r.theta, p.b1)).epsilon(1e-6));
    CHECK(p.e_commutative == Approx(log_negativity(nu_ppt_2d({1.0, std::sqrt(u)}).min())).epsilon(1e-12));
  }
}

TEST_CASE("sweeps are independent of the worker count") {
  FigureRequest r = default_request(4);
  r.grid = {0.0, 4.0, 9};
  setenv("WORKER_COUNT", "1", 1);
  const std::string one = to_csv(run_figure(r));
  setenv("WORKER_COUNT", "3", 1);
  const std::string three = to_csv(run_figure(r));
  unsetenv("WORKER_COUNT");
  CHECK(one == three);
}

TEST_CASE("parallel map keeps order and rethrows") {
  const auto sq = parallel_map(50, [](std::size_t i) { return static_cast<int>(i * i); }, 4);
  for (std::size_t i = 0; i < sq.size(); ++i) CHECK(sq[i] == static_cast<int>(i * i));
  CHECK_THROWS_AS(parallel_map(
                      10,
                      [](std::size_t i) {
                        if (i == 7) throw Error(ErrorKind::search_failed, "boom");
                        return 0;
                      },
                      3),
                  Error);
}

TEST_CASE("serialisation") {
  const Table t{{"a", "b"}, {{1.0, 0.5}, {2.0, 0.25}}};
  const std::string csv = to_csv(t);
  CHECK(csv.rfind("a,b\n", 0) == 0);
  CHECK(csv.find("2.0,0.25") != std::string::npos);
  const std::string json = to_json(t);
  CHECK(json.find("\"columns\"") != std::string::npos);
  const std::string gp = gnuplot_script(default_request(6), "fig6.csv");
  CHECK(gp.find("fig6.csv") != std::string::npos);
}
