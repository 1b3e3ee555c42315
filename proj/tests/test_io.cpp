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

#include <cstdio>
#include <random>

#include "helpers.hpp"
#include "ncent/io.hpp"
#include "ncent/symplectic.hpp"

using namespace ncent;

TEST_CASE("csv and json round trip exactly") {
  std::mt19937_64 rng(1);
  const VarianceMatrix v = random_variance(bases::particle_blocked_pair(), rng, 1.0, 3.0);
  const VarianceMatrix c = io::from_csv(io::to_csv(v));
  const VarianceMatrix j = io::from_json(io::to_json(v));
  CHECK(c.basis() == v.basis());
  CHECK(j.basis() == v.basis());
  CHECK(c.matrix() == v.matrix());
  CHECK(j.matrix() == v.matrix());
  CHECK(io::parse_variance(io::to_json(v)).matrix() == v.matrix());
  CHECK(io::parse_variance(io::to_csv(v)).matrix() == v.matrix());
}

TEST_CASE("csv header and comments") {
  const VarianceMatrix v = io::from_csv("# vacuum\nx1@1,p1@1\n0.5,0\n0,0.5\n");
  CHECK(v(0, 0) == 0.5);
  CHECK(v.basis() == bases::single_mode());
  CHECK(io::to_csv(v).rfind("x1@1,p1@1\n", 0) == 0);
}

TEST_CASE("malformed input") {
  CHECK(error_kind([] { io::from_csv("x1@1,p1@1\n0.5,abc\n0,0.5\n"); }) == ErrorKind::parse);
  CHECK(error_kind([] { io::from_csv("x1@1,p1@1\n0.5,0\n"); }) == ErrorKind::parse);
  CHECK(error_kind([] { io::from_csv("x1@1,p1@1\n0.5,0,1\n0,0.5\n"); }) == ErrorKind::parse);
  CHECK(error_kind([] { io::from_json("{\"basis\": [\"x1@1\"], \"matrix\": [[1]]}"); }) ==
        ErrorKind::basis_malformed);
  CHECK(error_kind([] { io::from_json("{\"basis\": 3}"); }) == ErrorKind::parse);
  CHECK(error_kind([] { io::from_json("not json"); }) == ErrorKind::parse);
  CHECK(error_kind([] { io::from_csv("x1@1,p1@1\n0.5,0.1\n0,0.5\n"); }) == ErrorKind::invalid_matrix);
  CHECK(error_kind([] { io::load_variance("/nonexistent/file.csv"); }) == ErrorKind::parse);
}

TEST_CASE("file round trip") {
  const VarianceMatrix v(Matrix::Identity(4, 4) * 0.75, bases::two_mode());
  const std::string path = "ncent_io_test.json";
  io::save_variance(path, v, io::Format::json);
  CHECK(io::load_variance(path).matrix() == v.matrix());
  std::remove(path.c_str());
}

TEST_CASE("number formatting") {
  CHECK(io::format_sig(1.0) == "1.0");
  CHECK(io::format_sig(-0.2) == "-0.2");
  CHECK(io::format_sig(0.67979199558395) == "0.679791995584");
  CHECK(io::format_sig(1e-20) == "1e-20");
  CHECK(std::stod(io::format_exact(0.1 + 0.2)) == 0.1 + 0.2);
}
