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

#include <cmath>

#include "helpers.hpp"
#include "ncent/commutative.hpp"
#include "ncent/nc_kinematics.hpp"
#include "ncent/oracle.hpp"

using namespace ncent;
using namespace ncent::oracle;
using doctest::Approx;

namespace {

using Spec = MomentumOperatorSpec;

double overlap(double alpha, double theta, double b1) {
  const double q = alpha * alpha * theta * theta + 4.0;
  return 4.0 / q * std::exp(-8.0 * alpha * b1 * b1 / q);
}

}  // namespace

TEST_CASE("identity overlaps") {
  const auto same = twisted_expectation(Spec::identity(), Spec::identity(), NCPairParams::figure(1.0, 0.0, 0.0));
  CHECK(same.real() == Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(same.imag()) < 1e-14);
  for (auto [al, th, b1] : {std::tuple{1.0, 1.4, 0.0}, {1.0, 1.4, 1.0}, {2.0, 0.5, 0.8}, {0.7, 2.0, 1.5}}) {
    const auto t = twisted_expectation(Spec::identity(), Spec::identity(), NCPairParams::figure(al, th, b1));
    CHECK(t.real() == Approx(overlap(al, th, b1)).epsilon(1e-10));
    const NCPairParams p = NCPairParams::figure(al, th, b1);
    CHECK(oracle::normalization(p) == Approx(ncent::normalization(p)).epsilon(1e-8));
  }
}

TEST_CASE("single packet moments") {
  const WavePacketParams w{1.3, {0.4, -0.7}, {0.6, 0.2}, 0.9};
  CHECK(direct_moment(Spec::x(1), w).real() == Approx(0.4).epsilon(1e-12));
  CHECK(direct_moment(Spec::x(2), w).real() == Approx(-0.7).epsilon(1e-12));
  CHECK(direct_moment(Spec::p(1), w).real() == Approx(0.3).epsilon(1e-12));
  CHECK(direct_moment(Spec::p(2), w).real() == Approx(0.1).epsilon(1e-12));
  const WavePacketParams still{1.3, {0.4, -0.7}, {0.0, 0.0}, 0.9};
  const Spec pp = Spec::product({Factor::p, 1}, {Factor::p, 1});
  CHECK(direct_moment(pp, still).real() == Approx(0.65).epsilon(1e-12));
  // Second moment of xbar_1 matches the single-particle variance.
  const Spec xx = Spec::product({Factor::x, 1}, {Factor::x, 1});
  const double var = direct_moment(xx, still).real() - 0.16;
  CHECK(var == Approx(single_particle_nc_variance(still).matrix()(0, 0)).epsilon(1e-10));
}

TEST_CASE("twisted momentum insertion matches the closed form") {
  // b = 0, p0 = 0, s = 1: <(p1 p1 x I) F^-2 tau> rebuilds the E11 overlap term.
  const NCPairParams p = NCPairParams::figure(1.0, 1.0, 0.0);
  const auto t = twisted_expectation(Spec::product({Factor::p, 1}, {Factor::p, 1}), Spec::identity(), p);
  const double n2 = ncent::normalization(p);
  // E11 = N^2 (2 <p1 p1> + 2 Re T) with <p1 p1> = alpha / 2.
  CHECK(n2 * (2 * 0.5 + 2 * t.real()) == Approx(nc_blocks(p).E(0, 0)).epsilon(1e-10));
  CHECK(std::abs(t.imag()) < 1e-12);
}

TEST_CASE("direct and Fourier routes agree") {
  const NCPairParams p = NCPairParams::figure(1.2, 0.9, 0.6);
  NCPairParams g = p;
  g.p0 = {0.3, -0.2};
  g.a = {0.6, 0.25};
  const std::vector<std::pair<Spec, Spec>> pairs = {
      {Spec::identity(), Spec::identity()},
      {Spec::x(1), Spec::identity()},
      {Spec::x(2), Spec::p(1)},
      {Spec::p(2), Spec::x(1)},
      {Spec::product({Factor::x, 1}, {Factor::x, 2}, true), Spec::identity()},
      {Spec::product({Factor::x, 1}, {Factor::p, 2}), Spec::x(2)},
  };
  for (const NCPairParams& q : {p, g}) {
    for (const auto& [a, b] : pairs) {
      const auto d = twisted_expectation(a, b, q), f = twisted_expectation_fourier(a, b, q);
      CHECK(std::abs(d - f) <= 1e-7 * std::max(1e-3, std::abs(d)));
    }
  }
}

TEST_CASE("symmetrized observables have real expectations") {
  for (const NCPairParams& p : {NCPairParams::figure(1.0, 1.4, 0.0), NCPairParams::figure(1.0, 2.0, 1.0)}) {
    const StateMoments m = state_moments(p);
    CHECK(m.max_imag < 1e-9);
    CHECK(m.converged);
    CHECK(m.covariance.isApprox(m.covariance.transpose(), 1e-12));
  }
}

TEST_CASE("block checks") {
  // theta = 0 against the commutative pair.
  const NCPairParams c = NCPairParams::figure(1.0, 0.0, 0.0);
  CHECK(verify_block(c, 'E', 1, 1) < 1e-8);
  CHECK(verify_block(NCPairParams::figure(1.0, 0.0, 0.9), 'A', 1, 1) < 1e-8);
  const StateMoments m = state_moments(NCPairParams::figure(1.0, 0.0, 0.9));
  CHECK(m.covariance(0, 0) == Approx(blocks_2d_pair({1.0, 0.9}).A(0, 0)).epsilon(1e-10));

  CHECK(verify_block(NCPairParams::figure(1.4, 1.0, std::sqrt(1.0 / 1.4)), 'G', 1, 2) < 1e-6);
  for (const BlockCheck& b : verify_blocks(NCPairParams::figure(1.0, 1.4, 1.0))) {
    CHECK(b.rel_error < 1e-6);
    CHECK(b.converged);
  }
  CHECK(error_kind([] { verify_block(NCPairParams::figure(1.0, 1.0, 0.0), 'F', 1, 1); }) ==
        ErrorKind::invalid_argument);
  CHECK(error_kind([] { verify_block(NCPairParams::figure(1.0, 1.0, 0.0), 'A', 3, 1); }) ==
        ErrorKind::invalid_argument);
}

TEST_CASE("general regime blocks agree with the corrected closed forms") {
  NCPairParams g;
  g.alpha = 0.9;
  g.theta = 1.3;
  g.a = {0.5, 0.3};
  g.p0 = {0.4, 0.2};
  for (const BlockCheck& b : verify_blocks(g)) CHECK(std::abs(b.oracle - b.closed_form) < 1e-10);
}

TEST_CASE("report json") {
  const auto checks = verify_blocks(NCPairParams::figure(1.0, 0.5, 0.0));
  const std::string j = report_json(checks);
  CHECK(checks.size() == 24);
  for (const char* key : {"\"block\"", "\"params\"", "\"oracle\"", "\"closed_form\"", "\"rel_error\"", "\"converged\""}) {
    CHECK(j.find(key) != std::string::npos);
  }
}

TEST_CASE("configuration and gate") {
  CHECK(error_kind([] { QuadratureConfig{8, 8.0}.validate(); }) == ErrorKind::invalid_argument);
  CHECK(error_kind([] { Spec{{{Factor::x, 1}, {Factor::x, 1}, {Factor::x, 1}}, false}.validate(); }) ==
        ErrorKind::invalid_argument);
  // A strongly oscillating twist at the lowest order does not converge.
  const NCPairParams hard = NCPairParams::figure(1.0, 30.0, 0.0);
  bool refused = false;
  try {
    state_moments(hard, QuadratureConfig{16, 8.0});
  } catch (const ConvergenceError& e) {
    refused = true;
    CHECK(e.delta() > kConvergenceTolerance);
  }
  CHECK(refused);
  CHECK_FALSE(state_moments_unchecked(hard, QuadratureConfig{16, 8.0}).converged);
}

TEST_CASE("adjoint reverses the factors") {
  const Spec a = Spec::product({Factor::x, 1}, {Factor::p, 2});
  const Spec d = a.adjoint();
  CHECK(d.factors[0].type == Factor::p);
  CHECK(d.factors[1].type == Factor::x);
}
