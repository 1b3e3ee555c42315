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
#include <random>

#include "helpers.hpp"
#include "ncent/commutative.hpp"
#include "ncent/nc_bipartite.hpp"

using namespace ncent;
using doctest::Approx;

TEST_CASE("normalization") {
  CHECK(normalization(NCPairParams::figure(1.0, 1.4, 0.0)) == Approx(0.2991967871).epsilon(1e-9));
  // Far apart the overlap vanishes.
  CHECK(normalization(NCPairParams::figure(1.0, 1.4, 20.0)) == Approx(0.5).epsilon(1e-12));
  // Commutative coincident packets: N^-2 = 2 (1 + 1).
  CHECK(normalization(NCPairParams::figure(2.0, 0.0, 0.0)) == Approx(0.25));
}

TEST_CASE("figure regime blocks") {
  const NCBlocks z = nc_blocks(NCPairParams::figure(1.0, 1.4, 0.0));
  CHECK(z.A(0, 0) == Approx(0.8592488073).epsilon(1e-9));
  CHECK(z.A(0, 0) == Approx(z.A(1, 1)).epsilon(1e-14));
  CHECK(z.A(0, 1) == 0.0);
  CHECK(z.B(0, 1) == Approx(-0.3037748309).epsilon(1e-9));
  CHECK(z.B(1, 0) == Approx(-z.B(0, 1)).epsilon(1e-14));
  CHECK(z.B(0, 0) == 0.0);
  CHECK(z.E(0, 0) == Approx(0.4339640441).epsilon(1e-9));

  const NCBlocks b = nc_blocks(NCPairParams::figure(1.0, 1.4, 0.5));
  CHECK(b.A(0, 0) == Approx(1.0593001615).epsilon(1e-9));
  CHECK(b.A(1, 1) == Approx(0.8665455969).epsilon(1e-9));
  CHECK(b.B(0, 1) == Approx(-0.3211425219).epsilon(1e-9));
  CHECK(b.B(1, 0) == Approx(0.2871211353).epsilon(1e-9));
  CHECK(b.C(0, 0) == Approx(-0.1630155288).epsilon(1e-9));
  CHECK(b.C(1, 1) == Approx(0.0178909053).epsilon(1e-9));
  CHECK(b.D(0, 1) == Approx(-0.0084629504).epsilon(1e-8));
  CHECK(b.D(1, 0) == Approx(0.0255584362).epsilon(1e-9));
  CHECK(b.E(0, 0) == Approx(0.4101730504).epsilon(1e-9));
  CHECK(b.E(1, 1) == Approx(0.4587750312).epsilon(1e-9));
  CHECK(b.G(0, 0) == Approx(0.0365120517).epsilon(1e-9));
  CHECK(b.G(1, 1) == Approx(0.0120899291).epsilon(1e-9));
  for (char k : {'A', 'C', 'E', 'G'}) CHECK(std::abs(b.get(k)(0, 1) - b.get(k)(1, 0)) < 1e-14);
}

TEST_CASE("assembled matrix is symmetric") {
  NCPairParams g;
  g.alpha = 0.8;
  g.theta = 1.1;
  g.a = {0.4, -0.3};
  g.p0 = {0.5, 0.2};
  const VarianceMatrix v = assemble_nc_variance(nc_blocks(g));
  CHECK(v.matrix() == v.matrix().transpose());
  PairBlocks bad = nc_blocks(g);
  bad.A(0, 1) += 1e-6;
  CHECK(error_kind([&] { assemble_nc_variance(bad); }) == ErrorKind::invalid_matrix);
}

TEST_CASE("zero cross blocks give a product matrix") {
  PairBlocks p;
  p.A = Eigen::Matrix2d::Identity();
  p.E = Eigen::Matrix2d::Identity();
  const Matrix m = assemble_nc_variance(p).matrix();
  CHECK(m.block(0, 4, 4, 4).isZero(0.0));
}

TEST_CASE("theta zero blocks equal the 2D commutative pair") {
  for (double b1 : {0.0, 0.3, 1.2}) {
    const NCBlocks n = nc_blocks(NCPairParams::figure(1.3, 0.0, b1));
    const PairBlocks c = blocks_2d_pair({1.3, b1});
    for (char k : {'A', 'B', 'C', 'D', 'E', 'G'}) CHECK((n.get(k) - c.get(k)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("block map matches the congruence") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> al(0.2, 3.0), th(0.0, 2.5), b(0.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const NCPairParams p = NCPairParams::figure(al(rng), th(rng), b(rng));
    const EffectiveBlocks e = effective_blocks(nc_blocks(p), p.theta);
    const Matrix cong = nc_to_effective(assemble_nc_variance(nc_blocks(p)), p.theta).matrix();
    CHECK((assemble_pair(e).matrix() - cong).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(e.E == nc_blocks(p).E);
    CHECK(e.G == nc_blocks(p).G);
  }
  const NCBlocks z = nc_blocks(NCPairParams::figure(1.0, 0.0, 0.7));
  const EffectiveBlocks same = effective_blocks(z, 0.0);
  for (char k : {'A', 'B', 'C', 'D', 'E', 'G'}) CHECK(same.get(k) == z.get(k));
}

TEST_CASE("branch eigenvalues from the pipeline") {
  const NCPairParams p = NCPairParams::figure(1.0, 1.4, 0.0);
  const BranchPair phys = physicality_branch_eigs(p), ppt = ppt_branch_eigs(p);
  CHECK(phys.x == Approx(1.0594412479).epsilon(1e-9));
  CHECK(phys.x == Approx(phys.y).epsilon(1e-12));
  CHECK(ppt.x == Approx(phys.x).epsilon(1e-12));

  // Full-spectrum minima agree with the branches when the axes decouple.
  const NCPairParams q = NCPairParams::figure(1.0, 1.4, 1.0);
  CHECK(physical_spectrum_min(q) == Approx(physicality_branch_eigs(q).min()).epsilon(1e-10));
  CHECK(ppt_spectrum_min(q) == Approx(ppt_branch_eigs(q).min()).epsilon(1e-10));
  CHECK(physical_spectrum_min(q) == Approx(1.1607717453).epsilon(1e-9));
  CHECK(ppt_spectrum_min(q) == Approx(0.9831371216).epsilon(1e-9));

  // Far separation: nu_x^2 -> 1 + s^2 / 4, the single-packet value.
  const NCPairParams far = NCPairParams::figure(1.0, 1.4, 30.0);
  CHECK(physicality_branch_eigs(far).x * physicality_branch_eigs(far).x == Approx(1.0 + 0.25 * 1.96).epsilon(1e-9));

  NCPairParams g = q;
  g.p0 = {0.1, 0.0};
  CHECK(error_kind([&] { ppt_branch_eigs(g); }) == ErrorKind::invalid_argument);
}

TEST_CASE("printed closed forms are exposed with their deviation") {
  const NCPairParams p = NCPairParams::figure(1.0, 1.4, 0.0);
  const BranchPair t = transcribed_ppt_branch_eigs(p);
  CHECK(t.x * t.x == Approx(1.8606489407).epsilon(1e-9));
  const ClosedFormComparison c = compare_closed_forms(p);
  CHECK(c.pipeline_ppt.x * c.pipeline_ppt.x == Approx(1.1224157577).epsilon(1e-9));
  CHECK(c.max_rel_dev > 0.2);
  CHECK(error_kind([&] { check_closed_forms(p); }) == ErrorKind::consistency);
}

TEST_CASE("alpha_min search") {
  CHECK(alpha_min_search(1.0, 0.0) == Approx(2.1002619362).epsilon(1e-7));
  CHECK(alpha_min_search(2.0, 0.0) == Approx(1.0501309587).epsilon(1e-7));
  CHECK(alpha_min_search(1.0, 1.0) == Approx(1.9392488844).epsilon(1e-7));
  CHECK(error_kind([] { alpha_min_search(0.0, 1.0); }) == ErrorKind::invalid_argument);

  AlphaMinCache cache;
  CHECK(cache.get(1.0, 0.5) == alpha_min_search(1.0, 0.5));
  CHECK(cache.get(1.0, 0.5) == cache.get(1.0, 0.5));

  const double b1 = b1_for_reduced_separation(1.0, 1.0, &cache);
  CHECK(b1 == Approx(0.7194423314).epsilon(1e-7));
  CHECK(cache.get(1.0, b1) * b1 * b1 == Approx(1.0).epsilon(1e-7));
  CHECK(b1_for_reduced_separation(1.0, 0.0) == 0.0);
}

TEST_CASE("nu_min and verdict") {
  CHECK(nu_min_theta(0.0, 1.0) == 1.0);
  CHECK(nu_min_theta(1.0, 0.0) == Approx(1.2049965787).epsilon(1e-8));

  const Verdict v = verdict_from(0.9, 1.0);
  CHECK(v.entangled);
  CHECK(v.margin == Approx(0.19));
  CHECK_FALSE(verdict_from(1.0, 1.0).entangled);
  CHECK_FALSE(verdict_from(1.0, 1.0 + 1e-12).entangled);

  // theta = 0 reduces to the commutative PPT test.
  for (double b1 : {0.0, 0.5, 1.0}) {
    const Verdict w = entanglement_verdict(NCPairParams::figure(1.0, 0.0, b1));
    const double c = nu_ppt_2d({1.0, b1}).min();
    CHECK(w.nu_min == 1.0);
    CHECK(w.entangled == (c < 1.0 - kVerdictDeadBand));
    CHECK(log_negativity_nc(NCPairParams::figure(1.0, 0.0, b1)) == Approx(log_negativity(c)).epsilon(1e-12));
  }
}

TEST_CASE("shifted log negativity") {
  CHECK(shifted_log_negativity(1.2, 1.2) == Approx(0.0).epsilon(1e-14));
  CHECK(shifted_log_negativity(1.0, 1.2) == Approx(-0.5 * std::log2(1.0 - 0.44)));
  CHECK(shifted_log_negativity(1.5, 1.2) == 0.0);
  CHECK(error_kind([] { shifted_log_negativity(0.5, 1.5); }) == ErrorKind::consistency);
}
