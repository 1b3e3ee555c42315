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

#include "ncent/pair_blocks.hpp"
#include "ncent/symplectic.hpp"

namespace ncent {

// Symmetrized 1D pair of Gaussians with spreads alpha, beta and relative
// momentum scale p0.
struct Pair1DParams {
  double alpha = 1.0;
  double beta = 1.0;
  double p0 = 0.0;

  static Pair1DParams from_reduced(double eta, double zeta, double beta = 1.0);
  void validate() const;
  double eta() const { return alpha / beta; }
  double zeta() const { return p0 * p0 / beta; }
  double norm_sq() const;
};

VarianceMatrix variance_1d_pair(const Pair1DParams& params);

// Closed form in (eta, zeta) for the published minus branch.
double nu_ppt_1d_closed(double eta, double zeta);

struct Pair1DBranches {
  double minus;     // 2 sqrt((v11 - v13)(v22 + v24))
  double plus;      // 2 sqrt((v11 + v13)(v22 - v24))
  double pipeline;  // min symplectic eigenvalue of the transposed matrix
};

Pair1DBranches nu_ppt_1d_branches(const Pair1DParams& params);

// Smaller branch; throws consistency when it disagrees with the pipeline.
double nu_ppt_1d(const Pair1DParams& params);

// Symmetrized planar pair separated along x by a1 (a2 = 0).
struct Pair2DParams {
  double alpha = 1.0;
  double a1 = 0.0;

  void validate() const;
  double u() const { return alpha * a1 * a1; }
  double norm_sq() const;
};

PairBlocks blocks_2d_pair(const Pair2DParams& params);
VarianceMatrix variance_2d_pair(const Pair2DParams& params);

// Closed forms: nu_y is identically 1.
BranchPair nu_ppt_2d(const Pair2DParams& params);
BranchPair nu_ppt_2d_pipeline(const Pair2DParams& params);

// max(0, -log2 nu).
double log_negativity(double nu_min);

}  // namespace ncent
