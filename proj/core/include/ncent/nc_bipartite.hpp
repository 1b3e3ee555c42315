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

#include <map>
#include <shared_mutex>
#include <utility>

#include <Eigen/Dense>

#include "ncent/nc_kinematics.hpp"
#include "ncent/pair_blocks.hpp"
#include "ncent/symplectic.hpp"

namespace ncent {

// Twisted two-particle state on the NC plane built from the packet pair
// psi1(a, p0) and psi2(-a, -p0).
struct NCPairParams {
  double alpha = 1.0;
  double theta = 0.0;
  Eigen::Vector2d a = Eigen::Vector2d::Zero();
  Eigen::Vector2d p0 = Eigen::Vector2d::Zero();

  // p0 = 0, a = (b1, 0).
  static NCPairParams figure(double alpha, double theta, double b1);

  void validate() const;
  Eigen::Vector2d b() const { return a + 0.25 * theta * epsilon() * p0; }
  double s() const { return alpha * theta; }
  double u() const { return alpha * b().squaredNorm(); }
  bool in_figure_regime() const;
  WavePacketParams packet1() const;
  WavePacketParams packet2() const;
};

using NCBlocks = PairBlocks;
using EffectiveBlocks = PairBlocks;

double normalization(const NCPairParams& params);  // N^2

NCBlocks nc_blocks(const NCPairParams& params);
VarianceMatrix assemble_nc_variance(const NCBlocks& blocks);

// Block-level map to commuting coordinates; cross-checked against the M2
// congruence and throws consistency on mismatch beyond 1e-10.
EffectiveBlocks effective_blocks(const NCBlocks& blocks, double theta);
VarianceMatrix effective_variance(const NCPairParams& params);

// Smaller symplectic eigenvalue of each axis subsystem of the effective
// matrix (figure regime only).
BranchPair physicality_branch_eigs(const NCPairParams& params);
// Same for the partial transpose on particle 2.
BranchPair ppt_branch_eigs(const NCPairParams& params);

// Full-spectrum minima; valid in any regime.
double physical_spectrum_min(const NCPairParams& params);
double ppt_spectrum_min(const NCPairParams& params);

// Printed closed forms for the branch eigenvalues, with the general N^2.
BranchPair transcribed_physicality_branch_eigs(const NCPairParams& params);
BranchPair transcribed_ppt_branch_eigs(const NCPairParams& params);

struct ClosedFormComparison {
  BranchPair pipeline_phys, transcribed_phys;
  BranchPair pipeline_ppt, transcribed_ppt;
  double max_rel_dev;
};

ClosedFormComparison compare_closed_forms(const NCPairParams& params);
// Throws consistency when max_rel_dev exceeds `tolerance`.
void check_closed_forms(const NCPairParams& params, double tolerance = 1e-9);

// Minimizer over alpha of A11 A22 of the effective matrix at fixed theta, b1.
double alpha_min_search(double theta, double b1);

// Thread-safe memo for alpha_min_search keyed by (theta, b1).
class AlphaMinCache {
 public:
  double get(double theta, double b1);

 private:
  std::shared_mutex mu_;
  std::map<std::pair<double, double>, double> memo_;
};

// min branch at alpha_min; exactly 1 at theta = 0.
double nu_min_theta(double theta, double b1, AlphaMinCache* cache = nullptr);

// b1 such that alpha_min(theta, b1) b1^2 = u.
double b1_for_reduced_separation(double theta, double u, AlphaMinCache* cache = nullptr);

struct Verdict {
  bool entangled;
  double margin;  // nu_min^2 - nu_tilde^2
  double nu_tilde;
  double nu_min;
};

inline constexpr double kVerdictDeadBand = 1e-9;

Verdict verdict_from(double nu_tilde, double nu_min);
Verdict entanglement_verdict(const NCPairParams& params, AlphaMinCache* cache = nullptr);

// max(0, -log2(nu_tilde^2 - nu_min^2 + 1) / 2).
double shifted_log_negativity(double nu_tilde, double nu_min);
double log_negativity_nc(const NCPairParams& params, AlphaMinCache* cache = nullptr);

}  // namespace ncent
