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

#include <Eigen/Dense>

#include "ncent/symplectic.hpp"

namespace ncent {

// The six 2x2 blocks of a symmetric two-particle planar variance matrix in
// the particle-blocked order (x(1), p(1), x(2), p(2)), laid out as
//   [[A, B, C, D], [B^T, E, D^T, G], [C, D, A, B], [D^T, G, B^T, E]].
struct PairBlocks {
  Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d B = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d C = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d D = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d E = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d G = Eigen::Matrix2d::Zero();

  const Eigen::Matrix2d& get(char name) const;
};

// Throws invalid_matrix when the layout cannot be symmetric (A, C, E or G
// asymmetric beyond 1e-10).
VarianceMatrix assemble_pair(const PairBlocks& blocks);

// Reads the blocks of the first particle row; assumes the exchange-symmetric
// layout above.
PairBlocks extract_pair(const VarianceMatrix& v);

}  // namespace ncent
