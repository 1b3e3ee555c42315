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

// Alternating symbol with eps(0,1) = +1.
inline Eigen::Matrix2d epsilon() {
  Eigen::Matrix2d e;
  e << 0.0, 1.0, -1.0, 0.0;
  return e;
}

struct NCPlaneParams {
  double theta = 0.0;

  void validate() const;
};

// Gaussian packet in momentum space centred on p0/2, mean position a.
struct WavePacketParams {
  double alpha = 1.0;
  Eigen::Vector2d a = Eigen::Vector2d::Zero();
  Eigen::Vector2d p0 = Eigen::Vector2d::Zero();
  double theta = 0.0;

  void validate() const;
  // b_i = a_i + theta eps_ik p0_k / 4
  Eigen::Vector2d b() const { return a + 0.25 * theta * epsilon() * p0; }
};

// 4x4 map from NC coordinates (xbar1, xbar2, p1, p2) to commuting ones.
Eigen::Matrix4d m_transform(double theta);

// Single-particle variance in the planar basis (x1, x2, p1, p2).
VarianceMatrix single_particle_nc_variance(const WavePacketParams& packet);

// M V M^T, built from the basis labels so any planar ordering works; each
// particle's positions pick up (theta/2) eps p of the same particle.
Matrix effective_transform(const BasisDescriptor& basis, double theta);
VarianceMatrix nc_to_effective(const VarianceMatrix& vbar, double theta);

struct Uncertainties {
  double xx;  // Delta x1 Delta x2
  double xp;  // Delta x Delta p
};

Uncertainties uncertainties(const WavePacketParams& packet);

struct UncertaintyMinimum {
  double alpha0;
  double min_xx;
};

// Numerical minimum of xx over alpha, searched on log alpha.
UncertaintyMinimum minimize_xx_uncertainty(double theta);

// Smallest symplectic eigenvalue of the partially transposed effective
// matrix, each axis treated as one mode.
double single_particle_ppt(const WavePacketParams& packet);

}  // namespace ncent
