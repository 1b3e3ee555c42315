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

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ncent/error.hpp"
#include "ncent/nc_bipartite.hpp"
#include "ncent/nc_kinematics.hpp"

namespace ncent::oracle {

// Single-particle factor acting in momentum space: xbar_i = i d/dp_i -
// theta eps_ij p_j / 2, or multiplication by p_i. Axes are 1-based.
struct Factor {
  enum Type { x, p } type;
  int axis;
};

// Product of at most two factors; the last one acts first. With `symmetrize`
// a two-factor product is replaced by (AB + BA) / 2.
struct MomentumOperatorSpec {
  std::vector<Factor> factors;
  bool symmetrize = false;

  static MomentumOperatorSpec identity() { return {}; }
  static MomentumOperatorSpec x(int axis) { return {{{Factor::x, axis}}, false}; }
  static MomentumOperatorSpec p(int axis) { return {{{Factor::p, axis}}, false}; }
  static MomentumOperatorSpec product(Factor a, Factor b, bool symmetrize = false) { return {{a, b}, symmetrize}; }

  void validate() const;
  MomentumOperatorSpec adjoint() const;
};

struct QuadratureConfig {
  int order = 64;        // Gauss-Hermite nodes per axis
  double extent = 8.0;   // node cutoff in units of sqrt(alpha)
  void validate() const;
};

// |v(2n) - v(n)| / max(|v(2n)|, 1) must stay below this.
inline constexpr double kConvergenceTolerance = 1e-8;

// Entries of the quadrature covariance below this fraction of its largest
// entry (unit floor) are reported as exact zeros by the block checks.
inline constexpr double kZeroResolution = 1e-13;

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double delta)
      : Error(ErrorKind::convergence, what), delta_(delta) {}
  double delta() const { return delta_; }

 private:
  double delta_;
};

// <Phi| (A x B) F^-2 tau |Phi> with Phi = psi1 x psi2, as a 4D tensor
// quadrature. Gated on order vs 2 * order.
std::complex<double> twisted_expectation(const MomentumOperatorSpec& a, const MomentumOperatorSpec& b,
                                         const NCPairParams& params, const QuadratureConfig& cfg = {});

// Same quantity with the inner 2D integral done in closed form as a Fourier
// transform of polynomial times Gaussian. Ungated.
std::complex<double> twisted_expectation_fourier(const MomentumOperatorSpec& a, const MomentumOperatorSpec& b,
                                                 const NCPairParams& params, const QuadratureConfig& cfg = {});

// <psi| A |psi> for a single packet. Gated.
std::complex<double> direct_moment(const MomentumOperatorSpec& a, const WavePacketParams& packet,
                                   const QuadratureConfig& cfg = {});

// N^2 from the overlap: 1 / (2 (1 + Re <(I x I) F^-2 tau>)).
double normalization(const NCPairParams& params, const QuadratureConfig& cfg = {});

// First and second moments of the dressed NC coordinates of the pair state,
// basis (x1@1, x2@1, p1@1, p2@1, x1@2, x2@2, p1@2, p2@2).
struct StateMoments {
  Eigen::Matrix<double, 8, 8> covariance;
  Eigen::Matrix<double, 8, 1> mean;
  double norm_sq = 0.0;   // N^2 from the quadrature overlap
  double max_imag = 0.0;  // largest imaginary part among the second moments
  double delta = 0.0;     // order-doubling change, relative with unit floor
  bool converged = false;
};

// Throws ConvergenceError when the gate fails.
StateMoments state_moments(const NCPairParams& params, const QuadratureConfig& cfg = {});
// Same computation without the gate; `converged` records the outcome.
StateMoments state_moments_unchecked(const NCPairParams& params, const QuadratureConfig& cfg = {});

struct BlockCheck {
  char block;  // one of A B C D E G
  int i, j;    // 1-based
  NCPairParams params;
  double oracle;
  double closed_form;
  double rel_error;
  bool converged;
};

// |oracle - closed| / max(|closed|, 1e-12) for one entry.
double verify_block(const NCPairParams& params, char block, int i, int j, const QuadratureConfig& cfg = {});

// All 24 entries (six blocks, full 2x2) from one moment evaluation.
std::vector<BlockCheck> verify_blocks(const NCPairParams& params, const QuadratureConfig& cfg = {});

std::string report_json(const std::vector<BlockCheck>& checks);

}  // namespace ncent::oracle
