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

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ncent/basis.hpp"

namespace ncent {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace tol {
inline constexpr double symmetry = 1e-12;
inline constexpr double pairing = 1e-9;
inline constexpr double physicality = 1e-9;
inline constexpr double symplectic = 1e-10;
}  // namespace tol

struct SymplecticForm {
  Matrix matrix;
  BasisDescriptor basis;
};

// Real symmetric matrix of symmetrized second moments (hbar = 1), tagged with
// the basis fixing its row order.
class VarianceMatrix {
 public:
  VarianceMatrix(Matrix m, BasisDescriptor basis);

  const Matrix& matrix() const noexcept { return m_; }
  const BasisDescriptor& basis() const noexcept { return basis_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  // Covariance between two labelled coordinates.
  double at(const Coord& a, const Coord& b) const;

  // Same matrix with rows and columns reordered to `target`.
  VarianceMatrix permuted(const BasisDescriptor& target) const;

 private:
  Matrix m_;
  BasisDescriptor basis_;
};

struct SymplecticSpectrum {
  std::vector<double> values;  // ascending

  double min() const { return values.front(); }
  double max() const { return values.back(); }
};

SymplecticForm build_omega(const BasisDescriptor& basis);

// Moduli of the eigenvalues of 2 Omega V, merged pairwise.
SymplecticSpectrum symplectic_spectrum(const VarianceMatrix& v);

// Lambda V Lambda where Lambda flips every momentum of `particle`.
VarianceMatrix partial_transpose(const VarianceMatrix& v, int particle);

struct Physicality {
  bool physical;
  double margin;  // min nu_j - 1
};

Physicality is_physical_commutative(const VarianceMatrix& v);

// Smallest eigenvalue of the Hermitian matrix V + (i/2) Omega. It is
// nonnegative exactly when every nu_j >= 1.
double uncertainty_min_eigenvalue(const VarianceMatrix& v);

bool is_symplectic(const Matrix& s, const BasisDescriptor& basis, double tolerance = tol::symplectic);

VarianceMatrix symplectic_congruence(const VarianceMatrix& v, const Matrix& s);

// S with S V S^T diagonal; the two entries of each conjugate pair equal nu_j / 2.
struct Williamson {
  Matrix s;
  Vector nu;  // in basis order of the position member of each pair
};

Williamson williamson(const VarianceMatrix& v);

struct StandardFormParams {
  double g_a = 0, g_b = 0, g_c = 0, g_d = 0;
  double m_a = 0, m_b = 0, m_c = 0, m_d = 0;
  double q_a = 0, q_b = 0;
};

// Two-particle planar standard form. Input may use any two-particle planar
// basis; it is first permuted into the component-interleaved order.
StandardFormParams standard_form(const VarianceMatrix& v);
VarianceMatrix assemble_standard_form(const StandardFormParams& p);

struct AxisPairing {
  int axis_a = 1;
  int axis_b = 2;
};

struct BlockInvariants {
  double det_alpha_a, det_alpha_b;
  double det_beta_a, det_beta_b;
  double det_gamma_a, det_gamma_b;
  double det_delta_a, det_delta_b;
  double delta_x, delta_y;
};

// With `transposed`, the Delta combinations use -2 det gamma, which equals
// evaluating them on the partially transposed matrix.
BlockInvariants block_invariants(const VarianceMatrix& v, AxisPairing pairing = {},
                                 bool transposed = false);

// sqrt(2 Delta - 2 sqrt(Delta^2 - 4 det delta)).
double branch_eigenvalue(double delta, double det_delta);

struct BranchPair {
  double x;
  double y;

  double min() const { return x < y ? x : y; }
};

// Smaller symplectic eigenvalue of each axis subsystem. Exact when the two
// axis subsystems decouple.
BranchPair subsystem_branch_eigs(const VarianceMatrix& v, bool transposed = false);

// Random symplectic matrix for `basis`: orthogonal symplectic, single-mode
// squeezing with |log r| <= max_squeeze, orthogonal symplectic.
Matrix random_symplectic(const BasisDescriptor& basis, std::mt19937_64& rng, double max_squeeze = 1.0);

// S diag(nu / 2) S^T with every nu drawn from [nu_lo, nu_hi].
VarianceMatrix random_variance(const BasisDescriptor& basis, std::mt19937_64& rng, double nu_lo, double nu_hi,
                               double max_squeeze = 1.0);

bool axes_decoupled(const VarianceMatrix& v, double tolerance = 1e-12);

}  // namespace ncent
