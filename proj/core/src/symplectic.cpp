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

#include "ncent/symplectic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "ncent/error.hpp"

namespace ncent {

namespace {

double scale_of(const Matrix& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

}  // namespace

VarianceMatrix::VarianceMatrix(Matrix m, BasisDescriptor basis)
    : m_(std::move(m)), basis_(std::move(basis)) {
  if (m_.rows() != m_.cols() || static_cast<std::size_t>(m_.rows()) != basis_.size()) {
    throw Error(ErrorKind::invalid_matrix, "matrix dimension does not match basis length");
  }
  if (!m_.allFinite()) {
    throw Error(ErrorKind::invalid_matrix, "matrix has non-finite entries");
  }
  double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol::symmetry * scale_of(m_)) {
    throw Error(ErrorKind::invalid_matrix, "matrix is not symmetric (max deviation " + std::to_string(asym) + ")");
  }
}

double VarianceMatrix::at(const Coord& a, const Coord& b) const {
  int i = basis_.index_of(a);
  int j = basis_.index_of(b);
  if (i < 0 || j < 0) throw Error(ErrorKind::basis_malformed, "coordinate not in basis");
  return m_(i, j);
}

VarianceMatrix VarianceMatrix::permuted(const BasisDescriptor& target) const {
  auto perm = basis_.permutation_to(target);
  const auto n = static_cast<Eigen::Index>(perm.size());
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m_(perm[i], perm[j]);
  return VarianceMatrix(std::move(out), target);
}

SymplecticForm build_omega(const BasisDescriptor& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Matrix omega = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (basis[i].kind != Kind::position) continue;
    int j = basis.conjugate_of(i);
    if (j < 0) throw Error(ErrorKind::basis_malformed, "unpaired coordinate " + basis.label(i));
    omega(i, j) = 1.0;
    omega(j, i) = -1.0;
  }
  return {std::move(omega), basis};
}

SymplecticSpectrum symplectic_spectrum(const VarianceMatrix& v) {
  Matrix omega = build_omega(v.basis()).matrix;
  Eigen::EigenSolver<Matrix> es(2.0 * omega * v.matrix(), false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::invalid_matrix, "eigenvalue computation failed");
  }
  std::vector<double> moduli;
  moduli.reserve(es.eigenvalues().size());
  for (const auto& z : es.eigenvalues()) moduli.push_back(std::abs(z));
  std::sort(moduli.begin(), moduli.end());

  SymplecticSpectrum out;
  for (std::size_t k = 0; k + 1 < moduli.size(); k += 2) {
    double a = moduli[k], b = moduli[k + 1];
    double ref = std::max({a, b, 1e-300});
    if (std::abs(a - b) > tol::pairing * ref) {
      throw Error(ErrorKind::invalid_matrix, "eigenvalue moduli do not pair (" + std::to_string(a) + " vs " +
                                                 std::to_string(b) + ")");
    }
    out.values.push_back(0.5 * (a + b));
  }
  return out;
}

VarianceMatrix partial_transpose(const VarianceMatrix& v, int particle) {
  if (!v.basis().has_particle(particle)) {
    throw Error(ErrorKind::invalid_argument, "unknown particle index " + std::to_string(particle));
  }
  Matrix m = v.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const Coord& c = v.basis()[i];
    if (c.kind == Kind::momentum && c.particle == particle) {
      m.row(i) *= -1.0;
      m.col(i) *= -1.0;
    }
  }
  return VarianceMatrix(std::move(m), v.basis());
}

Physicality is_physical_commutative(const VarianceMatrix& v) {
  double margin = symplectic_spectrum(v).min() - 1.0;
  return {margin >= -tol::physicality, margin};
}

double uncertainty_min_eigenvalue(const VarianceMatrix& v) {
  Matrix omega = build_omega(v.basis()).matrix;
  Eigen::MatrixXcd h = v.matrix().cast<std::complex<double>>();
  h += std::complex<double>(0.0, 0.5) * omega.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_symplectic(const Matrix& s, const BasisDescriptor& basis, double tolerance) {
  if (s.rows() != s.cols() || static_cast<std::size_t>(s.rows()) != basis.size()) return false;
  Matrix omega = build_omega(basis).matrix;
  double dev = (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  return dev <= tolerance * scale * scale;
}

VarianceMatrix symplectic_congruence(const VarianceMatrix& v, const Matrix& s) {
  if (!is_symplectic(s, v.basis())) {
    throw Error(ErrorKind::non_symplectic, "transformation does not preserve the symplectic form");
  }
  Matrix out = s * v.matrix() * s.transpose();
  out = 0.5 * (out + out.transpose());
  return VarianceMatrix(std::move(out), v.basis());
}

Williamson williamson(const VarianceMatrix& v) {
  const BasisDescriptor& basis = v.basis();
  const auto n = static_cast<Eigen::Index>(basis.size());

  // Order each conjugate pair as adjacent (x, p) so that Omega is a direct sum.
  std::vector<int> order;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (basis[i].kind == Kind::position) {
      order.push_back(static_cast<int>(i));
      order.push_back(basis.conjugate_of(i));
    }
  }
  Matrix perm = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) perm(k, order[k]) = 1.0;
  Matrix vi = perm * v.matrix() * perm.transpose();

  Eigen::SelfAdjointEigenSolver<Matrix> es(vi);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
    throw Error(ErrorKind::not_positive_definite, "variance matrix is not positive definite");
  }
  Vector root = es.eigenvalues().cwiseSqrt();
  Matrix half = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
  Matrix half_inv = es.eigenvectors() * root.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();

  Matrix omega = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; k += 2) {
    omega(k, k + 1) = 1.0;
    omega(k + 1, k) = -1.0;
  }
  Matrix kmat = half * omega * half;
  Eigen::RealSchur<Matrix> schur(kmat);
  Matrix u = schur.matrixU();
  const Matrix& t = schur.matrixT();

  Vector d(n);
  for (Eigen::Index k = 0; k < n; k += 2) {
    double dk = 0.5 * (t(k, k + 1) - t(k + 1, k));
    if (dk < 0) {
      u.col(k).swap(u.col(k + 1));
      dk = -dk;
    }
    d(k) = d(k + 1) = dk;
  }
  Matrix si = d.cwiseSqrt().asDiagonal() * u.transpose() * half_inv;

  Williamson out;
  out.s = perm.transpose() * si * perm;
  out.nu.resize(n / 2);
  for (Eigen::Index k = 0; k < n / 2; ++k) out.nu(k) = 2.0 * d(2 * k);
  return out;
}

BlockInvariants block_invariants(const VarianceMatrix& v, AxisPairing pairing, bool transposed) {
  if (v.dim() != 8) throw Error(ErrorKind::invalid_argument, "block invariants need an 8x8 matrix");
  const BasisDescriptor& b = v.basis();
  auto idx = [&](Kind k, int particle, int axis) {
    int i = b.index_of({k, particle, axis});
    if (i < 0) throw Error(ErrorKind::basis_malformed, "basis lacks the declared axis blocks");
    return i;
  };
  auto subsystem = [&](int axis) {
    std::array<int, 4> ids = {idx(Kind::position, 1, axis), idx(Kind::momentum, 1, axis),
                              idx(Kind::position, 2, axis), idx(Kind::momentum, 2, axis)};
    Eigen::Matrix4d s;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s(i, j) = v(ids[i], ids[j]);
    return s;
  };
  Eigen::Matrix4d a = subsystem(pairing.axis_a);
  Eigen::Matrix4d c = subsystem(pairing.axis_b);

  BlockInvariants out{};
  out.det_alpha_a = a.topLeftCorner<2, 2>().determinant();
  out.det_beta_a = a.bottomRightCorner<2, 2>().determinant();
  out.det_gamma_a = a.topRightCorner<2, 2>().determinant();
  out.det_delta_a = a.determinant();
  out.det_alpha_b = c.topLeftCorner<2, 2>().determinant();
  out.det_beta_b = c.bottomRightCorner<2, 2>().determinant();
  out.det_gamma_b = c.topRightCorner<2, 2>().determinant();
  out.det_delta_b = c.determinant();
  double sign = transposed ? -2.0 : 2.0;
  out.delta_x = out.det_alpha_a + out.det_beta_a + sign * out.det_gamma_a;
  out.delta_y = out.det_alpha_b + out.det_beta_b + sign * out.det_gamma_b;
  return out;
}

double branch_eigenvalue(double delta, double det_delta) {
  double disc = std::max(0.0, delta * delta - 4.0 * det_delta);
  double nu2 = 2.0 * delta - 2.0 * std::sqrt(disc);
  if (nu2 < 0.0) {
    throw Error(ErrorKind::invalid_matrix, "negative squared symplectic eigenvalue");
  }
  return std::sqrt(nu2);
}

BranchPair subsystem_branch_eigs(const VarianceMatrix& v, bool transposed) {
  BlockInvariants inv = block_invariants(v, {}, transposed);
  return {branch_eigenvalue(inv.delta_x, inv.det_delta_a), branch_eigenvalue(inv.delta_y, inv.det_delta_b)};
}

bool axes_decoupled(const VarianceMatrix& v, double tolerance) {
  const BasisDescriptor& b = v.basis();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < v.dim(); ++i)
    for (Eigen::Index j = 0; j < v.dim(); ++j)
      if (b[i].axis != b[j].axis) worst = std::max(worst, std::abs(v(i, j)));
  return worst <= tolerance * std::max(1.0, v.matrix().cwiseAbs().maxCoeff());
}

namespace {

// Real form [[X, -Y], [Y, X]] of a random unitary X + iY (quadrature order
// x1..xm, p1..pm).
Matrix random_orthosymplectic(Eigen::Index m, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd z(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) z(i, j) = {g(rng), g(rng)};
  }
  Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(z).householderQ();
  Matrix o(2 * m, 2 * m);
  o << q.real(), -q.imag(), q.imag(), q.real();
  return o;
}

}  // namespace

Matrix random_symplectic(const BasisDescriptor& basis, std::mt19937_64& rng, double max_squeeze) {
  const auto m = static_cast<Eigen::Index>(basis.modes());
  std::uniform_real_distribution<double> r(-max_squeeze, max_squeeze);
  Vector z(2 * m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double e = std::exp(r(rng));
    z(k) = e;
    z(m + k) = 1.0 / e;
  }
  const Matrix s = random_orthosymplectic(m, rng) * z.asDiagonal() * random_orthosymplectic(m, rng);

  Matrix perm = Matrix::Zero(2 * m, 2 * m);
  Eigen::Index mode = 0;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(basis.size()); ++i) {
    if (basis[i].kind != Kind::position) continue;
    perm(i, mode) = 1.0;
    perm(basis.conjugate_of(i), m + mode) = 1.0;
    ++mode;
  }
  return perm * s * perm.transpose();
}

VarianceMatrix random_variance(const BasisDescriptor& basis, std::mt19937_64& rng, double nu_lo, double nu_hi,
                               double max_squeeze) {
  std::uniform_real_distribution<double> u(nu_lo, nu_hi);
  const auto n = static_cast<Eigen::Index>(basis.size());
  Vector d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (basis[i].kind == Kind::position) d(i) = d(basis.conjugate_of(i)) = 0.5 * u(rng);
  }
  const Matrix s = random_symplectic(basis, rng, max_squeeze);
  Matrix v = s * d.asDiagonal() * s.transpose();
  return VarianceMatrix(0.5 * (v + v.transpose()), basis);
}

}  // namespace ncent
