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

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "ncent/error.hpp"
#include "ncent/symplectic.hpp"

namespace ncent {

namespace {

using Mat2 = Eigen::Matrix2d;

bool is_scaled_identity(const Mat2& m, double tol) {
  return std::abs(m(0, 0) - m(1, 1)) <= tol && std::abs(m(0, 1)) <= tol && std::abs(m(1, 0)) <= tol;
}

bool is_diagonal(const Mat2& m, double tol) { return std::abs(m(0, 1)) <= tol && std::abs(m(1, 0)) <= tol; }

BasisDescriptor local_basis() {
  return BasisDescriptor({{Kind::position, 1, 1}, {Kind::momentum, 1, 1},
                          {Kind::position, 1, 2}, {Kind::momentum, 1, 2}});
}

// Proper rotations U, W with U^T g W diagonal; entries may be negative.
void signed_svd(const Mat2& g, Mat2& u, Mat2& w) {
  Eigen::JacobiSVD<Mat2> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  u = svd.matrixU();
  w = svd.matrixV();
  if (u.determinant() < 0) u.col(1) *= -1.0;
  if (w.determinant() < 0) w.col(1) *= -1.0;
}

}  // namespace

StandardFormParams standard_form(const VarianceMatrix& v) {
  if (v.dim() != 8) throw Error(ErrorKind::invalid_argument, "standard form needs an 8x8 matrix");
  VarianceMatrix vi = v.permuted(bases::component_interleaved_pair());
  Matrix m = vi.matrix();
  if (Eigen::LLT<Matrix>(m).info() != Eigen::Success) {
    throw Error(ErrorKind::not_positive_definite, "variance matrix is not positive definite");
  }
  const double tol = 1e-12 * m.cwiseAbs().maxCoeff();

  // Step I: local Williamson per particle. When a particle has no x-y
  // coupling it is done per mode, which keeps the axis labels. A coupled
  // particle has its modes ordered to follow the other particle, or
  // ascending in nu when both are coupled, so that the cross blocks pair up.
  auto coupled = [&](int o) { return m.block<2, 2>(o, o + 2).cwiseAbs().maxCoeff() > tol; };
  auto mode_nu = [&](int o, int k) { return m.block<2, 2>(o + k, o + k).determinant(); };
  Matrix s = Matrix::Identity(8, 8);
  for (int o : {0, 4}) {
    Eigen::Matrix4d local = m.block<4, 4>(o, o);
    if (!coupled(o)) {
      for (int k : {0, 2}) {
        Mat2 blk = local.block<2, 2>(k, k);
        if (!is_scaled_identity(blk, tol)) {
          s.block<2, 2>(o + k, o + k) = williamson(VarianceMatrix(blk, bases::single_mode())).s;
        }
      }
      continue;
    }
    Williamson w = williamson(VarianceMatrix(local, local_basis()));
    const int other = 4 - o;
    const bool want_ascending = coupled(other) || mode_nu(other, 0) <= mode_nu(other, 2);
    if ((w.nu(0) <= w.nu(1)) != want_ascending) {
      w.s.row(0).swap(w.s.row(2));
      w.s.row(1).swap(w.s.row(3));
    }
    s.block<4, 4>(o, o) = w.s;
  }
  Matrix m1 = s * m * s.transpose();

  // Step II: rotations within each mode bring the same-axis cross blocks to
  // diagonal form; rotations leave the g I blocks untouched.
  Matrix r = Matrix::Identity(8, 8);
  for (int k : {0, 2}) {
    Mat2 gamma = m1.block<2, 2>(k, 4 + k);
    if (is_diagonal(gamma, tol)) continue;
    Mat2 u, w;
    signed_svd(gamma, u, w);
    r.block<2, 2>(k, k) = u.transpose();
    r.block<2, 2>(4 + k, 4 + k) = w.transpose();
  }
  Matrix m2 = r * m1 * r.transpose();
  m2 = 0.5 * (m2 + m2.transpose());

  StandardFormParams p;
  p.g_a = 0.5 * (m2(0, 0) + m2(1, 1));
  p.g_b = 0.5 * (m2(2, 2) + m2(3, 3));
  p.g_c = 0.5 * (m2(4, 4) + m2(5, 5));
  p.g_d = 0.5 * (m2(6, 6) + m2(7, 7));
  p.m_a = m2(0, 4);
  p.m_c = m2(1, 5);
  p.m_b = m2(2, 6);
  p.m_d = m2(3, 7);
  p.q_a = 0.5 * (m2(0, 6) + m2(2, 4));
  p.q_b = 0.5 * (m2(1, 7) + m2(3, 5));

  const double check = 1e-9 * std::max(1.0, m2.cwiseAbs().maxCoeff());
  double residual = (assemble_standard_form(p).matrix() - m2).cwiseAbs().maxCoeff();
  if (residual > check) {
    throw Error(ErrorKind::reduction_failed,
                "two-step reduction left off-pattern correlations (residual " + std::to_string(residual) + ")");
  }
  return p;
}

VarianceMatrix assemble_standard_form(const StandardFormParams& p) {
  Matrix m = Matrix::Zero(8, 8);
  const double diag[8] = {p.g_a, p.g_a, p.g_b, p.g_b, p.g_c, p.g_c, p.g_d, p.g_d};
  for (int i = 0; i < 8; ++i) m(i, i) = diag[i];
  auto put = [&](int i, int j, double x) { m(i, j) = m(j, i) = x; };
  put(0, 4, p.m_a);
  put(0, 6, p.q_a);
  put(1, 5, p.m_c);
  put(1, 7, p.q_b);
  put(2, 4, p.q_a);
  put(2, 6, p.m_b);
  put(3, 5, p.q_b);
  put(3, 7, p.m_d);
  return VarianceMatrix(std::move(m), bases::component_interleaved_pair());
}

}  // namespace ncent
