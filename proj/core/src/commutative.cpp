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

#include "ncent/commutative.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncent/error.hpp"

namespace ncent {

const Eigen::Matrix2d& PairBlocks::get(char name) const {
  switch (name) {
    case 'A': return A;
    case 'B': return B;
    case 'C': return C;
    case 'D': return D;
    case 'E': return E;
    case 'G': return G;
  }
  throw Error(ErrorKind::invalid_argument, std::string("unknown block ") + name);
}

VarianceMatrix assemble_pair(const PairBlocks& b) {
  double asym = 0.0;
  for (const auto* m : {&b.A, &b.C, &b.E, &b.G}) asym = std::max(asym, std::abs((*m)(0, 1) - (*m)(1, 0)));
  if (asym > 1e-10) {
    throw Error(ErrorKind::invalid_matrix, "block layout is not symmetric (deviation " + std::to_string(asym) + ")");
  }
  Matrix v(8, 8);
  v << b.A, b.B, b.C, b.D,
       b.B.transpose(), b.E, b.D.transpose(), b.G,
       b.C, b.D, b.A, b.B,
       b.D.transpose(), b.G, b.B.transpose(), b.E;
  v = 0.5 * (v + v.transpose());
  return VarianceMatrix(std::move(v), bases::particle_blocked_pair());
}

PairBlocks extract_pair(const VarianceMatrix& v) {
  VarianceMatrix pb = v.permuted(bases::particle_blocked_pair());
  const Matrix& m = pb.matrix();
  PairBlocks b;
  b.A = m.block<2, 2>(0, 0);
  b.B = m.block<2, 2>(0, 2);
  b.C = m.block<2, 2>(0, 4);
  b.D = m.block<2, 2>(0, 6);
  b.E = m.block<2, 2>(2, 2);
  b.G = m.block<2, 2>(2, 6);
  return b;
}

Pair1DParams Pair1DParams::from_reduced(double eta, double zeta, double beta) {
  if (!(zeta >= 0.0)) throw Error(ErrorKind::invalid_argument, "zeta must be >= 0");
  Pair1DParams p{eta * beta, beta, std::sqrt(zeta * beta)};
  p.validate();
  return p;
}

void Pair1DParams::validate() const {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw Error(ErrorKind::invalid_argument, "alpha and beta must be > 0");
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(p0)) {
    throw Error(ErrorKind::invalid_argument, "parameters must be finite");
  }
}

double Pair1DParams::norm_sq() const {
  const double s = alpha + beta;
  return 1.0 / (2.0 * (1.0 + 2.0 * std::sqrt(alpha * beta) * std::exp(-p0 * p0 / s) / s));
}

VarianceMatrix variance_1d_pair(const Pair1DParams& params) {
  params.validate();
  const double al = params.alpha, be = params.beta, q2 = params.p0 * params.p0;
  const double s = al + be, r = std::sqrt(al * be), e = std::exp(-q2 / s), n2 = params.norm_sq();
  const double d2 = (be - al) * (be - al);

  const double v11 = n2 * (s / (2.0 * al * be) + 4.0 * r * e / (s * s) * (1.0 - q2 / s));
  const double v13 = n2 * (4.0 * q2 * al * be * e / (r * s * s * s));
  const double v22 = n2 * (s / 2.0 + q2 / 2.0 + 4.0 * r * e / s * (al * be / s + q2 * d2 / (4.0 * s * s)));
  const double v24 = n2 * (-q2 / 2.0 + q2 * r * d2 * e / (s * s * s));

  Matrix v = Matrix::Zero(4, 4);
  v(0, 0) = v(2, 2) = v11;
  v(1, 1) = v(3, 3) = v22;
  v(0, 2) = v(2, 0) = v13;
  v(1, 3) = v(3, 1) = v24;
  return VarianceMatrix(std::move(v), bases::two_mode());
}

double nu_ppt_1d_closed(double eta, double zeta) {
  const double e = std::exp(-zeta / (1.0 + eta));
  const double r = std::sqrt(eta), s = 1.0 + eta, s3 = s * s * s;
  const double pref = s / (s + 2.0 * r * e);
  const double t1 = s / (2.0 * eta) + 4.0 * r * (s - 2.0 * zeta) * e / s3;
  const double t2 = s / 2.0 + r * (2.0 * zeta * (1.0 - eta) * (1.0 - eta) + 4.0 * eta * s) * e / s3;
  return pref * std::sqrt(t1) * std::sqrt(t2);
}

Pair1DBranches nu_ppt_1d_branches(const Pair1DParams& params) {
  VarianceMatrix v = variance_1d_pair(params);
  const double v11 = v(0, 0), v13 = v(0, 2), v22 = v(1, 1), v24 = v(1, 3);
  Pair1DBranches out{};
  out.minus = 2.0 * std::sqrt((v11 - v13) * (v22 + v24));
  out.plus = 2.0 * std::sqrt((v11 + v13) * (v22 - v24));
  out.pipeline = symplectic_spectrum(partial_transpose(v, 2)).min();
  return out;
}

double nu_ppt_1d(const Pair1DParams& params) {
  Pair1DBranches b = nu_ppt_1d_branches(params);
  const double best = std::min(b.minus, b.plus);
  if (std::abs(best - b.pipeline) > 1e-9 * std::max(1.0, b.pipeline)) {
    throw Error(ErrorKind::consistency, "1D branch value " + std::to_string(best) +
                                            " disagrees with the matrix pipeline " + std::to_string(b.pipeline));
  }
  return best;
}

void Pair2DParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorKind::invalid_argument, "alpha must be > 0");
  if (!std::isfinite(a1)) throw Error(ErrorKind::invalid_argument, "a1 must be finite");
}

double Pair2DParams::norm_sq() const { return 1.0 / (2.0 * (1.0 + std::exp(-2.0 * u()))); }

PairBlocks blocks_2d_pair(const Pair2DParams& params) {
  params.validate();
  const double al = params.alpha, n2 = params.norm_sq(), e = std::exp(-2.0 * params.u());
  const Eigen::Vector2d a(params.a1, 0.0);
  const Eigen::Matrix2d aa = a * a.transpose(), id = Eigen::Matrix2d::Identity();
  PairBlocks b;
  b.A = n2 * (2.0 * aa + id / al + id / al * e);
  b.C = -2.0 * n2 * aa;
  b.E = n2 * (al * id + (al * id - 2.0 * al * al * aa) * e);
  b.G = 2.0 * n2 * al * al * e * aa;
  return b;
}

VarianceMatrix variance_2d_pair(const Pair2DParams& params) { return assemble_pair(blocks_2d_pair(params)); }

BranchPair nu_ppt_2d(const Pair2DParams& params) {
  params.validate();
  const double u = params.u(), e = std::exp(-2.0 * u);
  return {std::sqrt((1.0 + e) * (1.0 + (1.0 - 4.0 * u) * e)) / (1.0 + e), 1.0};
}

BranchPair nu_ppt_2d_pipeline(const Pair2DParams& params) {
  return subsystem_branch_eigs(variance_2d_pair(params), true);
}

double log_negativity(double nu_min) {
  if (!(nu_min > 0.0)) throw Error(ErrorKind::invalid_argument, "symplectic eigenvalue must be positive");
  return std::max(0.0, -std::log2(nu_min));
}

}  // namespace ncent
