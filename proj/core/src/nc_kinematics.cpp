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

#include "ncent/nc_kinematics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "ncent/error.hpp"

namespace ncent {

void NCPlaneParams::validate() const {
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw Error(ErrorKind::invalid_argument, "theta must be >= 0");
}

void WavePacketParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorKind::invalid_argument, "alpha must be > 0");
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw Error(ErrorKind::invalid_argument, "theta must be >= 0");
  if (!a.allFinite() || !p0.allFinite()) throw Error(ErrorKind::invalid_argument, "packet vectors must be finite");
}

Eigen::Matrix4d m_transform(double theta) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 3) = 0.5 * theta;
  m(1, 2) = -0.5 * theta;
  return m;
}

VarianceMatrix single_particle_nc_variance(const WavePacketParams& packet) {
  packet.validate();
  const double t = packet.theta, al = packet.alpha;
  Matrix v = Matrix::Zero(4, 4);
  v(0, 0) = v(1, 1) = t * t * al / 8.0 + 1.0 / (2.0 * al);
  v(2, 2) = v(3, 3) = al / 2.0;
  v(0, 3) = v(3, 0) = -t * al / 4.0;
  v(1, 2) = v(2, 1) = t * al / 4.0;
  return VarianceMatrix(std::move(v), bases::planar_particle());
}

Matrix effective_transform(const BasisDescriptor& basis, double theta) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  const Eigen::Matrix2d eps = epsilon();
  Matrix m = Matrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Coord& c = basis[i];
    if (c.kind != Kind::position) continue;
    if (c.axis > 2) throw Error(ErrorKind::invalid_argument, "planar transform needs axes 1 and 2");
    for (int k = 1; k <= 2; ++k) {
      double w = eps(c.axis - 1, k - 1);
      if (w == 0.0) continue;
      int j = basis.index_of({Kind::momentum, c.particle, k});
      if (j < 0) throw Error(ErrorKind::basis_malformed, "basis is not planar");
      m(i, j) += 0.5 * theta * w;
    }
  }
  return m;
}

VarianceMatrix nc_to_effective(const VarianceMatrix& vbar, double theta) {
  if (vbar.dim() != 4 && vbar.dim() != 8) {
    throw Error(ErrorKind::invalid_argument, "effective transform supports 4x4 and 8x8 matrices");
  }
  Matrix m = effective_transform(vbar.basis(), theta);
  Matrix out = m * vbar.matrix() * m.transpose();
  out = 0.5 * (out + out.transpose());
  return VarianceMatrix(std::move(out), vbar.basis());
}

Uncertainties uncertainties(const WavePacketParams& packet) {
  packet.validate();
  const double t = packet.theta, al = packet.alpha;
  return {t * t * al / 8.0 + 1.0 / (2.0 * al), std::sqrt(t * t * al * al / 16.0 + 0.25)};
}

UncertaintyMinimum minimize_xx_uncertainty(double theta) {
  if (!(theta > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "theta must be > 0; the commutative infimum is 0 as alpha grows");
  }
  auto xx = [theta](double log_alpha) {
    WavePacketParams p;
    p.alpha = std::exp(log_alpha);
    p.theta = theta;
    return uncertainties(p).xx;
  };
  const double lo = std::log(1e-6 / theta), hi = std::log(1e6 / theta);
  auto [x, f] = boost::math::tools::brent_find_minima(xx, lo, hi, std::numeric_limits<double>::digits);
  if (hi - x < 1e-6 || x - lo < 1e-6) throw Error(ErrorKind::search_failed, "minimum sits on the search boundary");
  return {std::exp(x), f};
}

double single_particle_ppt(const WavePacketParams& packet) {
  VarianceMatrix eff = nc_to_effective(single_particle_nc_variance(packet), packet.theta);
  // Axis k of the particle becomes mode k.
  Matrix m = eff.matrix();
  BasisDescriptor modes({{Kind::position, 1, 1}, {Kind::position, 2, 1},
                         {Kind::momentum, 1, 1}, {Kind::momentum, 2, 1}});
  VarianceMatrix two_mode(std::move(m), std::move(modes));
  return symplectic_spectrum(partial_transpose(two_mode, 2)).min();
}

}  // namespace ncent
