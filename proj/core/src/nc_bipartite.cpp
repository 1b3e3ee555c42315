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

#include "ncent/nc_bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "ncent/error.hpp"

namespace ncent {

namespace {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

Mat2 outer(const Vec2& u, const Vec2& v) { return u * v.transpose(); }
Mat2 sym(const Vec2& u, const Vec2& v) { return outer(u, v) + outer(v, u); }

double rel_dev(double x, double ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); }

void require_figure_regime(const NCPairParams& p) {
  if (!p.in_figure_regime()) {
    throw Error(ErrorKind::invalid_argument, "operation is defined for p0 = 0 and b2 = 0 only");
  }
}

}  // namespace

NCPairParams NCPairParams::figure(double alpha, double theta, double b1) {
  NCPairParams p;
  p.alpha = alpha;
  p.theta = theta;
  p.a = Vec2(b1, 0.0);
  p.validate();
  return p;
}

void NCPairParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorKind::invalid_argument, "alpha must be > 0");
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw Error(ErrorKind::invalid_argument, "theta must be >= 0");
  if (!a.allFinite() || !p0.allFinite()) throw Error(ErrorKind::invalid_argument, "vectors must be finite");
}

bool NCPairParams::in_figure_regime() const { return p0.isZero(0.0) && b()(1) == 0.0; }

WavePacketParams NCPairParams::packet1() const { return {alpha, a, p0, theta}; }
WavePacketParams NCPairParams::packet2() const { return {alpha, -a, -p0, theta}; }

double normalization(const NCPairParams& params) {
  params.validate();
  const double al = params.alpha, q = al * al * params.theta * params.theta + 4.0;
  const double x = std::exp(-params.p0.squaredNorm() / (2.0 * al)) * std::exp(-8.0 * al * params.b().squaredNorm() / q);
  return 1.0 / (2.0 * (1.0 + 4.0 / q * x));
}

NCBlocks nc_blocks(const NCPairParams& params) {
  params.validate();
  const double al = params.alpha, t = params.theta;
  const double q = al * al * t * t + 4.0, q2 = q * q, q3 = q2 * q;
  const Vec2 b = params.b(), p = params.p0;
  const Mat2 eps = epsilon(), id = Mat2::Identity();
  const Vec2 ep = eps * p, eb = eps * b;
  const double x = std::exp(-p.squaredNorm() / (2.0 * al)) * std::exp(-8.0 * al * b.squaredNorm() / q);
  const double n2 = normalization(params);
  const double t2 = t * t, t3 = t2 * t, t4 = t2 * t2;
  const double a2 = al * al, a3 = a2 * al, a4 = a2 * a2;

  // First moments of the dressed position and of the momentum of particle 1
  // (without the N^2 factor).
  const Vec2 mx = -0.5 * t * ep + 8.0 * a2 * t2 * x / q2 * b;
  const Vec2 mp = 16.0 * a2 * t * x / q2 * eb;

  NCBlocks r;
  r.A = n2 * (t2 / 4.0 * (outer(ep, ep) + 2.0 * al * id) - 0.5 * t * sym(b, ep) + 2.0 * outer(b, b) + id / al +
              2.0 * x *
                  (t4 * a4 * (-outer(p, p) + 4.0 * a2 * outer(b, b) + 4.0 * al * id) - 4.0 * t3 * a4 * sym(p, eb) -
                   8.0 * t2 * a2 * (outer(p, p) + 2.0 * a2 * outer(eb, eb) - 3.0 * al * id) -
                   16.0 * a2 * t * sym(p, eb) - 16.0 * outer(p, p) + 32.0 * al * id) /
                  (a2 * q3) -
              n2 * outer(mx, mx));
  r.B = n2 * (-0.25 * t * outer(ep, p) - 0.5 * t * al * eps + outer(b, p) +
              8.0 * x *
                  (t3 * a3 * (2.0 * al * outer(b, eb) - eps) + 2.0 * t2 * a2 * outer(p, b) +
                   4.0 * t * al * (2.0 * al * outer(eb, b) - eps) + 8.0 * outer(p, b)) /
                  q3 -
              n2 * outer(mx, mp));
  // The p0 p0 term inside the braces carries 8 theta^2 alpha^2 with no
  // (1 + 2 alpha^2) factor; that is what the quadrature oracle reproduces.
  r.C = n2 * (0.5 * t * sym(ep, b) - 2.0 * outer(b, b) +
              2.0 * x *
                  (t4 * a4 * (outer(p, p) + 4.0 * a2 * outer(b, b)) + 4.0 * t3 * a4 * sym(eb, p) +
                   8.0 * t2 * a2 * (outer(p, p) + 2.0 * a2 * outer(eb, eb)) + 16.0 * t * a2 * sym(eb, p) +
                   16.0 * outer(p, p)) /
                  (a2 * q3) -
              n2 * outer(mx, mx));
  r.D = n2 * (0.25 * t * outer(ep, p) - outer(b, p) -
              16.0 * x *
                  (-t3 * a4 * outer(b, eb) + t2 * a2 * outer(p, b) + 4.0 * t * a2 * outer(eb, b) + 4.0 * outer(p, b)) /
                  q3 -
              n2 * outer(mx, mp));
  r.G = n2 * (-0.5 * outer(p, p) + 32.0 * x * (t2 * a4 * outer(eb, eb) + 4.0 * a2 * outer(b, b)) / q3 -
              n2 * outer(mp, mp));
  r.E = n2 * (0.5 * outer(p, p) + al * id +
              16.0 * x * (t2 * a3 * (2.0 * al * outer(eb, eb) + id) - 4.0 * al * (2.0 * al * outer(b, b) - id)) / q3 -
              n2 * outer(mp, mp));
  return r;
}

VarianceMatrix assemble_nc_variance(const NCBlocks& blocks) { return assemble_pair(blocks); }

namespace {

EffectiveBlocks transform_blocks(const NCBlocks& nb, double theta) {
  const Mat2 eps = epsilon();
  const double h = 0.5 * theta;
  EffectiveBlocks r;
  r.A = nb.A + h * (nb.B * eps.transpose() + eps * nb.B.transpose()) + h * h * eps * nb.E * eps.transpose();
  r.B = nb.B + h * eps * nb.E;
  r.C = nb.C + h * (nb.D * eps.transpose() + eps * nb.D.transpose()) + h * h * eps * nb.G * eps.transpose();
  r.D = nb.D + h * eps * nb.G;
  r.E = nb.E;
  r.G = nb.G;
  return r;
}

}  // namespace

EffectiveBlocks effective_blocks(const NCBlocks& nb, double theta) {
  EffectiveBlocks r = transform_blocks(nb, theta);
  VarianceMatrix via_blocks = assemble_pair(r);
  VarianceMatrix via_congruence = nc_to_effective(assemble_pair(nb), theta);
  const double dev = (via_blocks.matrix() - via_congruence.matrix()).cwiseAbs().maxCoeff();
  if (dev > 1e-10 * std::max(1.0, via_congruence.matrix().cwiseAbs().maxCoeff())) {
    throw Error(ErrorKind::consistency, "block transform disagrees with the congruence route by " + std::to_string(dev));
  }
  return r;
}

VarianceMatrix effective_variance(const NCPairParams& params) {
  return assemble_pair(effective_blocks(nc_blocks(params), params.theta));
}

BranchPair physicality_branch_eigs(const NCPairParams& params) {
  require_figure_regime(params);
  return subsystem_branch_eigs(effective_variance(params), false);
}

BranchPair ppt_branch_eigs(const NCPairParams& params) {
  require_figure_regime(params);
  return subsystem_branch_eigs(partial_transpose(effective_variance(params), 2), false);
}

double physical_spectrum_min(const NCPairParams& params) {
  return symplectic_spectrum(effective_variance(params)).min();
}

double ppt_spectrum_min(const NCPairParams& params) {
  return symplectic_spectrum(partial_transpose(effective_variance(params), 2)).min();
}

BranchPair transcribed_physicality_branch_eigs(const NCPairParams& params) {
  require_figure_regime(params);
  const double s = params.s(), u = params.u(), q = s * s + 4.0, n2 = normalization(params);
  const double x = std::exp(-8.0 * u / q);
  const double nx = 2.0 * n2 * std::sqrt(1.0 + 0.75 * s * s + 4.0 * u + 4.0 * (3.0 * s * s + 4.0) * x / (q * q)) *
                    std::sqrt(1.0 + 16.0 * x / (q * q * q) * (s * s - 16.0 * u + 4.0));
  const double ny =
      2.0 * n2 *
      std::sqrt(1.0 + 0.75 * s * s +
                4.0 * x / (q * q * q) * (3.0 * s * s * s * s + 16.0 * s * s + 16.0 - 32.0 * s * s * u)) *
      std::sqrt(1.0 + 16.0 * x / (q * q));
  return {nx, ny};
}

BranchPair transcribed_ppt_branch_eigs(const NCPairParams& params) {
  require_figure_regime(params);
  const double s = params.s(), u = params.u(), q = s * s + 4.0, n2 = normalization(params);
  const double x = std::exp(-8.0 * u / q), s2 = s * s, s4 = s2 * s2, q3 = q * q * q;
  const double nx2 = 4.0 * n2 * n2 *
                     (1.0 + 0.75 * s2 + 4.0 * (8.0 * s4 * u + 3.0 * s4 + 16.0 * s2 + 16.0) * x / q3 -
                      256.0 * n2 * s4 * u * std::exp(-16.0 * u / q) / (q3 * q)) *
                     (1.0 + 16.0 * (s2 - 16.0 * u + 4.0) * x / q3);
  const double ny2 = 4.0 * n2 * n2 * (1.0 + 0.75 * s2 + 4.0 * (3.0 * s2 + 4.0) * x / (q * q)) *
                     (1.0 + 16.0 * x / (q * q));
  return {std::sqrt(nx2), std::sqrt(ny2)};
}

ClosedFormComparison compare_closed_forms(const NCPairParams& params) {
  ClosedFormComparison c{};
  c.pipeline_phys = physicality_branch_eigs(params);
  c.transcribed_phys = transcribed_physicality_branch_eigs(params);
  c.pipeline_ppt = ppt_branch_eigs(params);
  c.transcribed_ppt = transcribed_ppt_branch_eigs(params);
  c.max_rel_dev = std::max({rel_dev(c.transcribed_phys.x, c.pipeline_phys.x), rel_dev(c.transcribed_phys.y, c.pipeline_phys.y),
                            rel_dev(c.transcribed_ppt.x, c.pipeline_ppt.x), rel_dev(c.transcribed_ppt.y, c.pipeline_ppt.y)});
  return c;
}

void check_closed_forms(const NCPairParams& params, double tolerance) {
  ClosedFormComparison c = compare_closed_forms(params);
  if (c.max_rel_dev > tolerance) {
    throw Error(ErrorKind::consistency,
                "closed-form branch eigenvalues deviate from the pipeline by " + std::to_string(c.max_rel_dev));
  }
}

double alpha_min_search(double theta, double b1) {
  if (!(theta > 0.0)) throw Error(ErrorKind::invalid_argument, "alpha_min search needs theta > 0");
  auto objective = [&](double log_alpha) {
    EffectiveBlocks eb = transform_blocks(nc_blocks(NCPairParams::figure(std::exp(log_alpha), theta, b1)), theta);
    return eb.A(0, 0) * eb.A(1, 1);
  };
  const double lo = std::log(1e-6 / theta), hi = std::log(1e6 / theta);

  // Coarse scan to bracket the global minimum, then Brent inside the bracket.
  constexpr int kScan = 241;
  std::vector<double> xs(kScan), fs(kScan);
  int best = 0;
  for (int i = 0; i < kScan; ++i) {
    xs[i] = lo + (hi - lo) * i / (kScan - 1);
    fs[i] = objective(xs[i]);
    if (fs[i] < fs[best]) best = i;
  }
  if (best == 0 || best == kScan - 1) {
    throw Error(ErrorKind::search_failed, "no interior minimum of the space-space uncertainty in the search window");
  }
  auto [x, f] = boost::math::tools::brent_find_minima(objective, xs[best - 1], xs[best + 1],
                                                      std::numeric_limits<double>::digits);
  (void)f;
  return std::exp(x);
}

double AlphaMinCache::get(double theta, double b1) {
  const auto key = std::make_pair(theta, b1);
  {
    std::shared_lock lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  const double value = alpha_min_search(theta, b1);
  std::unique_lock lock(mu_);
  memo_.emplace(key, value);
  return value;
}

namespace {
double alpha_min(double theta, double b1, AlphaMinCache* cache) {
  return cache ? cache->get(theta, b1) : alpha_min_search(theta, b1);
}
}  // namespace

double nu_min_theta(double theta, double b1, AlphaMinCache* cache) {
  if (!(theta >= 0.0)) throw Error(ErrorKind::invalid_argument, "theta must be >= 0");
  if (theta == 0.0) return 1.0;
  const double am = alpha_min(theta, b1, cache);
  return physicality_branch_eigs(NCPairParams::figure(am, theta, b1)).min();
}

double b1_for_reduced_separation(double theta, double u, AlphaMinCache* cache) {
  if (!(theta > 0.0)) throw Error(ErrorKind::invalid_argument, "theta must be > 0");
  if (!(u >= 0.0)) throw Error(ErrorKind::invalid_argument, "alpha b1^2 must be >= 0");
  if (u == 0.0) return 0.0;
  auto f = [&](double b1) { return alpha_min(theta, b1, cache) * b1 * b1 - u; };
  double hi = std::sqrt(u * theta);
  int guard = 0;
  while (f(hi) < 0.0) {
    hi *= 2.0;
    if (++guard > 60) throw Error(ErrorKind::search_failed, "cannot bracket b1 for the requested separation");
  }
  std::uintmax_t iters = 200;
  auto [l, r] = boost::math::tools::toms748_solve(f, 0.0, hi, -u, f(hi), boost::math::tools::eps_tolerance<double>(48), iters);
  return 0.5 * (l + r);
}

Verdict verdict_from(double nu_tilde, double nu_min) {
  const double margin = nu_min * nu_min - nu_tilde * nu_tilde;
  return {margin > kVerdictDeadBand, margin, nu_tilde, nu_min};
}

Verdict entanglement_verdict(const NCPairParams& params, AlphaMinCache* cache) {
  require_figure_regime(params);
  return verdict_from(ppt_branch_eigs(params).min(), nu_min_theta(params.theta, params.b()(0), cache));
}

double shifted_log_negativity(double nu_tilde, double nu_min) {
  const double arg = nu_tilde * nu_tilde - nu_min * nu_min + 1.0;
  if (!(arg > 0.0)) {
    throw Error(ErrorKind::consistency, "shifted eigenvalue argument is not positive (" + std::to_string(arg) + ")");
  }
  return std::max(0.0, -0.5 * std::log2(arg));
}

double log_negativity_nc(const NCPairParams& params, AlphaMinCache* cache) {
  require_figure_regime(params);
  return shifted_log_negativity(ppt_branch_eigs(params).min(), nu_min_theta(params.theta, params.b()(0), cache));
}

}  // namespace ncent
