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


#include "ncent/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include <gsl/gsl_integration.h>
#include <json.hpp>

namespace ncent::oracle {

namespace {

using cd = std::complex<double>;
using Poly = Eigen::Matrix<cd, 4, 4>;  // coefficient (i, j) of k1^i k2^j
using CMat = Eigen::MatrixXcd;
using Vec2 = Eigen::Vector2d;
using Seq = std::vector<Factor>;       // operator product, last factor acts first

constexpr cd kI{0.0, 1.0};
const double kPi = std::acos(-1.0);

struct Rule {
  std::vector<double> z, w;
};

// Gauss-Hermite rule for weight exp(-z^2); memoized per order.
const Rule& hermite_rule(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Rule>> memo;
  std::lock_guard lock(mu);
  auto& slot = memo[n];
  if (!slot) {
    gsl_integration_fixed_workspace* ws =
        gsl_integration_fixed_alloc(gsl_integration_fixed_hermite, static_cast<size_t>(n), 0.0, 1.0, 0.0, 0.0);
    if (ws == nullptr) throw Error(ErrorKind::convergence, "cannot build Gauss-Hermite rule");
    auto r = std::make_unique<Rule>();
    const double* z = gsl_integration_fixed_nodes(ws);
    const double* w = gsl_integration_fixed_weights(ws);
    r->z.assign(z, z + n);
    r->w.assign(w, w + n);
    gsl_integration_fixed_free(ws);
    slot = std::move(r);
  }
  return *slot;
}

struct Packet {
  double alpha, theta;
  Vec2 m, b;  // mean momentum p0 / 2 and the phase vector
};

Packet packet_of(const WavePacketParams& w) { return {w.alpha, w.theta, 0.5 * w.p0, w.b()}; }

int seq_key(const Seq& s) {
  int key = 0;
  for (const Factor& f : s) key = key * 5 + 1 + (f.type == Factor::x ? 0 : 2) + (f.axis - 1);
  return key;
}

Seq reversed(Seq s) {
  std::reverse(s.begin(), s.end());
  return s;
}

Poly multiply_k(const Poly& p, int axis0) {
  Poly r = Poly::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (p(i, j) == cd{}) continue;
      const int ii = i + (axis0 == 0), jj = j + (axis0 == 1);
      if (ii > 3 || jj > 3) throw Error(ErrorKind::invalid_argument, "operator degree too high");
      r(ii, jj) += p(i, j);
    }
  }
  return r;
}

// (f psi) / psi as a polynomial, given (g psi) / psi = p.
Poly apply_factor(const Factor& f, const Poly& p, const Packet& pk) {
  const int ax = f.axis - 1;
  if (f.type == Factor::p) return multiply_k(p, ax);
  // i d/dk_ax (p psi) = psi (i dp + p (-i (k - m) / alpha + b)), then -theta/2 eps k.
  Poly r = Poly::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int d = ax == 0 ? i : j;
      if (d == 0) continue;
      r(ax == 0 ? i - 1 : i, ax == 0 ? j : j - 1) += kI * static_cast<double>(d) * p(i, j);
    }
  }
  r += (kI * pk.m(ax) / pk.alpha + pk.b(ax)) * p;
  r += (-kI / pk.alpha) * multiply_k(p, ax);
  if (ax == 0) {
    r -= 0.5 * pk.theta * multiply_k(p, 1);
  } else {
    r += 0.5 * pk.theta * multiply_k(p, 0);
  }
  return r;
}

Poly poly_of(const Seq& s, const Packet& pk) {
  Poly p = Poly::Zero();
  p(0, 0) = 1.0;
  for (auto it = s.rbegin(); it != s.rend(); ++it) p = apply_factor(*it, p, pk);
  return p;
}

cd eval(const Poly& p, double k1, double k2) {
  cd acc{};
  for (int i = 3; i >= 0; --i) {
    cd row{};
    for (int j = 3; j >= 0; --j) row = row * k2 + p(i, j);
    acc = acc * k1 + row;
  }
  return acc;
}

// psi(k) exp(k^2 / (2 alpha)).
cd reduced_packet(const Packet& pk, double k1, double k2) {
  const double km = k1 * pk.m(0) + k2 * pk.m(1), kb = k1 * pk.b(0) + k2 * pk.b(1);
  return std::exp(cd{km / pk.alpha - 0.5 * pk.m.squaredNorm() / pk.alpha, -kb}) / std::sqrt(kPi * pk.alpha);
}

std::vector<std::pair<double, Seq>> expand(const MomentumOperatorSpec& spec) {
  spec.validate();
  if (spec.symmetrize && spec.factors.size() == 2) {
    return {{0.5, spec.factors}, {0.5, reversed(spec.factors)}};
  }
  return {{1.0, spec.factors}};
}

class Engine {
 public:
  Engine(const NCPairParams& params, int order, double extent)
      : alpha_(params.alpha), p1_(packet_of(params.packet1())), p2_(packet_of(params.packet2())) {
    const Rule& rule = hermite_rule(order);
    n_ = order;
    z_ = Eigen::Map<const Eigen::VectorXd>(rule.z.data(), n_);
    w_ = Eigen::Map<const Eigen::VectorXd>(rule.w.data(), n_);
    for (int i = 0; i < n_; ++i) {
      if (std::abs(z_(i)) > extent) w_(i) = 0.0;
    }
    const double s = params.alpha * params.theta;
    phase_.resize(n_, n_);
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b) phase_(a, b) = std::exp(kI * (s * z_(a) * z_(b)));
    }
  }

  // <Phi| (A x B) F^-2 tau |Phi>.
  cd twisted(const Seq& a, const Seq& b) {
    const CMat& h1 = left(a);
    const CMat& h2 = right(b);
    return alpha_ * alpha_ * (h1.array() * h2.transpose().array()).sum();
  }

  // <psi_slot| A |psi_slot> with nodes centred on the packet's mean momentum.
  cd direct(const Seq& a, int slot) {
    const Packet& pk = slot == 0 ? p1_ : p2_;
    const Poly p = poly_of(a, pk);
    const double r = std::sqrt(alpha_);
    cd acc{};
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (w_(i) == 0.0 || w_(j) == 0.0) continue;
        acc += w_(i) * w_(j) * eval(p, pk.m(0) + r * z_(i), pk.m(1) + r * z_(j));
      }
    }
    return acc / kPi;
  }

 private:
  // Weighted samples of conj((A^dag psi_x) ) psi_y without the envelope.
  CMat sampled(const Seq& a, const Packet& bra, const Packet& ket) const {
    const Poly p = poly_of(reversed(a), bra);
    const double r = std::sqrt(alpha_);
    CMat f(n_, n_);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        const double k1 = r * z_(i), k2 = r * z_(j);
        f(i, j) = w_(i) * w_(j) * std::conj(eval(p, k1, k2) * reduced_packet(bra, k1, k2)) *
                  reduced_packet(ket, k1, k2);
      }
    }
    return f;
  }

  const CMat& left(const Seq& a) {
    auto [it, fresh] = left_.try_emplace(seq_key(a));
    if (fresh) it->second = sampled(a, p1_, p2_).transpose() * phase_;
    return it->second;
  }

  const CMat& right(const Seq& b) {
    auto [it, fresh] = right_.try_emplace(seq_key(b));
    if (fresh) it->second = sampled(b, p2_, p1_).transpose() * phase_.conjugate();
    return it->second;
  }

  int n_ = 0;
  double alpha_;
  Packet p1_, p2_;
  Eigen::VectorXd z_, w_;
  CMat phase_;
  std::map<int, CMat> left_, right_;
};

double gate_delta(cd coarse, cd fine) { return std::abs(fine - coarse) / std::max(std::abs(fine), 1.0); }

void enforce(double delta, const char* what) {
  if (!(delta <= kConvergenceTolerance)) {
    throw ConvergenceError(std::string(what) + ": quadrature not converged (delta " + std::to_string(delta) + ")",
                           delta);
  }
}

cd twisted_at(const MomentumOperatorSpec& a, const MomentumOperatorSpec& b, const NCPairParams& params, int order,
              double extent) {
  Engine eng(params, order, extent);
  cd acc{};
  for (const auto& [ca, sa] : expand(a)) {
    for (const auto& [cb, sb] : expand(b)) acc += ca * cb * eng.twisted(sa, sb);
  }
  return acc;
}

// Two-body operator sum_t c_t L_t x R_t.
struct Term {
  double c;
  Seq left, right;
};
using TwoBody = std::vector<Term>;

// Observable a in the order (X1, X2, P1, P2) of particle 1 then particle 2,
// dressed as F^-1 (.) F for sign = +1 and F (.) F^-1 for sign = -1.
TwoBody observable(int a, double sign, double theta) {
  const int particle = a / 4, kind = (a % 4) / 2, axis = a % 2 + 1;
  const Factor f{kind == 0 ? Factor::x : Factor::p, axis};
  TwoBody o;
  if (particle == 0) {
    o.push_back({1.0, {f}, {}});
  } else {
    o.push_back({1.0, {}, {f}});
  }
  if (kind == 0) {
    // eps_{axis, n} p_n with eps_12 = 1.
    const int other = axis == 1 ? 2 : 1;
    const double e = axis == 1 ? 1.0 : -1.0;
    const double c = 0.5 * theta * sign * e * (particle == 0 ? 1.0 : -1.0);
    const Factor pn{Factor::p, other};
    if (particle == 0) {
      o.push_back({c, {}, {pn}});
    } else {
      o.push_back({c, {pn}, {}});
    }
  }
  return o;
}

TwoBody product(const TwoBody& x, const TwoBody& y) {
  TwoBody r;
  for (const Term& s : x) {
    for (const Term& t : y) {
      Term u{s.c * t.c, s.left, s.right};
      u.left.insert(u.left.end(), t.left.begin(), t.left.end());
      u.right.insert(u.right.end(), t.right.begin(), t.right.end());
      r.push_back(std::move(u));
    }
  }
  return r;
}

// <Psi| O |Psi> / N^2 for Psi = Phi + F^-2 tau Phi.
cd expectation(const TwoBody& plus, const TwoBody& minus, Engine& eng) {
  cd acc{};
  for (const Term& t : plus) {
    acc += t.c * eng.direct(t.left, 0) * eng.direct(t.right, 1);
    acc += t.c * (eng.twisted(t.left, t.right) + std::conj(eng.twisted(reversed(t.left), reversed(t.right))));
  }
  for (const Term& t : minus) acc += t.c * eng.direct(t.left, 1) * eng.direct(t.right, 0);
  return acc;
}

StateMoments moments_at(const NCPairParams& params, int order, double extent) {
  Engine eng(params, order, extent);
  const double n2 = 1.0 / (2.0 + 2.0 * eng.twisted({}, {}).real());
  std::array<TwoBody, 8> plus, minus;
  for (int a = 0; a < 8; ++a) {
    plus[a] = observable(a, 1.0, params.theta);
    minus[a] = observable(a, -1.0, params.theta);
  }
  StateMoments m;
  m.norm_sq = n2;
  for (int a = 0; a < 8; ++a) m.mean(a) = n2 * expectation(plus[a], minus[a], eng).real();
  Eigen::Matrix<cd, 8, 8> second;
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      second(a, b) = n2 * expectation(product(plus[a], plus[b]), product(minus[a], minus[b]), eng);
    }
  }
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const cd sym = 0.5 * (second(a, b) + second(b, a));
      m.max_imag = std::max(m.max_imag, std::abs(sym.imag()));
      m.covariance(a, b) = sym.real() - m.mean(a) * m.mean(b);
    }
  }
  return m;
}

std::pair<int, int> block_offset(char block) {
  switch (block) {
    case 'A': return {0, 0};
    case 'B': return {0, 2};
    case 'C': return {0, 4};
    case 'D': return {0, 6};
    case 'E': return {2, 2};
    case 'G': return {2, 6};
    default: throw Error(ErrorKind::invalid_argument, std::string("unknown block '") + block + "'");
  }
}

double rel_error(double oracle, double closed) { return std::abs(oracle - closed) / std::max(std::abs(closed), 1e-12); }

BlockCheck check_entry(const NCPairParams& params, const StateMoments& m, const NCBlocks& closed, char block, int i,
                       int j) {
  if (i < 1 || i > 2 || j < 1 || j > 2) throw Error(ErrorKind::invalid_argument, "block indices are 1 or 2");
  const auto [r, c] = block_offset(block);
  double o = m.covariance(r + i - 1, c + j - 1);
  if (std::abs(o) < kZeroResolution * std::max(1.0, m.covariance.cwiseAbs().maxCoeff())) o = 0.0;
  const double cf = closed.get(block)(i - 1, j - 1);
  return {block, i, j, params, o, cf, rel_error(o, cf), m.converged};
}

}  // namespace

void MomentumOperatorSpec::validate() const {
  if (factors.size() > 2) throw Error(ErrorKind::invalid_argument, "operators have at most two factors");
  for (const Factor& f : factors) {
    if (f.axis != 1 && f.axis != 2) throw Error(ErrorKind::invalid_argument, "factor axis must be 1 or 2");
  }
}

MomentumOperatorSpec MomentumOperatorSpec::adjoint() const { return {reversed(factors), symmetrize}; }

void QuadratureConfig::validate() const {
  if (order < 16) throw Error(ErrorKind::invalid_argument, "quadrature order must be >= 16");
  if (!(extent > 0.0)) throw Error(ErrorKind::invalid_argument, "quadrature extent must be > 0");
}

std::complex<double> twisted_expectation(const MomentumOperatorSpec& a, const MomentumOperatorSpec& b,
                                         const NCPairParams& params, const QuadratureConfig& cfg) {
  cfg.validate();
  params.validate();
  const cd coarse = twisted_at(a, b, params, cfg.order, cfg.extent);
  const cd fine = twisted_at(a, b, params, 2 * cfg.order, cfg.extent);
  enforce(gate_delta(coarse, fine), "twisted_expectation");
  return fine;
}

std::complex<double> twisted_expectation_fourier(const MomentumOperatorSpec& a, const MomentumOperatorSpec& b,
                                                 const NCPairParams& params, const QuadratureConfig& cfg) {
  cfg.validate();
  params.validate();
  const Packet p1 = packet_of(params.packet1()), p2 = packet_of(params.packet2());
  const double al = params.alpha, th = params.theta, r = std::sqrt(al);
  const Rule& rule = hermite_rule(cfg.order);
  const int n = cfg.order;

  // int l^k exp(-l^2 / alpha + beta l) dl for k <= 3.
  auto gauss_moments = [&](cd beta) {
    const cd mu = 0.5 * al * beta;
    const double v = 0.5 * al;
    const cd pre = std::sqrt(kPi * al) * std::exp(0.25 * al * beta * beta);
    return std::array<cd, 4>{pre, pre * mu, pre * (mu * mu + v), pre * (mu * mu * mu + 3.0 * mu * v)};
  };

  cd total{};
  for (const auto& [ca, sa] : expand(a)) {
    const Poly pa = poly_of(reversed(sa), p1);
    for (const auto& [cb, sb] : expand(b)) {
      const Poly qb = poly_of(reversed(sb), p2);
      cd acc{};
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double wi = std::abs(rule.z[i]) > cfg.extent ? 0.0 : rule.w[i];
          const double wj = std::abs(rule.z[j]) > cfg.extent ? 0.0 : rule.w[j];
          if (wi == 0.0 || wj == 0.0) continue;
          const double k1 = r * rule.z[i], k2 = r * rule.z[j];
          const cd f = std::conj(eval(pa, k1, k2) * reduced_packet(p1, k1, k2)) * reduced_packet(p2, k1, k2);
          // Transform of conj(B^dag psi2) psi1 at w = theta (-k2, k1).
          const auto m1 = gauss_moments(kI * (-th * k2 - 2.0 * p1.b(0)));
          const auto m2 = gauss_moments(kI * (th * k1 - 2.0 * p1.b(1)));
          cd g{};
          for (int u = 0; u < 4; ++u) {
            for (int v = 0; v < 4; ++v) {
              if (qb(u, v) != cd{}) g += std::conj(qb(u, v)) * m1[u] * m2[v];
            }
          }
          g *= std::exp(-p1.m.squaredNorm() / al) / (kPi * al);
          acc += wi * wj * f * g;
        }
      }
      total += ca * cb * al * acc;
    }
  }
  return total;
}

std::complex<double> direct_moment(const MomentumOperatorSpec& a, const WavePacketParams& packet,
                                   const QuadratureConfig& cfg) {
  cfg.validate();
  packet.validate();
  auto at = [&](int order) {
    NCPairParams pair;
    pair.alpha = packet.alpha;
    pair.theta = packet.theta;
    pair.a = packet.a;
    pair.p0 = packet.p0;
    Engine eng(pair, order, cfg.extent);
    cd acc{};
    for (const auto& [c, s] : expand(a)) acc += c * eng.direct(s, 0);
    return acc;
  };
  const cd coarse = at(cfg.order), fine = at(2 * cfg.order);
  enforce(gate_delta(coarse, fine), "direct_moment");
  return fine;
}

double normalization(const NCPairParams& params, const QuadratureConfig& cfg) {
  const cd t = twisted_expectation(MomentumOperatorSpec::identity(), MomentumOperatorSpec::identity(), params, cfg);
  return 1.0 / (2.0 * (1.0 + t.real()));
}

StateMoments state_moments_unchecked(const NCPairParams& params, const QuadratureConfig& cfg) {
  cfg.validate();
  params.validate();
  const StateMoments coarse = moments_at(params, cfg.order, cfg.extent);
  StateMoments fine = moments_at(params, 2 * cfg.order, cfg.extent);
  const double scale = std::max({fine.covariance.cwiseAbs().maxCoeff(), fine.mean.cwiseAbs().maxCoeff(), 1.0});
  const double change = std::max((fine.covariance - coarse.covariance).cwiseAbs().maxCoeff(),
                                 (fine.mean - coarse.mean).cwiseAbs().maxCoeff());
  fine.delta = change / scale;
  fine.converged = fine.delta <= kConvergenceTolerance;
  return fine;
}

StateMoments state_moments(const NCPairParams& params, const QuadratureConfig& cfg) {
  StateMoments m = state_moments_unchecked(params, cfg);
  enforce(m.delta, "state_moments");
  return m;
}

double verify_block(const NCPairParams& params, char block, int i, int j, const QuadratureConfig& cfg) {
  block_offset(block);
  const StateMoments m = state_moments_unchecked(params, cfg);
  return check_entry(params, m, nc_blocks(params), block, i, j).rel_error;
}

std::vector<BlockCheck> verify_blocks(const NCPairParams& params, const QuadratureConfig& cfg) {
  const StateMoments m = state_moments_unchecked(params, cfg);
  const NCBlocks closed = nc_blocks(params);
  std::vector<BlockCheck> out;
  for (char block : {'A', 'B', 'C', 'D', 'E', 'G'}) {
    for (int i = 1; i <= 2; ++i) {
      for (int j = 1; j <= 2; ++j) out.push_back(check_entry(params, m, closed, block, i, j));
    }
  }
  return out;
}

std::string report_json(const std::vector<BlockCheck>& checks) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const BlockCheck& c : checks) {
    arr.push_back({{"block", std::string(1, c.block)},
                   {"i", c.i},
                   {"j", c.j},
                   {"params",
                    {{"alpha", c.params.alpha},
                     {"theta", c.params.theta},
                     {"a", {c.params.a(0), c.params.a(1)}},
                     {"p0", {c.params.p0(0), c.params.p0(1)}}}},
                   {"oracle", c.oracle},
                   {"closed_form", c.closed_form},
                   {"rel_error", c.rel_error},
                   {"converged", c.converged}});
  }
  return arr.dump(2);
}

}  // namespace ncent::oracle
