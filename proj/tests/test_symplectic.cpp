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

#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "ncent/commutative.hpp"
#include "ncent/symplectic.hpp"

using namespace ncent;
using doctest::Approx;

namespace {

VarianceMatrix diag(std::initializer_list<double> d, const BasisDescriptor& b) {
  Vector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return VarianceMatrix(v.asDiagonal(), b);
}

}  // namespace

TEST_CASE("omega follows the basis pairing") {
  Matrix w = build_omega(bases::single_mode()).matrix;
  CHECK(w(0, 1) == 1.0);
  CHECK(w(1, 0) == -1.0);

  const Matrix two = build_omega(bases::two_mode()).matrix;
  CHECK(two.block(0, 0, 2, 2) == w);
  CHECK(two.block(2, 2, 2, 2) == w);
  CHECK(two.block(0, 2, 2, 2).isZero(0.0));

  const Matrix planar = build_omega(bases::planar_particle()).matrix;
  CHECK(planar(0, 2) == 1.0);
  CHECK(planar(1, 3) == 1.0);

  for (const auto& b : {bases::single_mode(), bases::two_mode(), bases::planar_particle(),
                        bases::particle_blocked_pair(), bases::component_interleaved_pair()}) {
    const Matrix o = build_omega(b).matrix;
    CHECK(o.transpose() == -o);
    CHECK(o * o == -Matrix::Identity(o.rows(), o.cols()));
  }
}

TEST_CASE("spectrum of simple matrices") {
  CHECK(symplectic_spectrum(diag({0.5, 0.5}, bases::single_mode())).min() == Approx(1.0).epsilon(1e-14));
  const auto s = symplectic_spectrum(diag({1, 1, 1, 1}, bases::two_mode()));
  REQUIRE(s.values.size() == 2);
  CHECK(s.values[0] == Approx(2.0).epsilon(1e-14));
  CHECK(s.values[1] == Approx(2.0).epsilon(1e-14));
  for (double a : {0.1, 1.0, 7.0}) {
    const auto p = symplectic_spectrum(diag({0.5 / a, 0.5 / a, 0.5 * a, 0.5 * a}, bases::planar_particle()));
    CHECK(p.min() == Approx(1.0).epsilon(1e-12));
    CHECK(p.max() == Approx(1.0).epsilon(1e-12));
  }
  for (auto [a, b] : {std::pair{0.3, 2.0}, {1.5, 1.5}, {0.01, 40.0}}) {
    CHECK(symplectic_spectrum(diag({a, b}, bases::single_mode())).min() == Approx(2 * std::sqrt(a * b)).epsilon(1e-12));
  }
}

TEST_CASE("spectrum is invariant under symplectic congruence") {
  std::mt19937_64 rng(7);
  for (const auto& b : {bases::single_mode(), bases::two_mode(), bases::particle_blocked_pair()}) {
    for (int k = 0; k < 100; ++k) {
      const VarianceMatrix v = random_variance(b, rng, 1.0, 4.0);
      const Matrix s = random_symplectic(b, rng);
      REQUIRE(is_symplectic(s, b));
      const auto before = symplectic_spectrum(v).values;
      const auto after = symplectic_spectrum(symplectic_congruence(v, s)).values;
      for (std::size_t i = 0; i < before.size(); ++i) CHECK(after[i] == Approx(before[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("congruence examples and errors") {
  const VarianceMatrix v = diag({0.3, 2.0}, bases::single_mode());
  CHECK(symplectic_congruence(v, Matrix::Identity(2, 2)).matrix() == v.matrix());
  const Matrix w = build_omega(bases::single_mode()).matrix;
  const Matrix swapped = symplectic_congruence(v, w).matrix();
  CHECK(swapped(0, 0) == 2.0);
  CHECK(swapped(1, 1) == 0.3);
  CHECK(error_kind([&] { symplectic_congruence(v, 2.0 * Matrix::Identity(2, 2)); }) == ErrorKind::non_symplectic);
}

TEST_CASE("variance matrix validation") {
  Matrix m(2, 2);
  m << 1.0, 0.1, 0.2, 1.0;
  CHECK(error_kind([&] { VarianceMatrix(m, bases::single_mode()); }) == ErrorKind::invalid_matrix);
  m << 1.0, NAN, NAN, 1.0;
  CHECK(error_kind([&] { VarianceMatrix(m, bases::single_mode()); }) == ErrorKind::invalid_matrix);
  CHECK(error_kind([&] { VarianceMatrix(Matrix::Identity(4, 4), bases::single_mode()); }) ==
        ErrorKind::invalid_matrix);
}

TEST_CASE("partial transpose") {
  const VarianceMatrix ones(Matrix::Ones(4, 4), bases::two_mode());
  const Matrix t = partial_transpose(ones, 2).matrix();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const bool flipped = (i == 3) != (j == 3);
      CHECK(t(i, j) == (flipped ? -1.0 : 1.0));
    }
  }
  const VarianceMatrix d = diag({1, 2, 3, 4}, bases::two_mode());
  CHECK(partial_transpose(d, 2).matrix() == d.matrix());

  std::mt19937_64 rng(3);
  const VarianceMatrix v = random_variance(bases::particle_blocked_pair(), rng, 1.0, 2.0);
  CHECK(partial_transpose(partial_transpose(v, 2), 2).matrix() == v.matrix());
  const Matrix pt = partial_transpose(v, 2).matrix();
  CHECK(pt(6, 0) == -v(6, 0));
  CHECK(pt(6, 7) == v(6, 7));
  CHECK(error_kind([&] { partial_transpose(v, 3); }) == ErrorKind::invalid_argument);
}

TEST_CASE("physicality") {
  auto vac = is_physical_commutative(diag({0.5, 0.5}, bases::single_mode()));
  CHECK(vac.physical);
  CHECK(vac.margin == Approx(0.0).epsilon(1e-14));
  auto low = is_physical_commutative(diag({0.4, 0.4}, bases::single_mode()));
  CHECK_FALSE(low.physical);
  CHECK(low.margin == Approx(-0.2).epsilon(1e-14));
  CHECK(is_physical_commutative(variance_1d_pair(Pair1DParams::from_reduced(2.0, 1.0))).physical);
  CHECK(symplectic_spectrum(variance_1d_pair(Pair1DParams::from_reduced(2.0, 1.0))).min() ==
        Approx(1.0288613127).epsilon(1e-9));
}

TEST_CASE("uncertainty eigenvalue agrees with the spectrum test") {
  // V + (i/2) Omega has eigenvalues (nu_j -+ 1) / 2 per mode.
  CHECK(uncertainty_min_eigenvalue(diag({0.5, 0.5}, bases::single_mode())) == Approx(0.0).epsilon(1e-14));
  CHECK(uncertainty_min_eigenvalue(diag({1.0, 1.0}, bases::single_mode())) == Approx(0.5));
  CHECK(uncertainty_min_eigenvalue(diag({0.4, 0.4}, bases::single_mode())) == Approx(-0.1));

  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const bool physical = k % 2 == 0;
    const VarianceMatrix v = physical ? random_variance(bases::two_mode(), rng, 1.0, 3.0)
                                      : random_variance(bases::two_mode(), rng, 0.1, 0.97);
    const bool by_nu = is_physical_commutative(v).physical;
    const bool by_eig = uncertainty_min_eigenvalue(v) >= -tol::physicality;
    CHECK(by_nu == physical);
    CHECK(by_eig == physical);
  }
}

TEST_CASE("williamson diagonalizes") {
  std::mt19937_64 rng(5);
  for (const auto& b : {bases::two_mode(), bases::planar_particle(), bases::particle_blocked_pair()}) {
    for (int k = 0; k < 20; ++k) {
      const VarianceMatrix v = random_variance(b, rng, 1.0, 5.0);
      const Williamson w = williamson(v);
      CHECK(is_symplectic(w.s, b, 1e-8));
      const Matrix d = w.s * v.matrix() * w.s.transpose();
      CHECK((d - Matrix(d.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-9);
      auto spec = symplectic_spectrum(v).values;
      std::vector<double> nu(w.nu.data(), w.nu.data() + w.nu.size());
      std::sort(nu.begin(), nu.end());
      for (std::size_t i = 0; i < nu.size(); ++i) CHECK(nu[i] == Approx(spec[i]).epsilon(1e-9));
    }
  }
  CHECK(error_kind([] { williamson(diag({1.0, -1.0}, bases::single_mode())); }) ==
        ErrorKind::not_positive_definite);
}

TEST_CASE("block invariants") {
  std::mt19937_64 rng(17);
  const VarianceMatrix a = random_variance(bases::planar_particle(), rng, 1.0, 2.0);
  Matrix m = Matrix::Zero(8, 8);
  m.topLeftCorner(4, 4) = a.matrix();
  m.bottomRightCorner(4, 4) = a.matrix();
  const BlockInvariants zero = block_invariants(VarianceMatrix(m, bases::particle_blocked_pair()));
  CHECK(zero.det_gamma_a == 0.0);
  CHECK(zero.det_gamma_b == 0.0);
  CHECK(zero.delta_x == Approx(zero.det_alpha_a + zero.det_beta_a));

  // Local symplectic maps on the x axis of each particle leave them fixed.
  const BlockInvariants ref = block_invariants(variance_2d_pair({1.0, 0.8}));
  const VarianceMatrix v = variance_2d_pair({1.0, 0.8});
  Matrix s = Matrix::Identity(8, 8);
  s(0, 0) = 1.7;
  s(2, 2) = 1.0 / 1.7;
  s(4, 4) = 0.6;
  s(6, 6) = 1.0 / 0.6;
  s(4, 6) = 0.3;
  const BlockInvariants moved = block_invariants(symplectic_congruence(v, s));
  CHECK(moved.det_alpha_a == Approx(ref.det_alpha_a).epsilon(1e-9));
  CHECK(moved.det_beta_a == Approx(ref.det_beta_a).epsilon(1e-9));
  CHECK(moved.det_gamma_a == Approx(ref.det_gamma_a).epsilon(1e-9));
  CHECK(moved.delta_x == Approx(ref.delta_x).epsilon(1e-9));

  // Along y the 2D pair is a product of minimum-uncertainty modes.
  const BlockInvariants y = block_invariants(variance_2d_pair({1.0, 0.0}), {}, true);
  CHECK(branch_eigenvalue(y.delta_y, y.det_delta_b) == Approx(1.0).epsilon(1e-12));
}
