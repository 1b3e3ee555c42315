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

#include <string>
#include <string_view>
#include <vector>

namespace ncent {

enum class Kind { position, momentum };

// One phase-space coordinate. Particles and axes are 1-based.
struct Coord {
  Kind kind;
  int particle;
  int axis;

  friend bool operator==(const Coord&, const Coord&) = default;
};

// Ordered coordinate labels fixing the meaning of rows and columns of a
// variance matrix. Every (particle, axis) pair must appear exactly once as a
// position and once as a momentum.
class BasisDescriptor {
 public:
  BasisDescriptor() = default;
  explicit BasisDescriptor(std::vector<Coord> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t modes() const noexcept { return entries_.size() / 2; }
  const Coord& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Coord>& entries() const noexcept { return entries_; }

  // Index of a coordinate, or -1 when absent.
  int index_of(const Coord& c) const noexcept;
  int conjugate_of(std::size_t i) const;
  bool has_particle(int particle) const noexcept;

  // perm[i] is the index in *this of other[i]; both must hold the same labels.
  std::vector<int> permutation_to(const BasisDescriptor& other) const;

  // Labels such as "x1@2" (position, axis 1, particle 2).
  std::string label(std::size_t i) const;
  std::vector<std::string> labels() const;
  static Coord parse_label(std::string_view text);
  static BasisDescriptor from_labels(const std::vector<std::string>& labels);

  friend bool operator==(const BasisDescriptor&, const BasisDescriptor&) = default;

 private:
  std::vector<Coord> entries_;
};

namespace bases {

// (x, p) of a single mode.
BasisDescriptor single_mode();
// (x1, p1, x2, p2) with modes labelled as particles 1 and 2 on axis 1.
BasisDescriptor two_mode();
// (x1, x2, p1, p2) of one particle on the plane.
BasisDescriptor planar_particle();
// (x1, x2, p1, p2) of particle 1 then the same for particle 2.
BasisDescriptor particle_blocked_pair();
// (x1, p1, x2, p2) of particle 1 then the same for particle 2.
BasisDescriptor component_interleaved_pair();

}  // namespace bases

}  // namespace ncent
