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

#include "ncent/basis.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <tuple>
#include <utility>

#include "ncent/error.hpp"

namespace ncent {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::basis_malformed: return "basis-malformed";
    case ErrorKind::invalid_matrix: return "invalid-matrix";
    case ErrorKind::non_symplectic: return "non-symplectic";
    case ErrorKind::not_positive_definite: return "not-positive-definite";
    case ErrorKind::reduction_failed: return "reduction-failed";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::search_failed: return "search-failed";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

BasisDescriptor::BasisDescriptor(std::vector<Coord> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty() || entries_.size() % 2 != 0) {
    throw Error(ErrorKind::basis_malformed, "basis length must be even and nonzero");
  }
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& c : entries_) {
    if (c.particle < 1 || c.axis < 1) {
      throw Error(ErrorKind::basis_malformed, "particle and axis indices are 1-based");
    }
    auto key = std::make_tuple(static_cast<int>(c.kind), c.particle, c.axis);
    if (!seen.insert(key).second) {
      throw Error(ErrorKind::basis_malformed, "duplicate coordinate " + std::string(c.kind == Kind::position ? "x" : "p") +
                                                  std::to_string(c.axis) + "@" + std::to_string(c.particle));
    }
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (conjugate_of(i) < 0) {
      throw Error(ErrorKind::basis_malformed, "unpaired coordinate " + label(i));
    }
  }
}

int BasisDescriptor::index_of(const Coord& c) const noexcept {
  auto it = std::find(entries_.begin(), entries_.end(), c);
  return it == entries_.end() ? -1 : static_cast<int>(it - entries_.begin());
}

int BasisDescriptor::conjugate_of(std::size_t i) const {
  const Coord& c = entries_.at(i);
  Kind other = c.kind == Kind::position ? Kind::momentum : Kind::position;
  return index_of({other, c.particle, c.axis});
}

bool BasisDescriptor::has_particle(int particle) const noexcept {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const Coord& c) { return c.particle == particle; });
}

std::vector<int> BasisDescriptor::permutation_to(const BasisDescriptor& other) const {
  if (other.size() != size()) {
    throw Error(ErrorKind::basis_malformed, "bases differ in length");
  }
  std::vector<int> perm(size());
  for (std::size_t i = 0; i < size(); ++i) {
    int j = index_of(other[i]);
    if (j < 0) {
      throw Error(ErrorKind::basis_malformed, "label " + other.label(i) + " missing from source basis");
    }
    perm[i] = j;
  }
  return perm;
}

std::string BasisDescriptor::label(std::size_t i) const {
  const Coord& c = entries_.at(i);
  return std::string(c.kind == Kind::position ? "x" : "p") + std::to_string(c.axis) + "@" +
         std::to_string(c.particle);
}

std::vector<std::string> BasisDescriptor::labels() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(label(i));
  return out;
}

Coord BasisDescriptor::parse_label(std::string_view text) {
  auto bad = [&] { return Error(ErrorKind::parse, "bad basis label '" + std::string(text) + "'"); };
  while (!text.empty() && (text.front() == ' ' || text.front() == '"')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '"' || text.back() == '\r')) text.remove_suffix(1);
  if (text.size() < 4) throw bad();
  Coord c{};
  if (text[0] == 'x') {
    c.kind = Kind::position;
  } else if (text[0] == 'p') {
    c.kind = Kind::momentum;
  } else {
    throw bad();
  }
  auto at = text.find('@');
  if (at == std::string_view::npos) throw bad();
  auto axis = text.substr(1, at - 1);
  auto particle = text.substr(at + 1);
  auto r1 = std::from_chars(axis.data(), axis.data() + axis.size(), c.axis);
  auto r2 = std::from_chars(particle.data(), particle.data() + particle.size(), c.particle);
  if (r1.ec != std::errc{} || r1.ptr != axis.data() + axis.size() || r2.ec != std::errc{} ||
      r2.ptr != particle.data() + particle.size()) {
    throw bad();
  }
  return c;
}

BasisDescriptor BasisDescriptor::from_labels(const std::vector<std::string>& labels) {
  std::vector<Coord> entries;
  entries.reserve(labels.size());
  for (const auto& l : labels) entries.push_back(parse_label(l));
  return BasisDescriptor(std::move(entries));
}

namespace bases {

namespace {
constexpr Kind X = Kind::position;
constexpr Kind P = Kind::momentum;
}  // namespace

BasisDescriptor single_mode() { return BasisDescriptor({{X, 1, 1}, {P, 1, 1}}); }

BasisDescriptor two_mode() {
  return BasisDescriptor({{X, 1, 1}, {P, 1, 1}, {X, 2, 1}, {P, 2, 1}});
}

BasisDescriptor planar_particle() {
  return BasisDescriptor({{X, 1, 1}, {X, 1, 2}, {P, 1, 1}, {P, 1, 2}});
}

BasisDescriptor particle_blocked_pair() {
  return BasisDescriptor({{X, 1, 1}, {X, 1, 2}, {P, 1, 1}, {P, 1, 2},
                          {X, 2, 1}, {X, 2, 2}, {P, 2, 1}, {P, 2, 2}});
}

BasisDescriptor component_interleaved_pair() {
  return BasisDescriptor({{X, 1, 1}, {P, 1, 1}, {X, 1, 2}, {P, 1, 2},
                          {X, 2, 1}, {P, 2, 1}, {X, 2, 2}, {P, 2, 2}});
}

}  // namespace bases

}  // namespace ncent
