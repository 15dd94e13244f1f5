/*
 * Copyright 2026 The kakeya-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kakeya/error.hpp"
#include "kakeya/gf.hpp"

namespace kakeya {

/// Packed point of F^n: sum x_i q^(n-1-i). Index order equals lexicographic
/// order on coordinate vectors.
using PointIndex = std::uint64_t;
using Point = std::vector<Elem>;
/// Sorted, duplicate-free list of packed points.
using PointSet = std::vector<PointIndex>;

/// F_q^n with point packing. Construction fails when q^n exceeds the cap.
class AffineSpace {
 public:
  AffineSpace(FieldPtr field, std::size_t n, std::uint64_t cap = Caps{}.enumeration);

  const FieldPtr& field() const noexcept { return field_; }
  const Field& f() const noexcept { return *field_; }
  std::size_t dim() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t q() const noexcept { return field_->q(); }

  PointIndex encode(std::span<const Elem> x) const;
  Point decode(PointIndex idx) const;
  void decode_into(PointIndex idx, std::span<Elem> out) const noexcept;
  /// x + t*d
  Point add_scaled(std::span<const Elem> x, Elem t, std::span<const Elem> d) const;

 private:
  FieldPtr field_;
  std::size_t n_;
  std::uint64_t size_;
};

/// Decoded coordinates of every point, row-major (point i at [i*n, (i+1)*n)).
std::vector<Elem> coordinate_table(const AffineSpace& space);

/// Sorts and deduplicates.
PointSet make_point_set(std::vector<PointIndex> points);
bool contains(const PointSet& set, PointIndex p);
/// Dense membership mask over [0, universe).
std::vector<char> membership(const PointSet& set, std::uint64_t universe);

}  // namespace kakeya
