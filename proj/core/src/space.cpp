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

#include "kakeya/space.hpp"

#include <algorithm>
#include <string>

namespace kakeya {

AffineSpace::AffineSpace(FieldPtr field, std::size_t n, std::uint64_t cap)
    : field_(std::move(field)), n_(n), size_(checked_pow(field_->q(), static_cast<unsigned>(n), cap, "q^n")) {}

PointIndex AffineSpace::encode(std::span<const Elem> x) const {
  require(x.size() == n_, ErrorCode::DimensionMismatch,
          "point has " + std::to_string(x.size()) + " coordinates, expected " + std::to_string(n_));
  PointIndex idx = 0;
  for (Elem c : x) {
    require(c < field_->q(), ErrorCode::InvalidArgument, "coordinate is not a field element");
    idx = idx * field_->q() + c;
  }
  return idx;
}

void AffineSpace::decode_into(PointIndex idx, std::span<Elem> out) const noexcept {
  const std::uint64_t q = field_->q();
  for (std::size_t i = n_; i-- > 0;) {
    out[i] = static_cast<Elem>(idx % q);
    idx /= q;
  }
}

Point AffineSpace::decode(PointIndex idx) const {
  Point x(n_);
  decode_into(idx, x);
  return x;
}

Point AffineSpace::add_scaled(std::span<const Elem> x, Elem t, std::span<const Elem> d) const {
  require(x.size() == n_ && d.size() == n_, ErrorCode::DimensionMismatch, "vector dimension");
  Point r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = field_->add(x[i], field_->mul(t, d[i]));
  return r;
}

std::vector<Elem> coordinate_table(const AffineSpace& space) {
  const std::size_t n = space.dim();
  std::vector<Elem> t(space.size() * n);
  for (PointIndex i = 0; i < space.size(); ++i) space.decode_into(i, std::span<Elem>(t).subspan(i * n, n));
  return t;
}

PointSet make_point_set(std::vector<PointIndex> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

bool contains(const PointSet& set, PointIndex p) { return std::binary_search(set.begin(), set.end(), p); }

std::vector<char> membership(const PointSet& set, std::uint64_t universe) {
  std::vector<char> mask(universe, 0);
  for (auto p : set) {
    require(p < universe, ErrorCode::InvalidArgument, "point outside the ambient space");
    mask[p] = 1;
  }
  return mask;
}

}  // namespace kakeya
