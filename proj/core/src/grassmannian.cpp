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

#include <string>

#include "kakeya/geometry.hpp"

namespace kakeya {

namespace {

std::vector<Elem> flat_key(const std::vector<Point>& rows) {
  std::vector<Elem> key;
  for (const auto& r : rows) key.insert(key.end(), r.begin(), r.end());
  return key;
}

}  // namespace

Grassmannian::Grassmannian(const AffineSpace& space, std::size_t k, std::uint64_t cap)
    : space_(space), k_(k), planes_(enum_kplanes(space, k, true, cap)) {
  for (std::size_t i = 0; i < planes_.size(); ++i) index_.emplace(flat_key(planes_[i].basis), i);
}

std::size_t Grassmannian::index_of(const std::vector<Point>& spanning) const {
  const Point origin(space_.dim(), 0);
  const KPlane plane = make_kplane(space_, spanning, origin);
  require(plane.k() == k_, ErrorCode::DimensionMismatch,
          "span has dimension " + std::to_string(plane.k()) + ", expected " + std::to_string(k_));
  auto it = index_.find(flat_key(plane.basis));
  require(it != index_.end(), ErrorCode::InternalError, "subspace missing from Grassmannian");
  return it->second;
}

}  // namespace kakeya
