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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kakeya/error.hpp"
#include "kakeya/gf.hpp"
#include "kakeya/polymethod.hpp"
#include "kakeya/space.hpp"

namespace kakeya {

enum class RingKind { PolyModXk, IntModPk };

/// Element of a finite local ring, packed as sum c_i r^i where r is the
/// residue field size and c_i are the digits: polynomial coefficients for
/// F[x]/x^k, base-p digits for Z/p^k.
using RingElem = std::uint64_t;

class Ring {
 public:
  static Ring poly_mod_xk(FieldPtr field, unsigned k);
  static Ring int_mod_pk(std::uint32_t p, unsigned k);

  RingKind kind() const noexcept { return kind_; }
  unsigned k() const noexcept { return k_; }
  std::uint64_t size() const noexcept { return size_; }
  /// q for F_q[x]/x^k, p for Z/p^k.
  std::uint64_t residue_size() const noexcept { return r_; }
  /// F for F[x]/x^k and F_p for Z/p^k.
  const FieldPtr& residue_field() const noexcept { return field_; }
  /// x, resp. p.
  RingElem maximal_ideal_generator() const noexcept { return k_ > 1 ? r_ : 0; }
  std::uint64_t unit_count() const noexcept { return size_ - size_ / r_; }

  RingElem add(RingElem a, RingElem b) const noexcept;
  RingElem sub(RingElem a, RingElem b) const noexcept;
  RingElem neg(RingElem a) const noexcept;
  RingElem mul(RingElem a, RingElem b) const noexcept;
  bool is_unit(RingElem a) const noexcept { return a % r_ != 0; }
  /// Throws NonUnitDivisor.
  RingElem inv(RingElem a) const;
  RingElem div(RingElem a, RingElem b) const;
  /// Largest j with a in m^j (k for zero).
  unsigned valuation(RingElem a) const noexcept;
  std::vector<std::uint32_t> digits(RingElem a) const;
  RingElem from_digits(const std::vector<std::uint32_t>& d) const;
  std::string to_string(RingElem a) const;
  std::string describe() const;

 private:
  Ring() = default;
  RingKind kind_ = RingKind::PolyModXk;
  FieldPtr field_;
  unsigned k_ = 1;
  std::uint64_t r_ = 0;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> pow_;  // r^i
};

/// Points of R^n packed as sum a_i |R|^(n-1-i).
class RingSpace {
 public:
  RingSpace(Ring ring, std::size_t n, std::uint64_t cap = Caps{}.enumeration);
  const Ring& ring() const noexcept { return ring_; }
  std::size_t dim() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return size_; }
  PointIndex encode(const std::vector<RingElem>& x) const;
  std::vector<RingElem> decode(PointIndex idx) const;
  bool in_maximal_ideal(const std::vector<RingElem>& x) const noexcept;

 private:
  Ring ring_;
  std::size_t n_;
  std::uint64_t size_;
};

/// Canonical representative of (R^n - m^n)/R*: first unit coordinate is 1.
struct RingDirection {
  std::vector<RingElem> rep;
  bool operator==(const RingDirection&) const = default;
};
/// Throws DegenerateDirection for v in m^n.
RingDirection canonical_ring_direction(const Ring& ring, std::vector<RingElem> v);
/// Canonical representatives in increasing packed order.
std::vector<RingDirection> ring_directions(const RingSpace& space);
/// (|R|^n - |m|^n) / |R*|
std::uint64_t ring_direction_count(const Ring& ring, std::size_t n);

/// {a + t b : t in R}, sorted; throws DegenerateDirection for b in m^n.
PointSet ring_line_points(const RingSpace& space, const std::vector<RingElem>& a, const std::vector<RingElem>& b);

struct RingLineCheck {
  bool kakeya = false;
  std::optional<RingDirection> missing;
  /// For each direction (ring_directions order) the first base point, in
  /// packed order, whose line lies in E.
  std::vector<std::optional<PointIndex>> bases;
};
RingLineCheck ring_kakeya_check(const RingSpace& space, const PointSet& E);

/// Coefficient isomorphism R^n -> F^{nk} for R = F[x]/x^k; X is the k x k
/// matrix of multiplication by x on coefficient vectors.
struct PhiEmbedding {
  Matrix X;
  bool nilpotent = false;  // X^k = 0
  std::size_t target_dim = 0;
};
/// Throws UnsupportedRing for Z/p^k.
PhiEmbedding phi_embed(const RingSpace& space);
PointIndex phi_point(const RingSpace& space, PointIndex p);
PointSet phi_pushforward(const RingSpace& space, const PointSet& E);

struct RingBoundReport {
  std::size_t set_size = 0;
  std::uint64_t f_directions = 0;
  /// F-directions v for which phi(a) + F v was found inside phi(E) via the
  /// R-line through v_0.
  std::uint64_t directions_confirmed = 0;
  bool phi_kakeya = false;
  VanishingCertificate certificate;
  BigInt bound;               // C(q - 1 + nk, nk)
  double c = 0;               // (bound / |R|^n)^{1/(nk)}
  BigInt naive_slice_bound;   // C(q - 1 + n, n)
  bool satisfied = false;
};
/// Throws NotKakeya when E is not R-Kakeya, UnsupportedRing for Z/p^k.
RingBoundReport ring_bound_check(const RingSpace& space, const PointSet& E, const Caps& caps = {});

/// log|E| / log|R|; throws EmptySet.
double minkowski_dim(const Ring& ring, std::size_t set_size);
/// |E_k| q^{-nk} for a nested family indexed by k = 1, 2, ...
std::vector<double> besicovitch_trend(std::uint64_t q, std::size_t n, const std::vector<std::size_t>& sizes);

/// One random line per direction, then greedy removal of points (random
/// order) while the set stays Kakeya.
PointSet grow_minimal_kakeya(const RingSpace& space, std::uint64_t seed);

std::string_view ring_kind_name(RingKind k) noexcept;
nlohmann::json ring_points_json(const RingSpace& space, const PointSet& E);
nlohmann::json to_json(const RingBoundReport& r);

}  // namespace kakeya
