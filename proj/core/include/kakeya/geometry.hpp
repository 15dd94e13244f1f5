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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "kakeya/linalg.hpp"
#include "kakeya/poly.hpp"
#include "kakeya/space.hpp"

namespace kakeya {

// ------------------------------------------------------------ directions

/// Point of P^{n-1}(F): nonzero vector scaled so its first nonzero entry is 1.
struct Direction {
  Point rep;
  bool operator==(const Direction&) const = default;
  auto operator<=>(const Direction&) const = default;
};

/// Throws InvalidArgument for the zero vector.
Direction canonical_direction(const Field& f, std::span<const Elem> v);

/// (q^n - 1)/(q - 1), throwing EnumerationTooLarge above cap.
std::uint64_t direction_count(std::uint64_t q, std::size_t n, std::uint64_t cap = Caps{}.enumeration);

/// Every direction of F^n in lexicographic order.
std::vector<Direction> enum_directions(const FieldPtr& field, std::size_t n,
                                       std::uint64_t cap = Caps{}.enumeration);

// ----------------------------------------------------------------- lines

/// Affine line with canonical base: the lexicographically least point, which
/// is the point whose coordinate at the direction's leading index is zero.
struct Line {
  Point base;
  Direction dir;
  bool operator==(const Line&) const = default;
  auto operator<=>(const Line&) const = default;
};

Line make_line(const AffineSpace& space, std::span<const Elem> base, std::span<const Elem> dir);
Line canonical(const AffineSpace& space, const Line& line);
/// The q points of the line, sorted.
PointSet line_points(const AffineSpace& space, const Line& line);
/// All (q^n-1)/(q-1) * q^(n-1) lines, grouped by direction.
std::vector<Line> all_lines(const AffineSpace& space);
/// One line per direction through x.
std::vector<Line> lines_through(const AffineSpace& space, std::span<const Elem> x);

// ------------------------------------------------------------- k-planes

/// Coset a + span(basis). The basis is in reduced row echelon form and the
/// offset is zero in every pivot coordinate, which makes it the
/// lexicographically least point of the coset.
struct KPlane {
  std::vector<Point> basis;
  std::vector<std::size_t> pivots;
  Point offset;
  std::size_t k() const noexcept { return basis.size(); }
  bool operator==(const KPlane& o) const { return basis == o.basis && offset == o.offset; }
};

/// Canonical coset from any spanning set (which must have rank k >= 1).
KPlane make_kplane(const AffineSpace& space, const std::vector<Point>& spanning,
                   std::span<const Elem> offset);
KPlane canonical(const AffineSpace& space, const KPlane& plane);
PointSet kplane_points(const AffineSpace& space, const KPlane& plane);
/// Canonical representative of x + span(plane.basis).
Point coset_offset(const AffineSpace& space, const KPlane& plane, std::span<const Elem> x);

/// Numbers the cosets of a subspace (given in reduced echelon form) by their
/// canonical offsets restricted to the non-pivot coordinates, so coset order
/// is the lexicographic order of canonical offsets.
class CosetIndexer {
 public:
  CosetIndexer(const AffineSpace& space, const KPlane& subspace);
  std::uint64_t coset_count() const noexcept { return count_; }
  std::uint64_t coset_of(std::span<const Elem> x) const noexcept;
  Point offset(std::uint64_t coset) const;
  /// Per-coset sums of values[x] over all points x, accumulated in
  /// increasing point order; coords is coordinate_table(space).
  std::vector<double> sums(std::span<const double> values, std::span<const Elem> coords) const;
  /// Per-coset counts of points in the mask.
  std::vector<std::uint64_t> hits(const std::vector<char>& mask, std::span<const Elem> coords) const;

 private:
  AffineSpace space_;
  std::vector<Point> basis_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> free_;
  std::uint64_t count_ = 1;
};

/// The one-dimensional subspace spanned by a direction, as a KPlane.
KPlane direction_subspace(const Direction& d);

/// Gaussian binomial [n choose k]_q, throwing EnumerationTooLarge above cap.
std::uint64_t gaussian_binomial(std::uint64_t q, std::size_t n, std::size_t k,
                                std::uint64_t cap = Caps{}.enumeration);

/// All k-dimensional subspaces (through_origin) or all their q^{n-k} cosets,
/// subspaces ordered lexicographically by flattened echelon basis and cosets
/// by offset. For k = 1 the subspace order matches enum_directions.
std::vector<KPlane> enum_kplanes(const AffineSpace& space, std::size_t k, bool through_origin,
                                 std::uint64_t cap = 1'000'000);

/// Subspaces of F^n with an index lookup from any spanning set.
class Grassmannian {
 public:
  Grassmannian(const AffineSpace& space, std::size_t k, std::uint64_t cap = 1'000'000);

  const AffineSpace& space() const noexcept { return space_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return planes_.size(); }
  const std::vector<KPlane>& planes() const noexcept { return planes_; }
  const KPlane& operator[](std::size_t i) const { return planes_[i]; }
  /// Index of span(spanning); the span must have dimension k.
  std::size_t index_of(const std::vector<Point>& spanning) const;

 private:
  AffineSpace space_;
  std::size_t k_;
  std::vector<KPlane> planes_;
  std::map<std::vector<Elem>, std::size_t> index_;
};

// ------------------------------------------------------ parametric curves

/// t -> (gamma_1(t), ..., gamma_n(t)); not all components constant.
class ParametricCurve {
 public:
  explicit ParametricCurve(std::vector<UniPoly> components);
  static ParametricCurve from_line(const AffineSpace& space, const Line& line);

  const std::vector<UniPoly>& components() const noexcept { return comps_; }
  std::size_t dim() const noexcept { return comps_.size(); }
  const FieldPtr& field() const noexcept { return comps_.front().field(); }
  /// Max component degree, an upper bound on the geometric degree.
  unsigned declared_degree() const noexcept { return degree_; }
  Point at(Elem t) const;

 private:
  std::vector<UniPoly> comps_;
  unsigned degree_ = 0;
};

struct CurveImage {
  PointSet points;
  /// Number of parameters t mapping to each image point.
  std::map<PointIndex, std::uint32_t> fiber_sizes;
};
CurveImage curve_points(const AffineSpace& space, const ParametricCurve& curve);

// -------------------------------------------------------------- varieties

/// Zero set of explicit polynomials with user-declared dimension and degree.
/// Construction enumerates the F-points and rejects declarations that break
/// the point-count bound |V(F)| <= degree * (q+1)^dim.
class Variety {
 public:
  Variety(const AffineSpace& space, std::vector<Polynomial> defining, unsigned declared_dim,
          unsigned declared_degree);

  const std::vector<Polynomial>& defining() const noexcept { return defining_; }
  unsigned declared_dim() const noexcept { return dim_; }
  unsigned declared_degree() const noexcept { return degree_; }
  const PointSet& points() const noexcept { return points_; }
  bool contains_point(PointIndex p) const { return kakeya::contains(points_, p); }

 private:
  std::vector<Polynomial> defining_;
  unsigned dim_, degree_;
  PointSet points_;
};

/// The hyperplane {x_n = 0} of F^n as a variety.
Variety coordinate_hyperplane(const AffineSpace& space);

/// True iff P o gamma is the zero polynomial for every defining P (symbolic
/// containment, not containment of F-points).
bool curve_in_variety(const ParametricCurve& curve, const Variety& variety);
bool curve_in_zero_set(const ParametricCurve& curve, const std::vector<Polynomial>& polys);

/// Componentwise T o gamma for an n x N matrix T.
ParametricCurve project_curve(const ParametricCurve& curve, const Matrix& map);

struct BezoutCount {
  std::uint64_t count = 0;            // roots in F counted with multiplicity
  std::map<Elem, unsigned> roots;     // root -> multiplicity
  int composed_degree = 0;            // deg(Q o gamma)
};
/// Throws CurveContained when Q o gamma vanishes identically.
BezoutCount bezout_count(const ParametricCurve& curve, const Polynomial& q);

// ------------------------------------------------------------------ conics

/// A x^2 + B xy + C y^2 + D x + E y + G, normalized so the first nonzero
/// coefficient is 1.
struct Conic {
  std::array<Elem, 6> coeffs{};
  bool degenerate = false;
  bool operator==(const Conic&) const = default;
};

/// Every conic l*l' + c with l' a non-constant linear form and c a constant,
/// where l = a x + b y + e is given as (a, b, e). Degenerate members
/// (c = 0, or l' parallel to l) are flagged and dropped unless requested.
std::vector<Conic> conics_with_asymptote(const FieldPtr& field, std::array<Elem, 3> asymptote,
                                         bool include_degenerate);
PointSet conic_points(const AffineSpace& plane, const Conic& conic);
Polynomial conic_polynomial(const FieldPtr& field, const Conic& conic);

// ----------------------------------------------------- projective space

/// Point of P^n(F) in the affine-chart decomposition F^n + P^{n-1}(F).
struct ProjectivePoint {
  bool at_infinity = false;
  Point coords;  // affine coordinates, or a canonical direction at infinity
  bool operator==(const ProjectivePoint&) const = default;
};
/// F^n first (lexicographic), then the points at infinity.
std::vector<ProjectivePoint> enum_projective_points(const FieldPtr& field, std::size_t n,
                                                    std::uint64_t cap = Caps{}.enumeration);

// ---------------------------------------------------------- serialization

nlohmann::json to_json(const Line& line);
nlohmann::json to_json(const KPlane& plane);
nlohmann::json to_json(const ParametricCurve& curve);

}  // namespace kakeya
