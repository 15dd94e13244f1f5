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

#include "kakeya/geometry.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "kakeya/error.hpp"

namespace kakeya {

// ------------------------------------------------------------ directions

Direction canonical_direction(const Field& f, std::span<const Elem> v) {
  auto lead = std::find_if(v.begin(), v.end(), [](Elem c) { return c != 0; });
  require(lead != v.end(), ErrorCode::InvalidArgument, "the zero vector has no direction");
  const Elem inv = f.inv(*lead);
  Direction d;
  d.rep.reserve(v.size());
  for (Elem c : v) d.rep.push_back(f.mul(c, inv));
  return d;
}

std::uint64_t direction_count(std::uint64_t q, std::size_t n, std::uint64_t cap) {
  // Sum of q^i for i < n, checked.
  std::uint64_t total = 0, term = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total += term;
    require(total <= cap, ErrorCode::EnumerationTooLarge,
            "direction count exceeds cap " + std::to_string(cap));
    if (i + 1 < n) {
      require(term <= cap / q, ErrorCode::EnumerationTooLarge, "direction count exceeds cap");
      term *= q;
    }
  }
  return total;
}

std::vector<Direction> enum_directions(const FieldPtr& field, std::size_t n, std::uint64_t cap) {
  require(n >= 1, ErrorCode::InvalidArgument, "dimension must be >= 1");
  const std::uint64_t count = direction_count(field->q(), n, cap);
  std::vector<Direction> out;
  out.reserve(count);
  // Leading 1 at position i, zeros before, anything after. Lex order puts the
  // leading position furthest right first.
  for (std::size_t lead = n; lead-- > 0;) {
    const std::size_t tail = n - lead - 1;
    const AffineSpace tail_space(field, tail, cap);
    for (PointIndex t = 0; t < tail_space.size(); ++t) {
      Direction d;
      d.rep.assign(n, 0);
      d.rep[lead] = 1;
      tail_space.decode_into(t, std::span<Elem>(d.rep).subspan(lead + 1));
      out.push_back(std::move(d));
    }
  }
  require(out.size() == count, ErrorCode::InternalError, "direction enumeration count");
  return out;
}

// ----------------------------------------------------------------- lines

namespace {

std::size_t leading_index(std::span<const Elem> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) return i;
  }
  fail(ErrorCode::InvalidArgument, "zero vector");
}

}  // namespace

Line make_line(const AffineSpace& space, std::span<const Elem> base, std::span<const Elem> dir) {
  require(base.size() == space.dim() && dir.size() == space.dim(), ErrorCode::DimensionMismatch,
          "line dimension");
  Line line{Point(base.begin(), base.end()), canonical_direction(space.f(), dir)};
  return canonical(space, line);
}

Line canonical(const AffineSpace& space, const Line& line) {
  const std::size_t i = leading_index(line.dir.rep);
  Line out = line;
  out.dir = canonical_direction(space.f(), line.dir.rep);
  out.base = space.add_scaled(line.base, space.f().neg(line.base[i]), out.dir.rep);
  return out;
}

PointSet line_points(const AffineSpace& space, const Line& line) {
  std::vector<PointIndex> pts;
  pts.reserve(space.q());
  for (std::uint64_t t = 0; t < space.q(); ++t) {
    pts.push_back(space.encode(space.add_scaled(line.base, static_cast<Elem>(t), line.dir.rep)));
  }
  return make_point_set(std::move(pts));
}

std::vector<Line> all_lines(const AffineSpace& space) {
  std::vector<Line> out;
  for (const auto& d : enum_directions(space.field(), space.dim())) {
    const std::size_t lead = leading_index(d.rep);
    for (PointIndex idx = 0; idx < space.size(); ++idx) {
      Point b = space.decode(idx);
      if (b[lead] != 0) continue;
      out.push_back(Line{std::move(b), d});
    }
  }
  return out;
}

std::vector<Line> lines_through(const AffineSpace& space, std::span<const Elem> x) {
  std::vector<Line> out;
  for (const auto& d : enum_directions(space.field(), space.dim())) {
    out.push_back(make_line(space, x, d.rep));
  }
  return out;
}

// ------------------------------------------------------------- k-planes

KPlane make_kplane(const AffineSpace& space, const std::vector<Point>& spanning,
                   std::span<const Elem> offset) {
  const std::size_t n = space.dim();
  require(!spanning.empty(), ErrorCode::InvalidArgument, "empty spanning set");
  Matrix m(space.field(), spanning.size(), n);
  for (std::size_t r = 0; r < spanning.size(); ++r) {
    require(spanning[r].size() == n, ErrorCode::DimensionMismatch, "spanning vector dimension");
    for (std::size_t c = 0; c < n; ++c) m.at(r, c) = spanning[r][c];
  }
  Echelon e = row_reduce(std::move(m));
  require(e.rank >= 1, ErrorCode::InvalidArgument, "spanning set is zero");
  KPlane plane;
  for (std::size_t r = 0; r < e.rank; ++r) plane.basis.push_back(e.reduced.row(r));
  plane.pivots = e.pivot_cols;
  plane.offset = coset_offset(space, plane, offset);
  return plane;
}

KPlane canonical(const AffineSpace& space, const KPlane& plane) {
  return make_kplane(space, plane.basis, plane.offset);
}

Point coset_offset(const AffineSpace& space, const KPlane& plane, std::span<const Elem> x) {
  require(x.size() == space.dim(), ErrorCode::DimensionMismatch, "offset dimension");
  Point y(x.begin(), x.end());
  for (std::size_t r = 0; r < plane.basis.size(); ++r) {
    const Elem c = y[plane.pivots[r]];
    if (c != 0) y = space.add_scaled(y, space.f().neg(c), plane.basis[r]);
  }
  return y;
}

PointSet kplane_points(const AffineSpace& space, const KPlane& plane) {
  const std::size_t k = plane.basis.size();
  const AffineSpace coeff_space(space.field(), k);
  std::vector<PointIndex> pts;
  pts.reserve(coeff_space.size());
  Point c(k);
  for (PointIndex idx = 0; idx < coeff_space.size(); ++idx) {
    coeff_space.decode_into(idx, c);
    Point x = plane.offset;
    for (std::size_t r = 0; r < k; ++r) {
      if (c[r] != 0) x = space.add_scaled(x, c[r], plane.basis[r]);
    }
    pts.push_back(space.encode(x));
  }
  return make_point_set(std::move(pts));
}

CosetIndexer::CosetIndexer(const AffineSpace& space, const KPlane& subspace)
    : space_(space), basis_(subspace.basis), pivots_(subspace.pivots) {
  const std::size_t n = space.dim();
  std::vector<char> is_pivot(n, 0);
  for (auto p : pivots_) is_pivot[p] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    if (!is_pivot[c]) free_.push_back(c);
  }
  for (std::size_t i = 0; i < free_.size(); ++i) count_ *= space.q();
}

std::uint64_t CosetIndexer::coset_of(std::span<const Elem> x) const noexcept {
  const Field& f = space_.f();
  std::uint64_t idx = 0;
  for (auto c : free_) {
    Elem y = x[c];
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const Elem t = x[pivots_[r]];
      if (t != 0 && basis_[r][c] != 0) y = f.sub(y, f.mul(t, basis_[r][c]));
    }
    idx = idx * space_.q() + y;
  }
  return idx;
}

Point CosetIndexer::offset(std::uint64_t coset) const {
  Point o(space_.dim(), 0);
  for (std::size_t i = free_.size(); i-- > 0;) {
    o[free_[i]] = static_cast<Elem>(coset % space_.q());
    coset /= space_.q();
  }
  return o;
}

std::vector<double> CosetIndexer::sums(std::span<const double> values, std::span<const Elem> coords) const {
  const std::size_t n = space_.dim();
  std::vector<double> s(count_, 0.0);
  for (PointIndex x = 0; x < space_.size(); ++x) s[coset_of(coords.subspan(x * n, n))] += values[x];
  return s;
}

std::vector<std::uint64_t> CosetIndexer::hits(const std::vector<char>& mask,
                                              std::span<const Elem> coords) const {
  const std::size_t n = space_.dim();
  std::vector<std::uint64_t> h(count_, 0);
  for (PointIndex x = 0; x < space_.size(); ++x) {
    if (mask[x]) ++h[coset_of(coords.subspan(x * n, n))];
  }
  return h;
}

KPlane direction_subspace(const Direction& d) {
  KPlane k;
  k.basis = {d.rep};
  k.pivots = {leading_index(d.rep)};
  k.offset.assign(d.rep.size(), 0);
  return k;
}

std::uint64_t gaussian_binomial(std::uint64_t q, std::size_t n, std::size_t k, std::uint64_t cap) {
  require(k <= n, ErrorCode::InvalidArgument, "k > n");
  // Product formula evaluated in 128-bit, dividing as we go keeps the partial
  // products integral: the running value after i steps is [n choose i]_q-ish
  // only up to rational factors, so use unsigned __int128 numerators.
  unsigned __int128 num = 1, den = 1;
  for (std::size_t i = 0; i < k; ++i) {
    unsigned __int128 a = 1, b = 1;
    for (std::size_t j = 0; j < n - i; ++j) a *= q;
    for (std::size_t j = 0; j < k - i; ++j) b *= q;
    num *= (a - 1);
    den *= (b - 1);
    const unsigned __int128 limit = static_cast<unsigned __int128>(cap) << 40;
    require(num <= limit, ErrorCode::EnumerationTooLarge, "Gaussian binomial exceeds cap");
  }
  const unsigned __int128 value = num / den;
  require(value <= cap, ErrorCode::EnumerationTooLarge,
          "Gaussian binomial exceeds cap " + std::to_string(cap));
  return static_cast<std::uint64_t>(value);
}

namespace {

// Enumerate reduced echelon bases for one pivot pattern.
void echelon_for_pivots(const AffineSpace& space, const std::vector<std::size_t>& pivots,
                        std::vector<KPlane>& out) {
  const std::size_t n = space.dim(), k = pivots.size();
  std::vector<char> is_pivot(n, 0);
  for (auto p : pivots) is_pivot[p] = 1;
  std::vector<std::pair<std::size_t, std::size_t>> free_slots;  // (row, col)
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = pivots[r] + 1; c < n; ++c) {
      if (!is_pivot[c]) free_slots.emplace_back(r, c);
    }
  }
  const AffineSpace slot_space(space.field(), free_slots.size());
  Point vals(free_slots.size());
  for (PointIndex idx = 0; idx < slot_space.size(); ++idx) {
    slot_space.decode_into(idx, vals);
    KPlane plane;
    plane.basis.assign(k, Point(n, 0));
    plane.pivots = pivots;
    for (std::size_t r = 0; r < k; ++r) plane.basis[r][pivots[r]] = 1;
    for (std::size_t s = 0; s < free_slots.size(); ++s) {
      plane.basis[free_slots[s].first][free_slots[s].second] = vals[s];
    }
    plane.offset.assign(n, 0);
    out.push_back(std::move(plane));
  }
}

void pivot_subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                   const AffineSpace& space, std::vector<KPlane>& out) {
  if (cur.size() == k) {
    echelon_for_pivots(space, cur, out);
    return;
  }
  for (std::size_t c = start; c + (k - cur.size()) <= n; ++c) {
    cur.push_back(c);
    pivot_subsets(n, k, c + 1, cur, space, out);
    cur.pop_back();
  }
}

std::vector<Elem> flatten(const std::vector<Point>& rows) {
  std::vector<Elem> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return flat;
}

}  // namespace

std::vector<KPlane> enum_kplanes(const AffineSpace& space, std::size_t k, bool through_origin,
                                 std::uint64_t cap) {
  const std::size_t n = space.dim();
  require(k >= 1 && k <= n, ErrorCode::InvalidArgument, "need 1 <= k <= n");
  const std::uint64_t count = gaussian_binomial(space.q(), n, k, cap);
  std::vector<KPlane> subspaces;
  subspaces.reserve(count);
  std::vector<std::size_t> cur;
  pivot_subsets(n, k, 0, cur, space, subspaces);
  require(subspaces.size() == count, ErrorCode::InternalError, "Grassmannian enumeration count");
  std::sort(subspaces.begin(), subspaces.end(),
            [](const KPlane& a, const KPlane& b) { return flatten(a.basis) < flatten(b.basis); });
  if (through_origin) return subspaces;

  const std::uint64_t cosets = checked_pow(space.q(), static_cast<unsigned>(n - k), cap, "cosets");
  require(count <= cap / cosets, ErrorCode::EnumerationTooLarge, "coset enumeration exceeds cap");
  std::vector<KPlane> out;
  out.reserve(count * cosets);
  const AffineSpace free_space(space.field(), n - k);
  Point vals(n - k);
  for (const auto& sub : subspaces) {
    std::vector<char> is_pivot(n, 0);
    for (auto p : sub.pivots) is_pivot[p] = 1;
    for (PointIndex idx = 0; idx < free_space.size(); ++idx) {
      free_space.decode_into(idx, vals);
      KPlane plane = sub;
      std::size_t s = 0;
      for (std::size_t c = 0; c < n; ++c) plane.offset[c] = is_pivot[c] ? 0 : vals[s++];
      out.push_back(std::move(plane));
    }
  }
  return out;
}

// ------------------------------------------------------ parametric curves

ParametricCurve::ParametricCurve(std::vector<UniPoly> components) : comps_(std::move(components)) {
  require(!comps_.empty(), ErrorCode::InvalidArgument, "curve needs at least one component");
  bool nonconstant = false;
  const FieldPtr& f = comps_.front().field();
  require(f != nullptr, ErrorCode::InvalidArgument, "curve component without a field");
  for (const auto& c : comps_) {
    require(c.field() == nullptr || *c.field() == *f, ErrorCode::InvalidArgument,
            "curve components over different fields");
    if (c.degree() >= 1) nonconstant = true;
    degree_ = std::max<unsigned>(degree_, c.degree() < 0 ? 0u : static_cast<unsigned>(c.degree()));
  }
  require(nonconstant, ErrorCode::InvalidArgument, "all curve components are constant");
}

ParametricCurve ParametricCurve::from_line(const AffineSpace& space, const Line& line) {
  std::vector<UniPoly> comps;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    comps.emplace_back(space.field(), std::vector<Elem>{line.base[i], line.dir.rep[i]});
  }
  return ParametricCurve(std::move(comps));
}

Point ParametricCurve::at(Elem t) const {
  Point x;
  x.reserve(comps_.size());
  for (const auto& c : comps_) x.push_back(c.eval(t));
  return x;
}

CurveImage curve_points(const AffineSpace& space, const ParametricCurve& curve) {
  require(curve.dim() == space.dim(), ErrorCode::DimensionMismatch, "curve dimension");
  CurveImage img;
  std::vector<PointIndex> pts;
  pts.reserve(space.q());
  for (std::uint64_t t = 0; t < space.q(); ++t) {
    const PointIndex p = space.encode(curve.at(static_cast<Elem>(t)));
    pts.push_back(p);
    ++img.fiber_sizes[p];
  }
  img.points = make_point_set(std::move(pts));
  return img;
}

// -------------------------------------------------------------- varieties

Variety::Variety(const AffineSpace& space, std::vector<Polynomial> defining, unsigned declared_dim,
                 unsigned declared_degree)
    : defining_(std::move(defining)), dim_(declared_dim), degree_(declared_degree) {
  for (const auto& p : defining_) {
    require(p.n_vars() == space.dim(), ErrorCode::DimensionMismatch, "defining polynomial arity");
  }
  Point x(space.dim());
  for (PointIndex idx = 0; idx < space.size(); ++idx) {
    space.decode_into(idx, x);
    bool on = true;
    for (const auto& p : defining_) {
      if (p.eval(x) != 0) {
        on = false;
        break;
      }
    }
    if (on) points_.push_back(idx);
  }
  // |V(F)| <= d (q+1)^dim
  long double bound = declared_degree;
  for (unsigned i = 0; i < declared_dim; ++i) bound *= static_cast<long double>(space.q() + 1);
  require(static_cast<long double>(points_.size()) <= bound, ErrorCode::BadDeclaration,
          "variety has " + std::to_string(points_.size()) +
              " points, more than degree*(q+1)^dim allows for the declared dimension/degree");
}

Variety coordinate_hyperplane(const AffineSpace& space) {
  return Variety(space, {Polynomial::variable(space.field(), space.dim(), space.dim() - 1)},
                 static_cast<unsigned>(space.dim() - 1), 1);
}

bool curve_in_zero_set(const ParametricCurve& curve, const std::vector<Polynomial>& polys) {
  for (const auto& p : polys) {
    require(p.n_vars() == curve.dim(), ErrorCode::DimensionMismatch, "curve/polynomial dimension");
    if (!compose(p, curve.components()).is_zero()) return false;
  }
  return true;
}

bool curve_in_variety(const ParametricCurve& curve, const Variety& variety) {
  return curve_in_zero_set(curve, variety.defining());
}

ParametricCurve project_curve(const ParametricCurve& curve, const Matrix& map) {
  require(map.cols() == curve.dim(), ErrorCode::DimensionMismatch, "projection source dimension");
  const FieldPtr& f = curve.field();
  std::vector<UniPoly> comps;
  for (std::size_t r = 0; r < map.rows(); ++r) {
    UniPoly acc = UniPoly::constant(f, 0);
    for (std::size_t c = 0; c < map.cols(); ++c) {
      if (map.at(r, c) != 0) acc = acc + curve.components()[c].scaled(map.at(r, c));
    }
    comps.push_back(std::move(acc));
  }
  return ParametricCurve(std::move(comps));
}

BezoutCount bezout_count(const ParametricCurve& curve, const Polynomial& q) {
  require(q.n_vars() == curve.dim(), ErrorCode::DimensionMismatch, "curve/polynomial dimension");
  const UniPoly composed = compose(q, curve.components());
  require(!composed.is_zero(), ErrorCode::CurveContained, "the curve lies in {Q = 0}");
  BezoutCount out;
  out.composed_degree = composed.degree();
  const Field& f = *curve.field();
  for (std::uint64_t t = 0; t < f.q(); ++t) {
    const unsigned mult = composed.root_multiplicity(static_cast<Elem>(t));
    if (mult > 0) {
      out.roots[static_cast<Elem>(t)] = mult;
      out.count += mult;
    }
  }
  return out;
}

// ------------------------------------------------------------------ conics

namespace {

Conic normalized(const Field& f, std::array<Elem, 6> c) {
  auto lead = std::find_if(c.begin(), c.end(), [](Elem v) { return v != 0; });
  Conic out;
  if (lead == c.end()) return out;
  const Elem inv = f.inv(*lead);
  for (std::size_t i = 0; i < 6; ++i) out.coeffs[i] = f.mul(c[i], inv);
  return out;
}

}  // namespace

std::vector<Conic> conics_with_asymptote(const FieldPtr& field, std::array<Elem, 3> asymptote,
                                         bool include_degenerate) {
  const Field& f = *field;
  require(f.q() <= 16, ErrorCode::EnumerationTooLarge, "conic enumeration requires q <= 16");
  const auto [a, b, e] = asymptote;
  require(a != 0 || b != 0, ErrorCode::InvalidArgument, "asymptote must be a non-constant linear form");
  std::set<std::array<Elem, 6>> seen;
  std::vector<Conic> out;
  const std::uint64_t q = f.q();
  for (std::uint64_t a2 = 0; a2 < q; ++a2) {
    for (std::uint64_t b2 = 0; b2 < q; ++b2) {
      if (a2 == 0 && b2 == 0) continue;
      for (std::uint64_t e2 = 0; e2 < q; ++e2) {
        for (std::uint64_t d = 0; d < q; ++d) {
          const Elem A2 = static_cast<Elem>(a2), B2 = static_cast<Elem>(b2),
                     E2 = static_cast<Elem>(e2), D = static_cast<Elem>(d);
          // (a x + b y + e)(a2 x + b2 y + e2) + D
          std::array<Elem, 6> c{};
          c[0] = f.mul(a, A2);
          c[1] = f.add(f.mul(a, B2), f.mul(b, A2));
          c[2] = f.mul(b, B2);
          c[3] = f.add(f.mul(a, E2), f.mul(e, A2));
          c[4] = f.add(f.mul(b, E2), f.mul(e, B2));
          c[5] = f.add(f.mul(e, E2), D);
          Conic conic = normalized(f, c);
          // Linear parts proportional <=> a*b2 - b*a2 == 0.
          const bool parallel = f.sub(f.mul(a, B2), f.mul(b, A2)) == 0;
          conic.degenerate = (D == 0) || parallel;
          if (conic.degenerate && !include_degenerate) continue;
          if (!seen.insert(conic.coeffs).second) continue;
          out.push_back(conic);
        }
      }
    }
  }
  return out;
}

Polynomial conic_polynomial(const FieldPtr& field, const Conic& conic) {
  Polynomial p(field, 2);
  const auto& c = conic.coeffs;
  p.add_term({2, 0}, c[0]);
  p.add_term({1, 1}, c[1]);
  p.add_term({0, 2}, c[2]);
  p.add_term({1, 0}, c[3]);
  p.add_term({0, 1}, c[4]);
  p.add_term({0, 0}, c[5]);
  return p;
}

PointSet conic_points(const AffineSpace& plane, const Conic& conic) {
  require(plane.dim() == 2, ErrorCode::DimensionMismatch, "conics live in the plane");
  const Polynomial p = conic_polynomial(plane.field(), conic);
  PointSet out;
  Point x(2);
  for (PointIndex idx = 0; idx < plane.size(); ++idx) {
    plane.decode_into(idx, x);
    if (p.eval(x) == 0) out.push_back(idx);
  }
  return out;
}

// ----------------------------------------------------- projective space

std::vector<ProjectivePoint> enum_projective_points(const FieldPtr& field, std::size_t n,
                                                    std::uint64_t cap) {
  const AffineSpace affine(field, n, cap);
  std::vector<ProjectivePoint> out;
  out.reserve(affine.size());
  for (PointIndex idx = 0; idx < affine.size(); ++idx) out.push_back({false, affine.decode(idx)});
  if (n >= 1) {
    for (auto& d : enum_directions(field, n, cap)) out.push_back({true, std::move(d.rep)});
  }
  return out;
}

// ---------------------------------------------------------- serialization

nlohmann::json to_json(const Line& line) {
  return {{"base", line.base}, {"dir", line.dir.rep}};
}

nlohmann::json to_json(const KPlane& plane) {
  return {{"echelon_basis", plane.basis}, {"offset", plane.offset}};
}

nlohmann::json to_json(const ParametricCurve& curve) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : curve.components()) comps.push_back(c.to_string("t"));
  return {{"components", comps}, {"declared_degree", curve.declared_degree()}};
}

}  // namespace kakeya
