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

#include "kakeya/rings.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "kakeya/geometry.hpp"
#include "kakeya/parallel.hpp"
#include "kakeya/random.hpp"

namespace kakeya {

Ring Ring::poly_mod_xk(FieldPtr field, unsigned k) {
  require(field != nullptr, ErrorCode::InvalidArgument, "missing field");
  require(k >= 1, ErrorCode::BadParameters, "k must be >= 1");
  Ring r;
  r.kind_ = RingKind::PolyModXk;
  r.r_ = field->q();
  r.k_ = k;
  r.size_ = checked_pow(r.r_, k, Caps{}.enumeration, "|R|");
  r.field_ = std::move(field);
  for (unsigned i = 0; i <= k; ++i) r.pow_.push_back(i == 0 ? 1 : r.pow_.back() * r.r_);
  return r;
}

Ring Ring::int_mod_pk(std::uint32_t p, unsigned k) {
  require(is_prime(p), ErrorCode::NonPrime, "p must be prime");
  require(k >= 1, ErrorCode::BadParameters, "k must be >= 1");
  Ring r;
  r.kind_ = RingKind::IntModPk;
  r.r_ = p;
  r.k_ = k;
  r.size_ = checked_pow(p, k, Caps{}.enumeration, "|R|");
  r.field_ = Field::make(p);
  for (unsigned i = 0; i <= k; ++i) r.pow_.push_back(i == 0 ? 1 : r.pow_.back() * r.r_);
  return r;
}

std::vector<std::uint32_t> Ring::digits(RingElem a) const {
  std::vector<std::uint32_t> d(k_);
  for (unsigned i = 0; i < k_; ++i) {
    d[i] = static_cast<std::uint32_t>(a % r_);
    a /= r_;
  }
  return d;
}

RingElem Ring::from_digits(const std::vector<std::uint32_t>& d) const {
  RingElem a = 0;
  for (unsigned i = 0; i < k_ && i < d.size(); ++i) a += d[i] * pow_[i];
  return a;
}

RingElem Ring::add(RingElem a, RingElem b) const noexcept {
  if (kind_ == RingKind::IntModPk) return (a + b) % size_;
  RingElem out = 0;
  for (unsigned i = 0; i < k_; ++i) {
    out += field_->add(static_cast<Elem>(a % r_), static_cast<Elem>(b % r_)) * pow_[i];
    a /= r_;
    b /= r_;
  }
  return out;
}

RingElem Ring::neg(RingElem a) const noexcept {
  if (kind_ == RingKind::IntModPk) return (size_ - a % size_) % size_;
  RingElem out = 0;
  for (unsigned i = 0; i < k_; ++i) {
    out += field_->neg(static_cast<Elem>(a % r_)) * pow_[i];
    a /= r_;
  }
  return out;
}

RingElem Ring::sub(RingElem a, RingElem b) const noexcept { return add(a, neg(b)); }

RingElem Ring::mul(RingElem a, RingElem b) const noexcept {
  if (kind_ == RingKind::IntModPk) {
    return static_cast<RingElem>((static_cast<unsigned __int128>(a) * b) % size_);
  }
  const auto da = digits(a), db = digits(b);
  std::vector<std::uint32_t> c(k_, 0);
  for (unsigned i = 0; i < k_; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; i + j < k_; ++j) c[i + j] = field_->add(c[i + j], field_->mul(da[i], db[j]));
  }
  return from_digits(c);
}

RingElem Ring::inv(RingElem a) const {
  require(is_unit(a), ErrorCode::NonUnitDivisor, "element " + to_string(a) + " is not a unit");
  const RingElem u0 = field_->inv(static_cast<Elem>(a % r_));
  // u0 * a = 1 + y with y nilpotent, so (u0 a)^{-1} = sum_{i<k} (-y)^i.
  const RingElem y = sub(mul(u0, a), 1);
  const RingElem minus_y = neg(y);
  RingElem s = 1, term = 1;
  for (unsigned i = 1; i < k_; ++i) {
    term = mul(term, minus_y);
    s = add(s, term);
  }
  return mul(s, u0);
}

RingElem Ring::div(RingElem a, RingElem b) const { return mul(a, inv(b)); }

unsigned Ring::valuation(RingElem a) const noexcept {
  unsigned j = 0;
  while (j < k_ && a % r_ == 0) {
    a /= r_;
    ++j;
  }
  return j;
}

std::string Ring::to_string(RingElem a) const {
  if (kind_ == RingKind::IntModPk) return std::to_string(a);
  const auto d = digits(a);
  std::string s;
  for (unsigned i = 0; i < k_; ++i) {
    if (d[i] == 0) continue;
    if (!s.empty()) s += " + ";
    const std::string c = field_->to_string(d[i]);
    if (i == 0) {
      s += c;
    } else {
      if (d[i] != 1) s += (field_->is_prime_field() ? c : "(" + c + ")") + "*";
      s += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

std::string Ring::describe() const {
  if (kind_ == RingKind::IntModPk) return "Z/" + std::to_string(r_) + "^" + std::to_string(k_);
  return "F_" + std::to_string(r_) + "[x]/x^" + std::to_string(k_);
}

RingSpace::RingSpace(Ring ring, std::size_t n, std::uint64_t cap)
    : ring_(std::move(ring)), n_(n), size_(checked_pow(ring_.size(), static_cast<unsigned>(n), cap, "|R|^n")) {
  require(n >= 1, ErrorCode::BadParameters, "n must be >= 1");
}

PointIndex RingSpace::encode(const std::vector<RingElem>& x) const {
  require(x.size() == n_, ErrorCode::DimensionMismatch, "ring point has wrong dimension");
  PointIndex idx = 0;
  for (RingElem e : x) {
    require(e < ring_.size(), ErrorCode::InvalidArgument, "ring coordinate out of range");
    idx = idx * ring_.size() + e;
  }
  return idx;
}

std::vector<RingElem> RingSpace::decode(PointIndex idx) const {
  std::vector<RingElem> x(n_);
  for (std::size_t i = n_; i-- > 0;) {
    x[i] = idx % ring_.size();
    idx /= ring_.size();
  }
  return x;
}

bool RingSpace::in_maximal_ideal(const std::vector<RingElem>& x) const noexcept {
  return std::none_of(x.begin(), x.end(), [&](RingElem e) { return ring_.is_unit(e); });
}

RingDirection canonical_ring_direction(const Ring& ring, std::vector<RingElem> v) {
  auto it = std::find_if(v.begin(), v.end(), [&](RingElem e) { return ring.is_unit(e); });
  require(it != v.end(), ErrorCode::DegenerateDirection, "direction lies in m^n");
  const RingElem s = ring.inv(*it);
  for (auto& e : v) e = ring.mul(e, s);
  return {std::move(v)};
}

std::uint64_t ring_direction_count(const Ring& ring, std::size_t n) {
  const std::uint64_t all = checked_pow(ring.size(), static_cast<unsigned>(n), UINT64_MAX / 2, "|R|^n");
  const std::uint64_t ideal = checked_pow(ring.size() / ring.residue_size(), static_cast<unsigned>(n),
                                          UINT64_MAX / 2, "|m|^n");
  return (all - ideal) / ring.unit_count();
}

std::vector<RingDirection> ring_directions(const RingSpace& space) {
  const Ring& R = space.ring();
  std::vector<RingDirection> out;
  for (PointIndex idx = 0; idx < space.size(); ++idx) {
    auto v = space.decode(idx);
    auto it = std::find_if(v.begin(), v.end(), [&](RingElem e) { return R.is_unit(e); });
    if (it != v.end() && *it == 1) out.push_back({std::move(v)});
  }
  return out;
}

namespace {

std::vector<std::vector<RingElem>> multiples(const Ring& R, const std::vector<RingElem>& b) {
  std::vector<std::vector<RingElem>> out(R.size(), std::vector<RingElem>(b.size()));
  for (RingElem t = 0; t < R.size(); ++t)
    for (std::size_t i = 0; i < b.size(); ++i) out[t][i] = R.mul(t, b[i]);
  return out;
}

PointIndex shifted(const RingSpace& space, const std::vector<RingElem>& a, const std::vector<RingElem>& tb) {
  const Ring& R = space.ring();
  PointIndex idx = 0;
  for (std::size_t i = 0; i < a.size(); ++i) idx = idx * R.size() + R.add(a[i], tb[i]);
  return idx;
}

}  // namespace

PointSet ring_line_points(const RingSpace& space, const std::vector<RingElem>& a, const std::vector<RingElem>& b) {
  require(a.size() == space.dim() && b.size() == space.dim(), ErrorCode::DimensionMismatch,
          "line data has wrong dimension");
  require(!space.in_maximal_ideal(b), ErrorCode::DegenerateDirection, "direction lies in m^n");
  std::vector<PointIndex> pts;
  for (const auto& tb : multiples(space.ring(), b)) pts.push_back(shifted(space, a, tb));
  return make_point_set(std::move(pts));
}

RingLineCheck ring_kakeya_check(const RingSpace& space, const PointSet& E) {
  const auto dirs = ring_directions(space);
  const auto mask = membership(E, space.size());
  RingLineCheck r;
  r.bases.resize(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t d) {
    const auto tb = multiples(space.ring(), dirs[d].rep);
    for (PointIndex a : E) {
      const auto base = space.decode(a);
      bool inside = true;
      for (const auto& step : tb) {
        if (!mask[shifted(space, base, step)]) {
          inside = false;
          break;
        }
      }
      if (inside) {
        r.bases[d] = a;
        return;
      }
    }
  });
  r.kakeya = true;
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    if (!r.bases[d]) {
      r.kakeya = false;
      r.missing = dirs[d];
      break;
    }
  }
  return r;
}

PhiEmbedding phi_embed(const RingSpace& space) {
  const Ring& R = space.ring();
  require(R.kind() == RingKind::PolyModXk, ErrorCode::UnsupportedRing,
          "the coefficient embedding needs R = F[x]/x^k");
  const unsigned k = R.k();
  PhiEmbedding e{Matrix(R.residue_field(), k, k), false, space.dim() * k};
  for (unsigned i = 0; i + 1 < k; ++i) e.X.at(i + 1, i) = 1;
  Matrix power = e.X;
  for (unsigned i = 1; i < k; ++i) power = power * e.X;
  e.nilpotent = power.is_zero();
  require(e.nilpotent, ErrorCode::InternalError, "multiplication by x is not nilpotent");
  return e;
}

PointIndex phi_point(const RingSpace& space, PointIndex p) {
  const Ring& R = space.ring();
  require(R.kind() == RingKind::PolyModXk, ErrorCode::UnsupportedRing,
          "the coefficient embedding needs R = F[x]/x^k");
  const AffineSpace target(R.residue_field(), space.dim() * R.k());
  Point x;
  x.reserve(target.dim());
  for (RingElem e : space.decode(p))
    for (auto c : R.digits(e)) x.push_back(c);
  return target.encode(x);
}

PointSet phi_pushforward(const RingSpace& space, const PointSet& E) {
  std::vector<PointIndex> out;
  out.reserve(E.size());
  for (PointIndex p : E) out.push_back(phi_point(space, p));
  return make_point_set(std::move(out));
}

RingBoundReport ring_bound_check(const RingSpace& space, const PointSet& E, const Caps& caps) {
  const Ring& R = space.ring();
  require(R.kind() == RingKind::PolyModXk, ErrorCode::UnsupportedRing,
          "the bound pipeline needs R = F[x]/x^k");
  const auto check = ring_kakeya_check(space, E);
  require(check.kakeya, ErrorCode::NotKakeya, "E misses a ring direction");
  phi_embed(space);

  const std::size_t n = space.dim();
  const unsigned k = R.k();
  const FieldPtr& F = R.residue_field();
  const AffineSpace target(F, n * k, caps.enumeration);
  const PointSet image = phi_pushforward(space, E);
  const auto image_mask = membership(image, target.size());

  const auto dirs = ring_directions(space);
  std::map<PointIndex, std::size_t> dir_index;
  for (std::size_t d = 0; d < dirs.size(); ++d) dir_index[space.encode(dirs[d].rep)] = d;

  RingBoundReport rep;
  rep.set_size = E.size();
  const auto fdirs = enum_directions(F, n * k, caps.enumeration);
  rep.f_directions = fdirs.size();
  for (const auto& v : fdirs) {
    // phi^{-1}(v) = x^j v0 with v0 outside m^n
    std::vector<RingElem> r(n);
    for (std::size_t i = 0; i < n; ++i)
      r[i] = R.from_digits(std::vector<std::uint32_t>(v.rep.begin() + i * k, v.rep.begin() + (i + 1) * k));
    unsigned j = k;
    for (RingElem e : r) j = std::min(j, R.valuation(e));
    std::vector<RingElem> v0(n);
    const std::uint64_t scale = checked_pow(R.residue_size(), j, UINT64_MAX, "x^j");
    for (std::size_t i = 0; i < n; ++i) v0[i] = r[i] / scale;
    const auto d = canonical_ring_direction(R, v0);
    const PointIndex a = *check.bases[dir_index.at(space.encode(d.rep))];
    const auto base = space.decode(a);
    const auto fa = target.decode(phi_point(space, a));
    bool ok = true;
    for (Elem t = 0; t < F->q() && ok; ++t) {
      Point y = target.add_scaled(fa, t, v.rep);
      ok = image_mask[target.encode(y)] != 0;
    }
    if (ok) ++rep.directions_confirmed;
  }
  require(rep.directions_confirmed == rep.f_directions, ErrorCode::InternalError,
          "an F-direction of phi(E) was not realized by a ring line");

  rep.phi_kakeya = kakeya_line_check(target, image).kakeya;
  rep.certificate = dvir_check(target, image, caps);
  const std::uint64_t q = F->q();
  rep.bound = binomial(q - 1 + n * k, n * k);
  rep.naive_slice_bound = binomial(q - 1 + n, n);
  rep.c = std::pow(static_cast<double>(rep.bound) / static_cast<double>(space.size()),
                   1.0 / static_cast<double>(n * k));
  rep.satisfied = BigInt(E.size()) >= rep.bound;
  return rep;
}

double minkowski_dim(const Ring& ring, std::size_t set_size) {
  require(set_size > 0, ErrorCode::EmptySet, "E is empty");
  return std::log(static_cast<double>(set_size)) / std::log(static_cast<double>(ring.size()));
}

std::vector<double> besicovitch_trend(std::uint64_t q, std::size_t n, const std::vector<std::size_t>& sizes) {
  std::vector<double> out;
  for (std::size_t k = 1; k <= sizes.size(); ++k)
    out.push_back(static_cast<double>(sizes[k - 1]) * std::pow(static_cast<double>(q), -static_cast<double>(n * k)));
  return out;
}

PointSet grow_minimal_kakeya(const RingSpace& space, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PointIndex> pts;
  for (const auto& d : ring_directions(space)) {
    const auto a = space.decode(rng.below(space.size()));
    const auto line = ring_line_points(space, a, d.rep);
    pts.insert(pts.end(), line.begin(), line.end());
  }
  PointSet E = make_point_set(std::move(pts));
  std::vector<PointIndex> order = E;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  for (PointIndex p : order) {
    PointSet trial;
    trial.reserve(E.size());
    for (PointIndex e : E)
      if (e != p) trial.push_back(e);
    if (ring_kakeya_check(space, trial).kakeya) E = std::move(trial);
  }
  return E;
}

std::string_view ring_kind_name(RingKind k) noexcept {
  return k == RingKind::PolyModXk ? "poly_mod_xk" : "int_mod_pk";
}

nlohmann::json ring_points_json(const RingSpace& space, const PointSet& E) {
  nlohmann::json out = nlohmann::json::array();
  for (PointIndex p : E) {
    nlohmann::json pt = nlohmann::json::array();
    for (RingElem e : space.decode(p)) pt.push_back(space.ring().digits(e));
    out.push_back(pt);
  }
  return out;
}

nlohmann::json to_json(const RingBoundReport& r) {
  return {{"set_size", r.set_size},
          {"f_directions", r.f_directions},
          {"directions_confirmed", r.directions_confirmed},
          {"phi_kakeya", r.phi_kakeya},
          {"certificate", to_json(r.certificate)},
          {"bound", r.bound.str()},
          {"c", r.c},
          {"naive_slice_bound", r.naive_slice_bound.str()},
          {"satisfied", r.satisfied}};
}

}  // namespace kakeya
