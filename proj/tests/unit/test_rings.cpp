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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "kakeya/random.hpp"
#include "kakeya/rings.hpp"

using namespace kakeya;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

std::vector<Ring> configured_rings() {
  return {Ring::poly_mod_xk(Field::make(2), 1), Ring::poly_mod_xk(Field::make(2), 2),
          Ring::poly_mod_xk(Field::make(2), 3), Ring::poly_mod_xk(Field::make(3), 2),
          Ring::poly_mod_xk(Field::of_order(4), 2), Ring::int_mod_pk(2, 2),
          Ring::int_mod_pk(3, 2), Ring::int_mod_pk(2, 3), Ring::int_mod_pk(5, 1)};
}

// Orbits of R* acting on R^n - m^n, found by closure.
std::size_t orbit_count(const RingSpace& sp) {
  const Ring& R = sp.ring();
  std::set<PointIndex> seen;
  std::size_t orbits = 0;
  for (PointIndex i = 0; i < sp.size(); ++i) {
    const auto v = sp.decode(i);
    if (sp.in_maximal_ideal(v) || seen.count(i)) continue;
    ++orbits;
    std::size_t size = 0;
    std::set<PointIndex> orbit;
    for (RingElem u = 0; u < R.size(); ++u) {
      if (!R.is_unit(u)) continue;
      auto w = v;
      for (auto& e : w) e = R.mul(u, e);
      orbit.insert(sp.encode(w));
      ++size;
    }
    CHECK(orbit.size() == R.unit_count());
    seen.insert(orbit.begin(), orbit.end());
  }
  return orbits;
}

bool brute_kakeya(const RingSpace& sp, const PointSet& E) {
  for (const auto& d : ring_directions(sp)) {
    bool found = false;
    for (PointIndex a = 0; a < sp.size() && !found; ++a) {
      const auto pts = ring_line_points(sp, sp.decode(a), d.rep);
      found = std::all_of(pts.begin(), pts.end(), [&](PointIndex p) { return contains(E, p); });
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("ring arithmetic") {
  const auto R = Ring::poly_mod_xk(Field::make(2), 2);
  const RingElem x = R.maximal_ideal_generator();
  CHECK(R.mul(x, x) == 0);
  CHECK(R.inv(R.add(1, x)) == R.add(1, x));
  const auto Z4 = Ring::int_mod_pk(2, 2);
  CHECK(Z4.mul(2, 2) == 0);
  CHECK(code_of([&] { Z4.inv(2); }) == ErrorCode::NonUnitDivisor);
  CHECK(code_of([&] { R.div(1, x); }) == ErrorCode::NonUnitDivisor);
  CHECK(R.to_string(R.add(1, x)) == "1 + x");

  for (const auto& r : configured_rings()) {
    std::uint64_t units = 0;
    for (RingElem a = 0; a < r.size(); ++a) {
      if (r.is_unit(a)) {
        ++units;
        CHECK(r.mul(a, r.inv(a)) == 1);
      }
      CHECK(r.add(a, r.neg(a)) == 0);
      for (RingElem b = 0; b < r.size(); b += 3) {
        CHECK(r.mul(a, b) == r.mul(b, a));
        CHECK(r.sub(r.add(a, b), b) == a);
        for (RingElem c = 0; c < r.size(); c += 5)
          CHECK(r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)));
      }
    }
    CHECK(units == r.unit_count());
    CHECK(units * r.residue_size() == r.size() * (r.residue_size() - 1));
    if (r.kind() == RingKind::IntModPk)
      for (RingElem a = 0; a < r.size(); ++a)
        for (RingElem b = 0; b < r.size(); ++b) CHECK(r.mul(a, b) == (a * b) % r.size());
  }
}

TEST_CASE("ring directions") {
  CHECK(ring_directions(RingSpace(Ring::poly_mod_xk(Field::make(2), 2), 2)).size() == 6);
  CHECK(ring_directions(RingSpace(Ring::int_mod_pk(2, 2), 2)).size() == 6);
  for (const auto& r : configured_rings()) {
    for (std::size_t n : {1u, 2u, 3u}) {
      if (checked_pow(r.size(), unsigned(n), UINT64_MAX / 2, "") > 5000) continue;
      RingSpace sp(r, n);
      const auto dirs = ring_directions(sp);
      CHECK(dirs.size() == ring_direction_count(r, n));
      CHECK(dirs.size() == orbit_count(sp));
      for (const auto& d : dirs) CHECK(canonical_ring_direction(r, d.rep) == d);
    }
  }
  // k = 1 agrees with field directions.
  for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
    const auto F = Field::of_order(q);
    RingSpace sp(Ring::poly_mod_xk(F, 1), 2);
    const auto rd = ring_directions(sp);
    const auto fd = enum_directions(F, 2);
    REQUIRE(rd.size() == fd.size());
    std::set<std::vector<RingElem>> a, b;
    for (const auto& d : rd) a.insert(d.rep);
    for (const auto& d : fd) b.insert(std::vector<RingElem>(d.rep.begin(), d.rep.end()));
    CHECK(a == b);
  }
}

TEST_CASE("ring lines") {
  for (const auto& r : configured_rings()) {
    if (r.size() * r.size() > 5000) continue;
    RingSpace sp(r, 2);
    Rng rng(r.size());
    for (int t = 0; t < 20; ++t) {
      const auto a = sp.decode(rng.below(sp.size()));
      auto b = sp.decode(rng.below(sp.size()));
      if (sp.in_maximal_ideal(b)) {
        CHECK(code_of([&] { ring_line_points(sp, a, b); }) == ErrorCode::DegenerateDirection);
        continue;
      }
      const auto pts = ring_line_points(sp, a, b);
      CHECK(pts.size() == r.size());
      RingElem u = rng.below(r.size());
      while (!r.is_unit(u)) u = rng.below(r.size());
      std::vector<RingElem> a2(2), b2(2);
      for (int i = 0; i < 2; ++i) {
        a2[i] = r.add(a[i], b[i]);
        b2[i] = r.mul(u, b[i]);
      }
      CHECK(ring_line_points(sp, a2, b2) == pts);
    }
  }
}

TEST_CASE("ring Kakeya check") {
  const auto R = Ring::poly_mod_xk(Field::make(2), 2);
  RingSpace sp(R, 2);
  PointSet all(sp.size());
  for (PointIndex i = 0; i < sp.size(); ++i) all[i] = i;
  CHECK(ring_kakeya_check(sp, all).kakeya);
  const auto line = ring_line_points(sp, {0, 0}, {1, 0});
  CHECK_FALSE(ring_kakeya_check(sp, line).kakeya);

  Rng rng(12);
  for (int t = 0; t < 40; ++t) {
    PointSet E;
    for (PointIndex i = 0; i < sp.size(); ++i)
      if (rng.uniform01() < 0.9) E.push_back(i);
    CHECK(ring_kakeya_check(sp, E).kakeya == brute_kakeya(sp, E));
  }
  RingSpace z4(Ring::int_mod_pk(2, 2), 2);
  for (int t = 0; t < 20; ++t) {
    PointSet E;
    for (PointIndex i = 0; i < z4.size(); ++i)
      if (rng.uniform01() < 0.85) E.push_back(i);
    CHECK(ring_kakeya_check(z4, E).kakeya == brute_kakeya(z4, E));
  }
}

TEST_CASE("coefficient embedding") {
  const auto R = Ring::poly_mod_xk(Field::make(2), 2);
  RingSpace s1(R, 1);
  const auto e = phi_embed(s1);
  CHECK(e.nilpotent);
  CHECK(e.X.at(0, 0) == 0);
  CHECK(e.X.at(0, 1) == 0);
  CHECK(e.X.at(1, 0) == 1);
  CHECK(e.X.at(1, 1) == 0);
  // phi(c0 + c1 x) = (c0, c1)
  const AffineSpace f2(Field::make(2), 2);
  for (RingElem a = 0; a < 4; ++a)
    CHECK(phi_point(s1, a) == f2.encode(Point{Elem(a % 2), Elem(a / 2)}));

  RingSpace k1(Ring::poly_mod_xk(Field::make(3), 1), 2);
  for (PointIndex p = 0; p < k1.size(); ++p) CHECK(phi_point(k1, p) == p);

  RingSpace z4(Ring::int_mod_pk(2, 2), 2);
  CHECK(code_of([&] { phi_embed(z4); }) == ErrorCode::UnsupportedRing);

  RingSpace s3(Ring::poly_mod_xk(Field::make(3), 3), 1);
  CHECK(phi_embed(s3).nilpotent);
  // phi is a bijection.
  RingSpace s2(R, 2);
  PointSet all(s2.size());
  for (PointIndex i = 0; i < s2.size(); ++i) all[i] = i;
  CHECK(phi_pushforward(s2, all).size() == s2.size());
}

TEST_CASE("ring bound pipeline") {
  const auto R = Ring::poly_mod_xk(Field::make(2), 2);
  RingSpace sp(R, 2);
  PointSet all(sp.size());
  for (PointIndex i = 0; i < sp.size(); ++i) all[i] = i;
  const auto full = ring_bound_check(sp, all);
  CHECK(full.phi_kakeya);
  CHECK(full.satisfied);
  CHECK(full.directions_confirmed == 15);
  CHECK(full.bound == 5);

  std::vector<PointIndex> pts;
  for (const auto& d : ring_directions(sp)) {
    const auto l = ring_line_points(sp, {0, 0}, d.rep);
    pts.insert(pts.end(), l.begin(), l.end());
  }
  const auto E = make_point_set(pts);
  const auto rep = ring_bound_check(sp, E);
  CHECK(rep.phi_kakeya);
  CHECK(rep.certificate.kind == CertificateKind::KernelTrivial);
  CHECK(rep.set_size >= 5);
  CHECK(rep.bound >= rep.naive_slice_bound);

  CHECK(code_of([&] { ring_bound_check(sp, ring_line_points(sp, {0, 0}, {1, 0})); }) == ErrorCode::NotKakeya);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto M = grow_minimal_kakeya(sp, seed);
    CHECK(ring_kakeya_check(sp, M).kakeya);
    CHECK(ring_bound_check(sp, M).satisfied);
    // Minimal: removing any point breaks the property.
    for (PointIndex p : M) {
      PointSet smaller;
      for (PointIndex e : M)
        if (e != p) smaller.push_back(e);
      CHECK_FALSE(ring_kakeya_check(sp, smaller).kakeya);
    }
  }
}

TEST_CASE("Minkowski dimension") {
  const auto R = Ring::poly_mod_xk(Field::make(3), 2);
  CHECK(minkowski_dim(R, 81) == doctest::Approx(2.0));
  CHECK(minkowski_dim(R, 1) == 0.0);
  CHECK(minkowski_dim(R, 9) == doctest::Approx(1.0));
  CHECK(code_of([&] { minkowski_dim(R, 0); }) == ErrorCode::EmptySet);
  const auto trend = besicovitch_trend(2, 2, {4, 16});
  CHECK(trend == std::vector<double>{1.0, 1.0});
}

TEST_CASE("ring point serialization") {
  const auto R = Ring::poly_mod_xk(Field::make(2), 2);
  RingSpace sp(R, 2);
  const auto j = ring_points_json(sp, {sp.encode({3, 1})});
  CHECK(j.dump() == "[[[1,1],[1,0]]]");
}
