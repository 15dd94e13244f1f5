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

#include "kakeya/amplify.hpp"
#include "kakeya/random.hpp"

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

PointFunction random_f(const AffineSpace& sp, std::uint64_t seed) {
  Rng rng(seed);
  return random_point_function(sp, rng);
}

PointSet random_subset(std::uint64_t size, double density, Rng& rng) {
  PointSet s;
  for (PointIndex i = 0; i < size; ++i)
    if (rng.uniform01() < density) s.push_back(i);
  if (s.empty()) s.push_back(rng.below(size));
  return s;
}

}  // namespace

TEST_CASE("amplification examples") {
  auto F = Field::make(3);
  AffineSpace sp(F, 2);
  const auto delta = PointFunction::indicator(sp, {sp.encode(Point{0, 0})});
  const auto a = amplify_with(delta, {0}, {Point{0}, Point{1}});
  CHECK(a.f_M.support() == PointSet{sp.encode(Point{0, 0}), sp.encode(Point{1, 0})});
  CHECK(std::pow(lp_norm(a.f_M, 2), 2) == doctest::Approx(2.0));
  CHECK(a.omega == PointSet{0, 1});

  const auto f = random_f(sp, 1);
  const auto id = amplify_with(f, {0, 2}, {Point{0}});
  CHECK(id.f_M.values() == f.values());
  CHECK(id.omega == PointSet{0, 2});
}

TEST_CASE("amplification invariants on random instances") {
  Rng rng(5);
  for (std::uint64_t q : {3u, 4u, 5u}) {
    for (std::size_t n : {2u, 3u}) {
      AffineSpace sp(Field::of_order(q), n);
      const AffineSpace base(sp.field(), n - 1);
      for (int t = 0; t < 10; ++t) {
        const auto f = random_f(sp, rng.next());
        const auto anchors = random_subset(base.size(), 0.3, rng);
        const std::size_t M = 1 + rng.below(6);
        const auto a = amplify(f, anchors, M, rng.next());
        CHECK(a.norm_relative_error <= 1e-12);
        CHECK(a.dominates);
        CHECK(a.translations.size() == M);
        // Translated line sums of f_M dominate the originals.
        for (const auto& u : a.translations) {
          for (const auto& l : all_lines(sp)) {
            double orig = 0, moved = 0;
            for (PointIndex p : line_points(sp, l)) {
              orig += f[p];
              Point x = sp.decode(p);
              for (std::size_t i = 0; i + 1 < n; ++i) x[i] = sp.f().add(x[i], u[i]);
              moved += a.f_M[sp.encode(x)];
            }
            CHECK(moved >= orig * (1 - 1e-12));
          }
        }
      }
    }
  }
}

TEST_CASE("best-of-R never does worse than its first draw") {
  AffineSpace sp(Field::make(5), 2);
  const auto f = random_f(sp, 3);
  const PointSet anchors{0, 1};
  const auto best = amplify(f, anchors, 3, 11, AmplifyMode::BestOfR, 8);
  Rng first(derive_seed(11, 0));
  std::vector<Point> t;
  for (int m = 0; m < 3; ++m) t.push_back(AffineSpace(sp.field(), 1).decode(first.below(5)));
  CHECK(best.omega.size() >= amplify_with(f, anchors, t).omega.size());
  CHECK(to_json(best).at("mode") == "best_of_r");
}

TEST_CASE("choose M") {
  AffineSpace sp(Field::make(3), 2);
  const auto f = random_f(sp, 9);
  const double norm = lp_norm(f, 2);
  const double K0 = 4;
  CHECK(choose_M(2 * K0 * norm, f, K0).M == 4);
  CHECK_FALSE(choose_M(2 * K0 * norm, f, K0).clamped);
  CHECK(choose_M(K0 * norm, f, K0).M == 1);
  const auto low = choose_M(0.5 * K0 * norm, f, K0);
  CHECK(low.M == 1);
  CHECK(low.clamped);
  CHECK(code_of([&] { choose_M(1, PointFunction(sp), K0); }) == ErrorCode::ZeroFunction);
}

TEST_CASE("flat projections") {
  for (std::uint64_t q : {2u, 3u, 5u}) {
    auto F = Field::of_order(q);
    for (std::uint64_t s = 0; s < 1000; s += (q == 2 ? 1 : 7)) {
      const auto p = random_flat_projection(F, 4, 2, s);
      CHECK(row_reduce(p.T).rank == 1);
      const auto sq = random_flat_projection(F, 3, 3, s);
      CHECK(row_reduce(sq.T).rank == 2);
    }
    const auto p = random_flat_projection(F, 4, 3, 1);
    const AffineSpace src(F, 4);
    const auto img = image_table(p.T_hat);
    const AffineSpace dst(F, 3);
    for (PointIndex v = 0; v < src.size(); ++v) CHECK(dst.decode(img[v])[2] == src.decode(v)[3]);
  }
  CHECK(code_of([] { random_flat_projection(Field::make(3), 2, 3, 0); }) == ErrorCode::BadParameters);
}

TEST_CASE("power pushforward") {
  auto F = Field::make(3);
  // N = n: T_hat is a bijection and f_T is a relabeling of f.
  AffineSpace s2(F, 2);
  const auto f = random_f(s2, 4);
  const auto proj = random_flat_projection(F, 2, 2, 3);
  const auto pf = pushforward_power(f, proj);
  auto a = f.values(), b = pf.f_T.values();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-14));

  // Indicator of a fiber of size s gives s^{1/n} at that point.
  AffineSpace s4(F, 4);
  const auto p4 = random_flat_projection(F, 4, 2, 8);
  const auto img = image_table(p4.T_hat);
  PointSet fiber;
  for (PointIndex v = 0; v < s4.size(); ++v)
    if (img[v] == 5) fiber.push_back(v);
  const auto fi = pushforward_power(PointFunction::indicator(s4, fiber), p4);
  CHECK(fi.f_T[5] == doctest::Approx(std::sqrt(double(fiber.size()))));
  CHECK(fi.f_T.support() == PointSet{5});

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = random_f(s4, seed);
    const auto pr = pushforward_power(g, random_flat_projection(F, 4, 2, seed));
    CHECK(pr.norm_relative_error <= 1e-12);
  }
}

TEST_CASE("sup pushforward") {
  auto F = Field::make(3);
  AffineSpace s3(F, 3);
  const auto proj = random_flat_projection(F, 4, 2, 21);
  const auto img = image_table(proj.T);
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto g = random_f(s3, rng.next());
    const auto W = random_subset(s3.size(), 0.4, rng);
    const auto got = pushforward_sup(g, W, proj.T);
    std::vector<double> want(3, 0.0);
    for (PointIndex w : W) want[img[w]] = std::max(want[img[w]], g[w]);
    CHECK(got.values() == want);
  }
  // Two points in one fiber with values 2 and 5.
  PointIndex a = 0, b = 1;
  while (img[b] != img[a]) ++b;
  PointFunction g(s3);
  g.set(a, 2);
  g.set(b, 5);
  CHECK(pushforward_sup(g, {a, b}, proj.T)[img[a]] == 5.0);

  // Injective on W: relabeling with zero fill.
  AffineSpace s2(F, 2);
  Matrix T(F, 2, 2);
  T.at(0, 1) = 1;
  T.at(1, 0) = 1;
  const auto h = random_f(s2, 4);
  const auto sw = pushforward_sup(h, {0, 1, 5}, T);
  CHECK(sw[0] == h[0]);
  CHECK(sw[3] == h[1]);
  CHECK(sw[7] == h[5]);
  CHECK(sw[1] == 0.0);
}

TEST_CASE("collision statistics") {
  auto F = Field::make(3);
  AffineSpace s3(F, 3);
  const auto single = collision_stats(s3, {4}, 2, 50, 1);
  CHECK(single.mean_collisions == 0.0);

  // Two distinct points, n = 2, q = 3, N - 1 = 2: exact probability.
  AffineSpace s2(F, 2);
  const auto [hit, total] = collision_counts_exhaustive(F, 3, 2, Point{1, 2});
  CHECK(total == 8);
  CHECK(hit == 2);
  CHECK(double(hit) / double(total) == doctest::Approx(collision_probability(3, 3, 2)));
  const std::size_t trials = 4000;
  const auto st = collision_stats(s2, {0, s2.encode(Point{1, 2})}, 2, trials, 17);
  const double p = collision_probability(3, 3, 2);
  // Each trial contributes 2 ordered pairs when the points collide.
  const double mean = 2 * p, sigma = 2 * std::sqrt(p * (1 - p) / double(trials));
  CHECK(std::abs(st.mean_collisions - mean) <= 3 * sigma);

  for (auto [q, N, n] : std::vector<std::tuple<std::uint64_t, std::size_t, std::size_t>>{{2, 4, 2}, {3, 4, 3}, {2, 5, 3}}) {
    const auto G = Field::of_order(q);
    Point d(N - 1, 0);
    d[0] = 1;
    const auto [h, tot] = collision_counts_exhaustive(G, N, n, d);
    CHECK(double(h) / double(tot) == doctest::Approx(collision_probability(q, N, n)));
  }

  AffineSpace s4(Field::make(5), 3);
  Rng rng(3);
  const auto omega = random_subset(s4.size(), 0.3, rng);
  const auto big = collision_stats(s4, omega, 2, 1000, 5);
  CHECK(big.pass);
  CHECK(big.mean_collisions <= 4 * big.bound);
}

TEST_CASE("Bezout fiber bound") {
  auto F = Field::make(3);
  std::vector<ParametricCurve> corpus;
  corpus.emplace_back(std::vector<UniPoly>{UniPoly::monomial(F, 1), UniPoly::monomial(F, 2), UniPoly::monomial(F, 3),
                                           UniPoly(F, {1, 1})});
  corpus.emplace_back(std::vector<UniPoly>{UniPoly(F, {2, 1}), UniPoly::constant(F, 1), UniPoly::monomial(F, 2),
                                           UniPoly::monomial(F, 1)});
  corpus.emplace_back(std::vector<UniPoly>{UniPoly::monomial(F, 1), UniPoly::monomial(F, 1), UniPoly::monomial(F, 1),
                                           UniPoly::monomial(F, 2)});
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto proj = random_flat_projection(F, 4, 2, s);
    for (const auto& c : corpus) {
      const auto r = bezout_fiber_check(c, proj);
      if (r.nonconstant) CHECK(r.max_fiber <= r.degree);
    }
  }
}

TEST_CASE("identities across K0") {
  AffineSpace sp(Field::make(5), 2);
  const PointSet anchors{0, 2};
  for (double K0 : {1.0, 2.0, 4.0, 8.0}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto f = random_f(sp, seed);
      const double lambda = 3 * lp_norm(f, 2) * (1 + double(seed % 4));
      const auto cm = choose_M(lambda, f, K0);
      CHECK(cm.M >= 1);
      const auto a = amplify(f, anchors, cm.M, seed);
      CHECK(a.norm_relative_error <= 1e-12);
      CHECK(a.dominates);
    }
  }
}
