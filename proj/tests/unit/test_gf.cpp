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

#include <set>

#include "kakeya/gf.hpp"
#include "kakeya/poly.hpp"
#include "kakeya/random.hpp"
#include "kakeya/space.hpp"

using namespace kakeya;

namespace {

// Schoolbook product of packed coefficient vectors reduced by the modulus.
Elem oracle_mul(const Field& F, Elem a, Elem b) {
  const auto p = F.p();
  const auto m = F.m();
  std::vector<std::uint64_t> prod(2 * m, 0);
  const auto ca = F.coeffs(a), cb = F.coeffs(b);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(ca[i]) * cb[j]) % p;
  const auto& mod = F.modulus();
  for (std::size_t d = 2 * m - 1; d >= m; --d) {
    const auto c = prod[d];
    if (c == 0) continue;
    for (std::uint32_t i = 0; i <= m; ++i) prod[d - m + i] = (prod[d - m + i] + (p - c) * mod[i]) % p;
  }
  std::vector<std::uint32_t> out(m);
  for (std::uint32_t i = 0; i < m; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return F.from_coeffs(out);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

}  // namespace

TEST_CASE("field construction") {
  auto f3 = Field::make(3);
  CHECK(f3->q() == 3);
  auto f4 = Field::make(2, 2, std::vector<std::uint32_t>{1, 1, 1});
  CHECK(f4->q() == 4);
  CHECK(code_of([] { Field::make(4); }) == ErrorCode::NonPrime);
  CHECK(code_of([] { Field::make(2, 2, std::vector<std::uint32_t>{1, 0, 1}); }) == ErrorCode::ReducibleModulus);
  CHECK(Field::of_order(9)->m() == 2);
}

TEST_CASE("field arithmetic examples") {
  auto f5 = Field::make(5);
  CHECK(f5->mul(3, 4) == 2);
  auto f4 = Field::make(2, 2, std::vector<std::uint32_t>{1, 1, 1});
  const Elem x = f4->from_coeffs(std::vector<std::uint32_t>{0, 1});
  CHECK(f4->mul(x, x) == f4->from_coeffs(std::vector<std::uint32_t>{1, 1}));
  auto f7 = Field::make(7);
  CHECK(f7->pow(3, 6) == 1);
  CHECK(code_of([&] { f7->inv(0); }) == ErrorCode::DivisionByZero);
}

TEST_CASE("field axioms against schoolbook oracle") {
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u}) {
    auto F = Field::of_order(q);
    for (Elem a = 0; a < q; ++a) {
      CHECK(F->add(a, F->neg(a)) == 0);
      if (a != 0) CHECK(F->mul(a, F->inv(a)) == 1);
      for (Elem b = 0; b < q; ++b) {
        REQUIRE(F->mul(a, b) == oracle_mul(*F, a, b));
        CHECK(F->add(a, b) == F->add(b, a));
        CHECK(F->sub(F->add(a, b), b) == a);
      }
    }
    CHECK(F->pow(F->primitive(), q - 1) == 1);
    std::set<Elem> powers;
    for (std::uint64_t i = 0; i + 1 < q; ++i) powers.insert(F->pow(F->primitive(), i));
    CHECK(powers.size() == q - 1);
  }
}

TEST_CASE("large extension uses slow path consistently") {
  auto F = Field::make(2, 17);
  CHECK_FALSE(F->has_tables());
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Elem a = static_cast<Elem>(rng.below(F->q()));
    const Elem b = static_cast<Elem>(rng.below(F->q()));
    CHECK(F->mul(a, b) == oracle_mul(*F, a, b));
    if (a != 0) CHECK(F->mul(a, F->inv(a)) == 1);
  }
}

TEST_CASE("polynomial evaluation and Hasse coefficients") {
  auto F = Field::make(3);
  auto x = Polynomial::variable(F, 2, 0), y = Polynomial::variable(F, 2, 1);
  auto P = x * x + y;
  CHECK(P.eval(std::vector<Elem>{1, 2}) == 0);
  CHECK(Polynomial(F, 2).eval(std::vector<Elem>{1, 1}) == 0);
  auto Q = x * y + Polynomial::constant(F, 2, 1);
  CHECK(Q.eval(std::vector<Elem>{2, 1}) == 0);

  auto u = Polynomial::variable(F, 1, 0) - Polynomial::constant(F, 1, 1);
  auto sq = u * u;
  CHECK(hasse_coefficient(sq, std::vector<Elem>{1}, {1}) == 0);
  CHECK(hasse_coefficient(sq, std::vector<Elem>{1}, {2}) == 1);
  CHECK(vanishing_order(sq, std::vector<Elem>{1}) == 2);

  auto xp = Polynomial::variable(F, 1, 0).pow(3);
  CHECK(hasse_coefficient(xp, std::vector<Elem>{0}, {1}) == 0);
  CHECK(hasse_coefficient(xp, std::vector<Elem>{0}, {3}) == 1);
}

TEST_CASE("Hasse coefficients reproduce Taylor expansion") {
  // P(x + v) = sum_e hasse(P, v, e) x^e, checked by evaluation at every point.
  auto F = Field::make(5);
  Rng rng(3);
  AffineSpace sp(F, 2);
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial P(F, 2);
    for (const auto& e : monomials_up_to(2, 4)) P.add_term(e, static_cast<Elem>(rng.below(5)));
    const Point v{static_cast<Elem>(rng.below(5)), static_cast<Elem>(rng.below(5))};
    for (PointIndex i = 0; i < sp.size(); ++i) {
      const Point x = sp.decode(i);
      Elem acc = 0;
      for (const auto& e : monomials_up_to(2, 4)) {
        Elem term = hasse_coefficient(P, v, e);
        term = F->mul(term, F->mul(F->pow(x[0], e[0]), F->pow(x[1], e[1])));
        acc = F->add(acc, term);
      }
      const Point shifted{F->add(x[0], v[0]), F->add(x[1], v[1])};
      REQUIRE(acc == P.eval(shifted));
    }
  }
}

TEST_CASE("factor_out and zero_count") {
  auto F = Field::make(3);
  auto x1 = Polynomial::variable(F, 2, 0), x2 = Polynomial::variable(F, 2, 1);
  auto one = Polynomial::constant(F, 2, 1);
  auto r = factor_out(x2 * x2 * (x1 + one), 1);
  CHECK(r.power == 2);
  CHECK(r.cofactor == x1 + one);
  auto r0 = factor_out(x1 + one, 1);
  CHECK(r0.power == 0);

  CHECK(zero_count(x1 * x1 + x2) == 3);
  auto F5 = Field::make(5);
  CHECK(zero_count(Polynomial::variable(F5, 3, 0)) == 25);
  CHECK(zero_count(Polynomial::constant(F5, 3, 2)) == 0);
}

TEST_CASE("Schwartz-Zippel bound on random polynomials") {
  for (std::uint64_t q : {3u, 4u, 5u}) {
    auto F = Field::of_order(q);
    Rng rng(q);
    for (int t = 0; t < 30; ++t) {
      Polynomial P(F, 2);
      const unsigned d = 1 + static_cast<unsigned>(rng.below(q - 1));
      for (const auto& e : monomials_up_to(2, d)) P.add_term(e, static_cast<Elem>(rng.below(q)));
      if (P.is_zero()) continue;
      CHECK(zero_count(P) <= static_cast<std::uint64_t>(P.degree()) * q);
    }
  }
}

TEST_CASE("polynomial text round trip") {
  auto F = Field::of_order(4);
  auto x = Polynomial::variable(F, 3, 0), z = Polynomial::variable(F, 3, 2);
  auto P = (x * z).scaled(3) + x.pow(2) + Polynomial::constant(F, 3, 2);
  CHECK(Polynomial::parse(F, 3, P.to_string()) == P);
}

TEST_CASE("graded monomial order") {
  const auto m = monomials_up_to(2, 2);
  REQUIRE(m.size() == 6);
  CHECK(m[0] == Monomial{0, 0});
  CHECK(m[1] == Monomial{1, 0});
  CHECK(m[2] == Monomial{0, 1});
  CHECK(m[3] == Monomial{2, 0});
  CHECK(m[4] == Monomial{1, 1});
  CHECK(m[5] == Monomial{0, 2});
}

TEST_CASE("random streams are reproducible") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  Rng c(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
