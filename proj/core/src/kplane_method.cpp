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

#include <algorithm>
#include <string>

#include "kakeya/parallel.hpp"
#include "kakeya/polymethod.hpp"

namespace kakeya {

namespace {

BigInt big_pow(std::uint64_t base, std::uint64_t e) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= base;
  return r;
}

BigInt big_binomial(const BigInt& n, std::uint64_t k) {
  if (n < k) return 0;
  BigInt r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

}  // namespace

std::string to_string(const BigRational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

KPlaneBound kplane_bound(std::size_t n, std::size_t k, std::uint64_t q) {
  require(k >= 2 && k < n, ErrorCode::BadParameters, "the k-plane bound needs 2 <= k < n");
  require(q >= 2, ErrorCode::BadParameters, "q must be >= 2");
  KPlaneBound b;
  b.m = big_pow(q, k - 1);
  const BigInt mq = b.m * q;
  const BigInt dim = big_binomial(mq + n - 1, n);
  const BigInt per_point = big_binomial(b.m + n - 1, n);
  b.binomial_form = BigRational(dim, per_point);
  const std::uint64_t pairs = n * (n - 1) / 2;
  // q^n (1 - q^{1-k})^{C(n,2)} = q^n ((q^{k-1} - 1) / q^{k-1})^{C(n,2)}
  BigRational factor(b.m - 1, b.m);
  BigRational closed(big_pow(q, n));
  for (std::uint64_t i = 0; i < pairs; ++i) closed *= factor;
  b.closed_form = closed;
  BigInt threshold = 0;
  for (std::size_t i = 0; i <= k; ++i) threshold += big_pow(q, i);
  b.chain = {{"n", n},
             {"k", k},
             {"q", q},
             {"m", b.m.str()},
             {"degree_bound_mq_minus_1", BigInt(mq - 1).str()},
             {"plane_degree_threshold", threshold.str()},
             {"degree_below_threshold", static_cast<bool>(mq - 1 < threshold)},
             {"dim_P", dim.str()},
             {"conditions_per_point", per_point.str()},
             {"binomial_form", to_string(b.binomial_form)},
             {"closed_form", to_string(b.closed_form)},
             {"closed_le_binomial", static_cast<bool>(b.closed_form <= b.binomial_form)}};
  return b;
}

nlohmann::json to_json(const KPlaneBound& b) {
  return {{"binomial_form", to_string(b.binomial_form)},
          {"binomial_form_value", static_cast<double>(b.binomial_form)},
          {"closed_form", to_string(b.closed_form)},
          {"closed_form_value", static_cast<double>(b.closed_form)},
          {"chain", b.chain}};
}

KPlaneCheck kplane_kakeya_check(const AffineSpace& space, const PointSet& E, std::size_t k) {
  const Grassmannian gr(space, k);
  const auto mask = membership(E, space.size());
  const auto coords = coordinate_table(space);
  const std::uint64_t full = checked_pow(space.q(), static_cast<unsigned>(k), space.size(), "q^k");
  std::vector<char> covered(gr.size(), 0);
  parallel_for(gr.size(), [&](std::size_t i) {
    const auto hits = CosetIndexer(space, gr[i]).hits(mask, coords);
    covered[i] = std::any_of(hits.begin(), hits.end(), [&](std::uint64_t h) { return h == full; });
  });
  KPlaneCheck r;
  r.kakeya = true;
  for (std::size_t i = 0; i < gr.size(); ++i) {
    if (!covered[i]) {
      r.kakeya = false;
      r.missing = i;
      break;
    }
  }
  return r;
}

PointSet build_kplane_product(const FieldPtr& field, std::size_t n, std::size_t k) {
  require(k >= 1 && k < n, ErrorCode::BadParameters, "need 1 <= k < n");
  const std::size_t head_dim = n - k + 1;
  const PointSet K = build_small_kakeya(field, head_dim);
  const AffineSpace space(field, n);
  const std::uint64_t tail = space.size() / AffineSpace(field, head_dim).size();
  const auto in_k = membership(K, AffineSpace(field, head_dim).size());
  PointSet E;
  for (PointIndex p = 0; p < space.size(); ++p) {
    if (p % tail != 0 || in_k[p / tail]) E.push_back(p);
  }
  return E;
}

VanishingCertificate kplane_certificate(const AffineSpace& space, const PointSet& E, std::size_t k,
                                        const Caps& caps) {
  require(k >= 1 && k <= space.dim(), ErrorCode::BadParameters, "need 1 <= k <= n");
  const std::uint64_t m = checked_pow(space.q(), static_cast<unsigned>(k - 1), UINT32_MAX, "q^{k-1}");
  const std::uint64_t D = m * space.q() - 1;
  require(D < UINT32_MAX, ErrorCode::MatrixTooLarge, "degree bound too large");
  return find_vanishing_poly(MultiplicityFunction::on_set(space, E, static_cast<unsigned>(m)),
                             static_cast<unsigned>(D), caps);
}

}  // namespace kakeya
