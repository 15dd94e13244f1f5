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

#include <cmath>
#include <string>

#include "kakeya/error.hpp"
#include "kakeya/maximal.hpp"

namespace kakeya {

namespace {

struct MixedContext {
  const Grassmannian& gr;
  std::span<const double> g;
  std::span<const double> exps;
  ComplementRule rule;
  const AffineSpace& space;
};

Point combine(const Field& f, const std::vector<Point>& basis, const Point& c) {
  Point v(basis.front().size(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (c[i] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.add(v[j], f.mul(c[i], basis[i][j]));
  }
  return v;
}

double power_mean(const std::vector<double>& vals, double p) { return lp_norm(vals, p, true); }

// Norm over Gr(V, remaining) of sigma -> g(prefix + sigma), V = span(basis).
double mixed(const MixedContext& ctx, std::vector<Point>& prefix, const std::vector<Point>& basis,
             std::size_t level) {
  const Field& f = ctx.space.f();
  const auto dirs = enum_directions(ctx.space.field(), basis.size());
  std::vector<double> inner;
  inner.reserve(dirs.size());
  const bool last = level + 1 == ctx.exps.size();
  for (const auto& d : dirs) {
    prefix.push_back(combine(f, basis, d.rep));
    if (last) {
      inner.push_back(ctx.g[ctx.gr.index_of(prefix)]);
    } else {
      std::size_t drop = 0;
      for (std::size_t i = 0; i < d.rep.size(); ++i) {
        if (d.rep[i] == 0) continue;
        drop = i;
        if (ctx.rule == ComplementRule::FirstNonzero) break;
      }
      std::vector<Point> complement;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        if (i != drop) complement.push_back(basis[i]);
      }
      inner.push_back(mixed(ctx, prefix, complement, level + 1));
    }
    prefix.pop_back();
  }
  return power_mean(inner, ctx.exps[level]);
}

}  // namespace

double mixed_norm(const Grassmannian& gr, std::span<const double> g, std::span<const double> exponents,
                  ComplementRule rule) {
  require(g.size() == gr.size(), ErrorCode::DimensionMismatch, "function size differs from Grassmannian size");
  require(exponents.size() == gr.k(), ErrorCode::BadExponent,
          "need " + std::to_string(gr.k()) + " exponents, got " + std::to_string(exponents.size()));
  for (double e : exponents) {
    require(e >= 1.0 && !std::isnan(e), ErrorCode::BadExponent, "mixed-norm exponents must be >= 1");
  }
  require(gr.size() > 0, ErrorCode::InvalidArgument, "empty Grassmannian");
  const AffineSpace& space = gr.space();
  const std::size_t n = space.dim();
  std::vector<Point> basis;
  for (std::size_t i = 0; i < n; ++i) {
    Point e(n, 0);
    e[i] = 1;
    basis.push_back(std::move(e));
  }
  const MixedContext ctx{gr, g, exponents, rule, space};
  std::vector<Point> prefix;
  return mixed(ctx, prefix, basis, 0);
}

std::vector<double> mixedq_exponents(std::size_t n, std::size_t k) {
  require(k >= 1 && k < n, ErrorCode::BadExponent, "mixed-norm exponents need 1 <= k < n");
  std::vector<double> out;
  for (std::size_t i = 1; i <= k; ++i) {
    out.push_back(static_cast<double>((n - i) * (n - i + 1)) / static_cast<double>(n - k));
  }
  return out;
}

}  // namespace kakeya
