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
#include <cmath>
#include <string>

#include "kakeya/error.hpp"
#include "kakeya/maximal.hpp"
#include "kakeya/parallel.hpp"

namespace kakeya {

std::string_view theorem_name(Theorem t) noexcept {
  switch (t) {
    case Theorem::Exp: return "exp";
    case Theorem::Shoop: return "shoop";
    case Theorem::Kakeq: return "kakeq";
    case Theorem::Nikodym: return "nikodym";
    case Theorem::RestrictedW: return "restricted_W";
    case Theorem::KPlaneConj: return "kplane_conj";
    case Theorem::MixedQ: return "mixedq";
  }
  return "unknown";
}

Theorem parse_theorem(std::string_view name) {
  for (auto t : {Theorem::Exp, Theorem::Shoop, Theorem::Kakeq, Theorem::Nikodym, Theorem::RestrictedW,
                 Theorem::KPlaneConj, Theorem::MixedQ}) {
    if (theorem_name(t) == name) return t;
  }
  fail(ErrorCode::InvalidArgument, "unknown theorem tag '" + std::string(name) + "'");
}

namespace {

constexpr double kRegionSlack = 1e-12;

bool at_most(double a, double b) { return a <= b * (1.0 + kRegionSlack) + kRegionSlack; }

std::string pair_text(double p, double q) {
  return "(p=" + std::to_string(p) + ", q=" + std::to_string(q) + ")";
}

double conjugate_bound(double scale, double p) {
  if (p <= 1.0) return kInfinity;
  return scale * p / (p - 1.0);
}

}  // namespace

void check_exponent_region(const TheoremSpec& spec, std::size_t n) {
  const double nd = static_cast<double>(n);
  switch (spec.tag) {
    case Theorem::Shoop: {
      const bool ok = spec.p >= 1.0 && at_most(spec.p, nd) && spec.q >= 1.0 &&
                      at_most(spec.q, conjugate_bound(nd - 1.0, spec.p));
      require(ok, ErrorCode::ExponentOutOfRange,
              pair_text(spec.p, spec.q) + " outside 1 <= p <= n, 1 <= q <= (n-1)p/(p-1) for n=" +
                  std::to_string(n));
      break;
    }
    case Theorem::KPlaneConj: {
      require(spec.k >= 1 && spec.k <= n, ErrorCode::BadParameters, "need 1 <= k <= n");
      const double kd = static_cast<double>(spec.k);
      const bool ok = spec.p >= 1.0 && at_most(spec.p, nd / kd) && spec.q >= 1.0 &&
                      at_most(spec.q, conjugate_bound(nd - kd, spec.p));
      require(ok, ErrorCode::ExponentOutOfRange,
              pair_text(spec.p, spec.q) + " outside 1 <= p <= n/k, q <= (n-k)p/(p-1) for n=" +
                  std::to_string(n) + ", k=" + std::to_string(spec.k));
      break;
    }
    case Theorem::MixedQ:
      require(spec.k >= 1 && spec.k < n, ErrorCode::ExponentOutOfRange, "mixed norms need 1 <= k < n");
      break;
    default:
      break;
  }
}

namespace {

RatioReport finish(Theorem tag, double lhs, double rhs, nlohmann::json params) {
  RatioReport r;
  r.theorem = std::string(theorem_name(tag));
  r.lhs = lhs;
  r.rhs_scale = rhs;
  r.ratio = lhs / rhs;
  r.params = std::move(params);
  return r;
}

double qpow(double q, double e) { return std::pow(q, e); }

}  // namespace

RatioReport ratio_report(const PointFunction& f, const TheoremSpec& spec) {
  const std::size_t n = f.dim();
  const double q = static_cast<double>(f.space().q());
  const double nd = static_cast<double>(n);
  check_exponent_region(spec, n);
  require(!f.is_zero(), ErrorCode::ZeroFunction, "the ratio is undefined for f = 0");
  nlohmann::json params = {{"n", n}, {"q", f.space().q()}};
  switch (spec.tag) {
    case Theorem::Exp: {
      const auto r = kakeya_maximal(f);
      return finish(spec.tag, lp_norm(r.values, nd), qpow(q, (nd - 1.0) / nd) * lp_norm(f, nd), params);
    }
    case Theorem::Shoop: {
      const auto r = kakeya_maximal(f);
      params["p"] = spec.p;
      params["q_exp"] = spec.q;
      const double scale = std::isinf(spec.q) ? 1.0 : qpow(q, (nd - 1.0) / spec.q);
      return finish(spec.tag, lp_norm(r.values, spec.q), scale * lp_norm(f, spec.p), params);
    }
    case Theorem::Nikodym: {
      const auto r = nikodym_maximal(f);
      return finish(spec.tag, lp_norm(r.values, nd), q * lp_norm(f, nd), params);
    }
    case Theorem::KPlaneConj: {
      const Grassmannian gr(f.space(), spec.k);
      const auto r = kplane_maximal(f, gr);
      params["p"] = spec.p;
      params["q_exp"] = spec.q;
      params["k"] = spec.k;
      const double g = static_cast<double>(gr.size());
      const double scale = std::isinf(spec.q) ? 1.0 : std::pow(g, 1.0 / spec.q);
      return finish(spec.tag, lp_norm(r.values, spec.q), scale * lp_norm(f, spec.p), params);
    }
    case Theorem::MixedQ: {
      const Grassmannian gr(f.space(), spec.k);
      const auto r = kplane_maximal(f, gr);
      const auto exps = mixedq_exponents(n, spec.k);
      params["k"] = spec.k;
      params["exponents"] = exps;
      return finish(spec.tag, mixed_norm(gr, r.values, exps),
                    lp_norm(f, nd / static_cast<double>(spec.k)), params);
    }
    case Theorem::Kakeq:
    case Theorem::RestrictedW:
      fail(ErrorCode::InvalidArgument, "variety estimates need anchored curve data");
  }
  fail(ErrorCode::InternalError, "unhandled theorem tag");
}

RatioReport variety_ratio_report(const PointFunction& f, const VarietyProblem& problem, Theorem tag) {
  require(tag == Theorem::Kakeq || tag == Theorem::RestrictedW, ErrorCode::InvalidArgument,
          "variety_ratio_report handles kakeq and restricted_W");
  require(problem.n >= 1, ErrorCode::InvalidArgument, "exponent n must be >= 1");
  require(!f.is_zero(), ErrorCode::ZeroFunction, "the ratio is undefined for f = 0");
  const auto r = variety_maximal(f, problem.W, problem.ambient, problem.family, problem.mode);
  const double nd = static_cast<double>(problem.n);
  const double q = static_cast<double>(f.space().q());
  double scale = std::pow(q, (nd - 1.0) / nd);
  if (tag == Theorem::RestrictedW) {
    scale = std::pow(std::max(static_cast<double>(problem.W.size()), std::pow(q, nd - 1.0)), 1.0 / nd);
  }
  nlohmann::json params = {{"n", problem.n},
                           {"q", f.space().q()},
                           {"ambient_dim", f.dim()},
                           {"W_size", problem.W.size()},
                           {"curves", problem.family.size()}};
  return finish(tag, lp_norm(r.values, nd), scale * lp_norm(f, nd), params);
}

// ------------------------------------------------------------- ensembles

PointFunction random_point_function(const AffineSpace& space, Rng& rng) {
  const std::uint64_t size = space.size();
  std::vector<double> v(size, 0.0);
  switch (rng.below(5)) {
    case 0:
      for (auto& x : v) x = rng.uniform01();
      break;
    case 1: {
      const double density = 0.05 + 0.45 * rng.uniform01();
      for (auto& x : v) x = rng.uniform01() < density ? 1.0 : 0.0;
      break;
    }
    case 2: {
      const std::uint64_t spikes = 1 + rng.below(std::min<std::uint64_t>(size, 4));
      for (std::uint64_t i = 0; i < spikes; ++i) v[rng.below(size)] += 1.0 + 9.0 * rng.uniform01();
      break;
    }
    case 3: {
      std::vector<Elem> dir(space.dim());
      do {
        for (auto& c : dir) c = static_cast<Elem>(rng.below(space.q()));
      } while (std::all_of(dir.begin(), dir.end(), [](Elem c) { return c == 0; }));
      const Point base = space.decode(rng.below(size));
      for (auto p : line_points(space, make_line(space, base, dir))) v[p] = 1.0;
      for (auto& x : v) x += 0.1 * rng.uniform01();
      break;
    }
    default: {
      const std::size_t k = 1 + rng.below(space.dim());
      std::vector<Point> span(k, Point(space.dim()));
      for (auto& row : span) {
        for (auto& c : row) c = static_cast<Elem>(rng.below(space.q()));
      }
      span[0][rng.below(space.dim())] = 1;
      const Point offset = space.decode(rng.below(size));
      for (auto p : kplane_points(space, make_kplane(space, span, offset))) v[p] = 1.0;
      break;
    }
  }
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v[rng.below(size)] = 1.0;
  return PointFunction(space, std::move(v));
}

std::vector<PointFunction> sharpness_indicators(const AffineSpace& space) {
  std::vector<Elem> dir(space.dim(), 0);
  dir[0] = 1;
  const Point origin(space.dim(), 0);
  return {PointFunction::indicator(space, {0}),
          PointFunction::indicator(space, line_points(space, make_line(space, origin, dir))),
          PointFunction::constant(space, 1.0)};
}

EnsembleStats ratio_ensemble(const AffineSpace& space, const TheoremSpec& spec, std::size_t trials,
                             std::uint64_t seed) {
  require(trials >= 1, ErrorCode::InvalidArgument, "trials must be >= 1");
  check_exponent_region(spec, space.dim());
  EnsembleStats s;
  s.theorem = std::string(theorem_name(spec.tag));
  s.seed = seed;
  s.trial_seeds.resize(trials);
  s.ratios.resize(trials);
  parallel_for(trials, [&](std::size_t t) {
    const std::uint64_t ts = derive_seed(seed, t);
    Rng rng(ts);
    s.trial_seeds[t] = ts;
    s.ratios[t] = ratio_report(random_point_function(space, rng), spec).ratio;
  });
  double total = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    total += s.ratios[t];
    if (s.ratios[t] > s.ratios[s.argmax]) s.argmax = t;
  }
  s.max_ratio = s.ratios[s.argmax];
  s.mean_ratio = total / static_cast<double>(trials);
  return s;
}

// ------------------------------------------------------ set size report

KakeyaSetReport kakeya_set_report(const AffineSpace& space, const PointSet& E,
                                  const std::vector<AnchoredCurve>& curves, double lambda, std::size_t n) {
  require(lambda >= 1.0, ErrorCode::InvalidArgument, "lambda must be >= 1");
  require(n >= 1, ErrorCode::InvalidArgument, "n must be >= 1");
  require(!E.empty(), ErrorCode::EmptySet, "E is empty");
  std::vector<PointIndex> anchors;
  for (std::size_t j = 0; j < curves.size(); ++j) {
    const auto img = curve_points(space, curves[j].curve);
    require(contains(img.points, curves[j].anchor), ErrorCode::AnchorMissing,
            "curve " + std::to_string(j) + " misses its anchor");
    std::size_t hit = 0;
    for (auto p : img.points) hit += contains(E, p) ? 1 : 0;
    require(static_cast<double>(hit) >= lambda, ErrorCode::IntersectionTooSmall,
            "curve " + std::to_string(j) + " meets E in " + std::to_string(hit) + " points, fewer than lambda");
    anchors.push_back(curves[j].anchor);
  }
  std::sort(anchors.begin(), anchors.end());
  require(std::adjacent_find(anchors.begin(), anchors.end()) == anchors.end(), ErrorCode::InvalidArgument,
          "anchors must be distinct");
  KakeyaSetReport r;
  r.J = curves.size();
  r.lambda = lambda;
  r.set_size = E.size();
  r.n = n;
  const double nd = static_cast<double>(n);
  const double q = static_cast<double>(space.q());
  r.c_hat = std::pow(static_cast<double>(r.J) * std::pow(lambda, nd) /
                         (static_cast<double>(E.size()) * std::pow(q, nd - 1.0)),
                     1.0 / nd);
  return r;
}

DualCheck dual_inequality(const AffineSpace& space, std::span<const double> g) {
  const std::size_t n = space.dim();
  require(n >= 2, ErrorCode::InvalidArgument, "the dual inequality needs n >= 2");
  const auto dirs = enum_directions(space.field(), n);
  require(g.size() == dirs.size(), ErrorCode::DimensionMismatch, "g must have one value per direction");
  const double p = static_cast<double>(n) / static_cast<double>(n - 1);
  std::vector<double> total(space.size(), 0.0);
  const Point origin(n, 0);
  std::vector<double> pieces;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    require(g[i] >= 0.0, ErrorCode::InvalidArgument, "g must be non-negative");
    const auto pts = line_points(space, make_line(space, origin, dirs[i].rep));
    for (auto x : pts) total[x] += g[i];
    std::vector<double> piece(pts.size(), g[i]);
    pieces.push_back(lp_norm(piece, p));
  }
  return {lp_norm(total, p), lp_norm(pieces, p)};
}

// --------------------------------------------------------- serialization

nlohmann::json to_json(const MaximalResult& r) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& x : r.witnesses) {
    if (x) {
      w.push_back({{"object", x->object}, {"points", x->summed}});
    } else {
      w.push_back(nullptr);
    }
  }
  return {{"domain", domain_name(r.domain)}, {"keys", r.keys}, {"values", r.values}, {"witnesses", w}};
}

nlohmann::json to_json(const RatioReport& r) {
  nlohmann::json j = {{"theorem", r.theorem},
                      {"lhs", r.lhs},
                      {"rhs_scale", r.rhs_scale},
                      {"ratio", r.ratio},
                      {"params", r.params}};
  if (r.seed) j["seed"] = *r.seed;
  return j;
}

nlohmann::json to_json(const EnsembleStats& s) {
  return {{"theorem", s.theorem},          {"seed", s.seed},
          {"trials", s.ratios.size()},     {"max_ratio", s.max_ratio},
          {"mean_ratio", s.mean_ratio},    {"argmax_trial", s.argmax},
          {"argmax_seed", s.trial_seeds.empty() ? 0 : s.trial_seeds[s.argmax]}};
}

nlohmann::json to_json(const KakeyaSetReport& r) {
  return {{"J", r.J}, {"lambda", r.lambda}, {"set_size", r.set_size}, {"n", r.n}, {"c_hat", r.c_hat}};
}

}  // namespace kakeya
