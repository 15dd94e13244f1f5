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

#include "kakeya/amplify.hpp"

#include <algorithm>
#include <cmath>

#include "kakeya/random.hpp"

namespace kakeya {

namespace {

constexpr double kNormTolerance = 1e-12;

double power_sum(const PointFunction& f, double n) {
  const double norm = lp_norm(f, n);
  return std::pow(norm, n);
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

Point random_point(const AffineSpace& space, Rng& rng) { return space.decode(rng.below(space.size())); }

PointSet omega_of(const AffineSpace& base, const PointSet& anchors, const std::vector<Point>& translations) {
  const Field& F = base.f();
  std::vector<PointIndex> out;
  out.reserve(anchors.size() * translations.size());
  Point w(base.dim());
  for (const auto& u : translations) {
    for (PointIndex a : anchors) {
      base.decode_into(a, w);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = F.add(w[i], u[i]);
      out.push_back(base.encode(w));
    }
  }
  return make_point_set(std::move(out));
}

std::vector<Point> draw_translations(const AffineSpace& base, std::size_t M, Rng& rng) {
  std::vector<Point> t;
  t.reserve(M);
  for (std::size_t m = 0; m < M; ++m) t.push_back(random_point(base, rng));
  return t;
}

bool full_rank(const Matrix& m) { return row_reduce(m).rank == std::min(m.rows(), m.cols()); }

}  // namespace

AmplifiedInstance amplify_with(const PointFunction& f, const PointSet& anchors, std::vector<Point> translations) {
  const AffineSpace& space = f.space();
  const std::size_t n = space.dim();
  require(n >= 2, ErrorCode::BadParameters, "amplification needs n >= 2");
  require(!translations.empty(), ErrorCode::BadParameters, "need at least one translation");
  const AffineSpace base(space.field(), n - 1);
  for (PointIndex a : anchors) require(a < base.size(), ErrorCode::InvalidArgument, "anchor outside F^{n-1}");
  for (const auto& u : translations) {
    require(u.size() == n - 1, ErrorCode::DimensionMismatch, "translation must lie in F^{n-1}");
    for (Elem e : u) require(space.f().contains(e), ErrorCode::InvalidArgument, "translation coordinate outside F");
  }

  const Field& F = space.f();
  const double dn = static_cast<double>(n);
  const auto coords = coordinate_table(space);
  std::vector<double> acc(space.size(), 0.0);
  // shifted[m][v] = index of v - (u_m, 0)
  std::vector<std::vector<PointIndex>> shifted(translations.size(), std::vector<PointIndex>(space.size()));
  Point x(n);
  for (std::size_t m = 0; m < translations.size(); ++m) {
    const auto& u = translations[m];
    for (PointIndex v = 0; v < space.size(); ++v) {
      const Elem* c = &coords[v * n];
      for (std::size_t i = 0; i + 1 < n; ++i) x[i] = F.sub(c[i], u[i]);
      x[n - 1] = c[n - 1];
      shifted[m][v] = space.encode(x);
    }
  }
  for (PointIndex v = 0; v < space.size(); ++v) {
    double s = 0;
    for (std::size_t m = 0; m < translations.size(); ++m) s += std::pow(f[shifted[m][v]], dn);
    acc[v] = std::pow(s, 1.0 / dn);
  }

  AmplifiedInstance out{std::move(translations), PointFunction(space, std::move(acc)), {}, 0,
                        AmplifyMode::Random, 0.0, true};
  out.omega = omega_of(base, anchors, out.translations);

  const double M = static_cast<double>(out.translations.size());
  out.norm_relative_error = relative_gap(power_sum(out.f_M, dn), M * power_sum(f, dn));
  require(out.norm_relative_error <= kNormTolerance, ErrorCode::InternalError,
          "amplified norm identity violated");
  for (std::size_t m = 0; m < out.translations.size() && out.dominates; ++m) {
    for (PointIndex v = 0; v < space.size(); ++v) {
      const double orig = f[shifted[m][v]];
      if (out.f_M[v] < orig * (1 - kNormTolerance)) {
        out.dominates = false;
        break;
      }
    }
  }
  require(out.dominates, ErrorCode::InternalError, "amplified function fails to dominate a translate");
  return out;
}

AmplifiedInstance amplify(const PointFunction& f, const PointSet& anchors, std::size_t M, std::uint64_t seed,
                          AmplifyMode mode, std::size_t R) {
  require(M >= 1, ErrorCode::BadParameters, "M must be >= 1");
  require(f.dim() >= 2, ErrorCode::BadParameters, "amplification needs n >= 2");
  const AffineSpace base(f.space().field(), f.dim() - 1);
  std::vector<Point> chosen;
  if (mode == AmplifyMode::Random) {
    Rng rng(seed);
    chosen = draw_translations(base, M, rng);
  } else {
    require(R >= 1, ErrorCode::BadParameters, "R must be >= 1");
    std::size_t best = 0;
    for (std::size_t r = 0; r < R; ++r) {
      Rng rng(derive_seed(seed, r));
      auto cand = draw_translations(base, M, rng);
      const std::size_t size = omega_of(base, anchors, cand).size();
      if (chosen.empty() || size > best) {
        best = size;
        chosen = std::move(cand);
      }
    }
  }
  auto out = amplify_with(f, anchors, std::move(chosen));
  out.seed = seed;
  out.mode = mode;
  return out;
}

double expected_omega_size(double size, std::size_t J, std::size_t M) {
  require(size > 0, ErrorCode::BadParameters, "size must be positive");
  const double miss = 1.0 - static_cast<double>(J) / size;
  return size * (1.0 - std::pow(std::max(miss, 0.0), static_cast<double>(M)));
}

ChooseM choose_M(double lambda, const PointFunction& f, double K0) {
  require(lambda > 0 && K0 > 0, ErrorCode::BadParameters, "lambda and K0 must be positive");
  const double norm = lp_norm(f, static_cast<double>(f.dim()));
  require(norm > 0, ErrorCode::ZeroFunction, "f is identically zero");
  ChooseM r;
  r.raw = std::pow(lambda / (K0 * norm), static_cast<double>(f.dim()));
  double fl = std::floor(r.raw);
  const double up = std::round(r.raw);
  if (up > fl && std::abs(r.raw - up) <= 1e-12 * std::max(1.0, up)) fl = up;
  if (fl < 1) {
    r.M = 1;
    r.clamped = true;
  } else {
    r.M = static_cast<std::uint64_t>(fl);
  }
  return r;
}

FlatProjection random_flat_projection(const FieldPtr& field, std::size_t N, std::size_t n, std::uint64_t seed) {
  require(n >= 2 && N >= n, ErrorCode::BadParameters, "need N >= n >= 2");
  const std::size_t rows = n - 1, cols = N - 1;
  Rng rng(seed);
  FlatProjection proj{Matrix(field, rows, cols), Matrix(field, n, N), seed, 0, false};
  bool ok = false;
  for (unsigned attempt = 1; attempt <= 64 && !ok; ++attempt) {
    proj.attempts = attempt;
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) proj.T.at(r, c) = static_cast<Elem>(rng.below(field->q()));
    ok = full_rank(proj.T);
  }
  if (!ok) {
    proj.fallback = true;
    proj.T = Matrix(field, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) proj.T.at(r, r) = 1;
  }
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) proj.T_hat.at(r, c) = proj.T.at(r, c);
  proj.T_hat.at(n - 1, N - 1) = 1;
  return proj;
}

std::vector<PointIndex> image_table(const Matrix& map) {
  const AffineSpace src(map.field(), map.cols());
  const AffineSpace dst(map.field(), map.rows());
  const Field& F = *map.field();
  // Linear: image(v) is the sum of v_c * column c, added digitwise in F^rows.
  std::vector<PointIndex> out(src.size());
  Point x(src.dim()), y(dst.dim());
  for (PointIndex v = 0; v < src.size(); ++v) {
    src.decode_into(v, x);
    for (std::size_t r = 0; r < map.rows(); ++r) {
      Elem s = 0;
      for (std::size_t c = 0; c < map.cols(); ++c) s = F.add(s, F.mul(map.at(r, c), x[c]));
      y[r] = s;
    }
    out[v] = dst.encode(y);
  }
  return out;
}

Pushforward pushforward_power(const PointFunction& f, const FlatProjection& proj) {
  const Matrix& T_hat = proj.T_hat;
  require(f.dim() == T_hat.cols(), ErrorCode::DimensionMismatch, "f must live on F^N");
  const AffineSpace dst(f.space().field(), T_hat.rows());
  const double dn = static_cast<double>(T_hat.rows());
  const auto img = image_table(T_hat);
  std::vector<double> acc(dst.size(), 0.0);
  for (PointIndex v = 0; v < img.size(); ++v) acc[img[v]] += std::pow(f[v], dn);
  for (auto& a : acc) a = std::pow(a, 1.0 / dn);
  Pushforward out{PointFunction(dst, std::move(acc)), 0.0};
  out.norm_relative_error = relative_gap(power_sum(out.f_T, dn), power_sum(f, dn));
  require(out.norm_relative_error <= kNormTolerance, ErrorCode::InternalError,
          "pushforward norm identity violated");
  return out;
}

PointFunction pushforward_sup(const PointFunction& g, const PointSet& W, const Matrix& T) {
  require(g.dim() == T.cols(), ErrorCode::DimensionMismatch, "g must live on the source of T");
  const AffineSpace dst(g.space().field(), T.rows());
  const auto img = image_table(T);
  PointFunction out(dst);
  for (PointIndex w : W) {
    require(w < g.space().size(), ErrorCode::InvalidArgument, "W point outside the domain");
    if (g[w] > out[img[w]]) out.set(img[w], g[w]);
  }
  return out;
}

CollisionStats collision_stats(const AffineSpace& source, const PointSet& omega, std::size_t n, std::size_t trials,
                               std::uint64_t seed) {
  require(trials >= 1, ErrorCode::BadParameters, "need at least one trial");
  const std::size_t N = source.dim() + 1;
  const double q = static_cast<double>(source.q());
  CollisionStats s;
  s.seed = seed;
  s.trials = trials;
  s.omega_size = omega.size();
  const double size = static_cast<double>(omega.size());
  s.bound = size * size * std::pow(q, 1.0 - static_cast<double>(n));
  const double target = 0.5 * size * std::min(1.0, std::pow(q, static_cast<double>(n) - 1.0) / std::max(size, 1.0));
  double collisions = 0, images = 0, large = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto proj = random_flat_projection(source.field(), N, n, derive_seed(seed, t));
    const auto img = image_table(proj.T);
    std::vector<PointIndex> hits;
    hits.reserve(omega.size());
    for (PointIndex w : omega) hits.push_back(img[w]);
    std::sort(hits.begin(), hits.end());
    double pairs = 0, distinct = 0;
    for (std::size_t i = 0; i < hits.size();) {
      std::size_t j = i;
      while (j < hits.size() && hits[j] == hits[i]) ++j;
      const double c = static_cast<double>(j - i);
      pairs += c * (c - 1);
      distinct += 1;
      i = j;
    }
    collisions += pairs;
    images += distinct;
    if (distinct >= target) large += 1;
  }
  s.mean_collisions = collisions / static_cast<double>(trials);
  s.mean_image_size = images / static_cast<double>(trials);
  s.large_image_fraction = large / static_cast<double>(trials);
  s.pass = s.mean_collisions <= 4 * s.bound;
  return s;
}

double collision_probability(std::uint64_t q, std::size_t N, std::size_t n) {
  require(n >= 2 && N >= n, ErrorCode::BadParameters, "need N >= n >= 2");
  const double dq = static_cast<double>(q);
  return (std::pow(dq, static_cast<double>(N - n)) - 1) / (std::pow(dq, static_cast<double>(N - 1)) - 1);
}

std::pair<std::uint64_t, std::uint64_t> collision_counts_exhaustive(const FieldPtr& field, std::size_t N,
                                                                    std::size_t n, const Point& d,
                                                                    std::uint64_t cap) {
  require(n >= 2 && N >= n, ErrorCode::BadParameters, "need N >= n >= 2");
  require(d.size() == N - 1, ErrorCode::DimensionMismatch, "d must lie in F^{N-1}");
  const std::size_t rows = n - 1, cols = N - 1;
  const AffineSpace entries(field, rows * cols, cap);
  const Field& F = *field;
  std::uint64_t hit = 0, total = 0;
  Point e(rows * cols);
  Matrix T(field, rows, cols);
  for (PointIndex idx = 0; idx < entries.size(); ++idx) {
    entries.decode_into(idx, e);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) T.at(r, c) = e[r * cols + c];
    if (!full_rank(T)) continue;
    ++total;
    bool kernel = true;
    for (std::size_t r = 0; r < rows && kernel; ++r) {
      Elem s = 0;
      for (std::size_t c = 0; c < cols; ++c) s = F.add(s, F.mul(T.at(r, c), d[c]));
      kernel = s == 0;
    }
    if (kernel) ++hit;
  }
  return {hit, total};
}

FiberCheck bezout_fiber_check(const ParametricCurve& gamma, const FlatProjection& proj) {
  const Matrix& T_hat = proj.T_hat;
  require(gamma.dim() == T_hat.cols(), ErrorCode::DimensionMismatch, "curve must live in F^N");
  const FieldPtr& field = gamma.field();
  FiberCheck r;
  r.degree = gamma.declared_degree();
  for (std::size_t row = 0; row < T_hat.rows(); ++row) {
    UniPoly comp = UniPoly::constant(field, 0);
    for (std::size_t c = 0; c < T_hat.cols(); ++c)
      comp = comp + gamma.components()[c].scaled(T_hat.at(row, c));
    if (comp.degree() >= 1) r.nonconstant = true;
  }
  const AffineSpace src(field, T_hat.cols());
  const AffineSpace dst(field, T_hat.rows());
  const auto image = curve_points(src, gamma);
  std::map<PointIndex, std::size_t> fibers;
  for (PointIndex v : image.points) {
    const auto y = T_hat.apply(src.decode(v));
    ++fibers[dst.encode(y)];
  }
  for (const auto& [y, c] : fibers) r.max_fiber = std::max(r.max_fiber, c);
  return r;
}

nlohmann::json to_json(const CollisionStats& s) {
  return {{"seed", s.seed},
          {"trials", s.trials},
          {"omega_size", s.omega_size},
          {"mean_collisions", s.mean_collisions},
          {"bound", s.bound},
          {"mean_image_size", s.mean_image_size},
          {"large_image_fraction", s.large_image_fraction},
          {"pass", s.pass}};
}

nlohmann::json to_json(const AmplifiedInstance& a) {
  nlohmann::json t = nlohmann::json::array();
  for (const auto& u : a.translations) t.push_back(u);
  return {{"seed", a.seed},
          {"mode", a.mode == AmplifyMode::Random ? "random" : "best_of_r"},
          {"M", a.translations.size()},
          {"translations", t},
          {"omega", a.omega},
          {"omega_size", a.omega.size()},
          {"norm_relative_error", a.norm_relative_error},
          {"dominates", a.dominates},
          {"f_M", a.f_M.values()}};
}

}  // namespace kakeya
