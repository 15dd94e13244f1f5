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

#include <cstdint>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "kakeya/geometry.hpp"
#include "kakeya/linalg.hpp"
#include "kakeya/maximal.hpp"

namespace kakeya {

enum class AmplifyMode { Random, BestOfR };

/// f_M(v) = (sum_m f(v - (u_m, 0))^n)^{1/n} with translations u_m in F^{n-1},
/// and Omega = {w_j + u_m}.
struct AmplifiedInstance {
  std::vector<Point> translations;
  PointFunction f_M;
  PointSet omega;
  std::uint64_t seed = 0;
  AmplifyMode mode = AmplifyMode::Random;
  /// |‖f_M‖_n^n - M ‖f‖_n^n| / (M ‖f‖_n^n).
  double norm_relative_error = 0;
  bool dominates = false;
};

/// Anchors are distinct points of F^{n-1}. Random mode draws M translations
/// from Rng(seed); best-of-R draws R candidate sets from derived seeds and
/// keeps the first with the largest Omega. Both invariants are checked
/// before returning (InternalError otherwise).
AmplifiedInstance amplify(const PointFunction& f, const PointSet& anchors, std::size_t M, std::uint64_t seed,
                          AmplifyMode mode = AmplifyMode::Random, std::size_t R = 16);
/// Same construction with explicit translations.
AmplifiedInstance amplify_with(const PointFunction& f, const PointSet& anchors, std::vector<Point> translations);

/// size * (1 - (1 - J/size)^M), the exact expectation of |Omega| for
/// size = q^{n-1}.
double expected_omega_size(double size, std::size_t J, std::size_t M);

struct ChooseM {
  std::uint64_t M = 0;
  bool clamped = false;
  double raw = 0;
};
/// floor(lambda^n / (K0 ‖f‖_n)^n), clamped to 1 with a flag.
ChooseM choose_M(double lambda, const PointFunction& f, double K0);

/// T : F^{N-1} -> F^{n-1} of rank n-1 and its extension
/// T_hat(w, v_N) = (T w, v_N).
struct FlatProjection {
  Matrix T;
  Matrix T_hat;
  std::uint64_t seed = 0;
  unsigned attempts = 0;
  bool fallback = false;
};
/// Uniform matrices rejected until full rank, at most 64 draws; then [I | 0]
/// with the fallback flag.
FlatProjection random_flat_projection(const FieldPtr& field, std::size_t N, std::size_t n, std::uint64_t seed);

/// Image index of every point of F^{cols} under the matrix.
std::vector<PointIndex> image_table(const Matrix& map);

struct Pushforward {
  PointFunction f_T;
  double norm_relative_error = 0;
};
/// f_T(x) = (sum_{T_hat v = x} f(v)^n)^{1/n} on F^n, fibers summed in
/// increasing source order.
Pushforward pushforward_power(const PointFunction& f, const FlatProjection& proj);
/// g_T(y) = sup over w in W with T w = y of g(w); empty fibers give 0.
PointFunction pushforward_sup(const PointFunction& g, const PointSet& W, const Matrix& T);

struct CollisionStats {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t omega_size = 0;
  double mean_collisions = 0;
  /// |Omega|^2 q^{1-n}
  double bound = 0;
  double mean_image_size = 0;
  /// Fraction of trials with |T(Omega)| >= 0.5 |Omega| min(1, q^{n-1}/|Omega|).
  double large_image_fraction = 0;
  bool pass = false;  // mean_collisions <= 4 * bound
};
/// Omega lies in F^{N-1}; each trial draws T from derive_seed(seed, t).
CollisionStats collision_stats(const AffineSpace& source, const PointSet& omega, std::size_t n,
                               std::size_t trials, std::uint64_t seed);
/// (q^{N-n} - 1) / (q^{N-1} - 1): chance that a fixed nonzero vector lies in
/// the kernel of a uniform surjection F^{N-1} -> F^{n-1}.
double collision_probability(std::uint64_t q, std::size_t N, std::size_t n);
/// Exhaustive count over all (n-1) x (N-1) matrices: (full rank with d in
/// the kernel, full rank).
std::pair<std::uint64_t, std::uint64_t> collision_counts_exhaustive(const FieldPtr& field, std::size_t N,
                                                                    std::size_t n, const Point& d,
                                                                    std::uint64_t cap = 10'000'000);

struct FiberCheck {
  bool nonconstant = false;
  std::size_t max_fiber = 0;
  unsigned degree = 0;
};
/// Largest |gamma(F) cap T_hat^{-1}(y)| over y, for gamma in F^N.
FiberCheck bezout_fiber_check(const ParametricCurve& gamma, const FlatProjection& proj);

nlohmann::json to_json(const CollisionStats& s);
nlohmann::json to_json(const AmplifiedInstance& a);

}  // namespace kakeya
