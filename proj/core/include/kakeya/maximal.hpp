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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kakeya/geometry.hpp"
#include "kakeya/random.hpp"
#include "kakeya/space.hpp"

namespace kakeya {

/// Non-negative function on F^n, stored densely in point-index order.
/// Values are stored as absolute values.
class PointFunction {
 public:
  explicit PointFunction(AffineSpace space);
  PointFunction(AffineSpace space, std::vector<double> values);
  static PointFunction indicator(const AffineSpace& space, const PointSet& set);
  static PointFunction constant(const AffineSpace& space, double c);

  const AffineSpace& space() const noexcept { return space_; }
  std::size_t dim() const noexcept { return space_.dim(); }
  double operator[](PointIndex i) const noexcept { return v_[i]; }
  double at(std::span<const Elem> x) const { return v_[space_.encode(x)]; }
  void set(PointIndex i, double value);
  const std::vector<double>& values() const noexcept { return v_; }
  bool is_zero() const noexcept;
  PointSet support() const;

  PointFunction operator+(const PointFunction& o) const;
  PointFunction scaled(double c) const;

 private:
  AffineSpace space_;
  std::vector<double> v_;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (sum |v|^p)^(1/p) with compensated summation; p = kInfinity gives the max.
/// The normalized variant averages before taking the root. Throws
/// BadExponent unless p >= 1.
double lp_norm(std::span<const double> values, double p, bool normalized = false);
/// Same quantity summed in ascending order without compensation.
double lp_norm_sorted(std::span<const double> values, double p, bool normalized = false);
inline double lp_norm(const PointFunction& f, double p) { return lp_norm(f.values(), p); }

enum class Domain { Directions, HyperplanePoints, VarietyPoints, AmbientPoints, Grassmannian };
std::string_view domain_name(Domain d) noexcept;

/// The geometric object achieving a value and the points that were summed.
struct Witness {
  nlohmann::json object;
  PointSet summed;
};

struct MaximalResult {
  Domain domain = Domain::Directions;
  /// Enumeration index (directions, Grassmannian) or packed point index.
  std::vector<std::uint64_t> keys;
  std::vector<double> values;
  /// Empty where the supremum ranged over nothing.
  std::vector<std::optional<Witness>> witnesses;
};

/// Sum of f over the points in index order; every operator accumulates in
/// this order so witnesses reproduce values exactly.
double sum_over(const PointFunction& f, const PointSet& points);
/// True iff each recorded witness re-sums to its stored value bit-exactly.
bool witnesses_reproduce(const PointFunction& f, const MaximalResult& r);

/// Per direction, max over parallel lines of the line sum.
MaximalResult kakeya_maximal(const PointFunction& f);
/// Per subspace of Gr(F^n, k), max over its cosets of the coset sum.
MaximalResult kplane_maximal(const PointFunction& f, std::size_t k);
/// Same as kplane_maximal, reusing an enumerated Grassmannian.
MaximalResult kplane_maximal(const PointFunction& f, const Grassmannian& gr);

/// Every line of F^n as a degree one curve, in all_lines order.
std::vector<ParametricCurve> line_family(const AffineSpace& space);

/// Domain F^{n-1}, identified with {x_n = 0}. For each w, the sup over family
/// members through (w, 0) of the sum of f over the curve points off the
/// hyperplane. Ties keep the earliest member; empty sups are 0.
MaximalResult curve_maximal(const PointFunction& f, const std::vector<ParametricCurve>& family);

struct AnchoredCurve {
  PointIndex anchor;
  ParametricCurve curve;
};

/// Which curve points contribute to a variety sum.
enum class VarietySum { AllPoints, OffAmbient };

/// Domain W. Each family member must pass through its anchor (AnchorMissing)
/// and must not lie in the zero set of `ambient` (ContainmentViolation).
MaximalResult variety_maximal(const PointFunction& f, const PointSet& W,
                              const std::vector<Polynomial>& ambient,
                              const std::vector<AnchoredCurve>& family,
                              VarietySum mode = VarietySum::AllPoints);
/// All lines through every point of W, anchored at that point.
std::vector<AnchoredCurve> lines_through_points(const AffineSpace& space, const PointSet& W);

/// Per point x (of W, or of F^n when W is absent), sup over lines through x
/// of the full line sum.
MaximalResult nikodym_maximal(const PointFunction& f, const std::optional<PointSet>& W = std::nullopt);
/// Curve-family variant: sup over family members through x of the full sum.
MaximalResult nikodym_maximal(const PointFunction& f, const std::vector<ParametricCurve>& family,
                              const std::optional<PointSet>& W = std::nullopt);

// ----------------------------------------------------------- mixed norms

enum class ComplementRule { FirstNonzero, LastNonzero };

/// Recursive normalized mixed norm of g : Gr(F^n, k) -> R, with g indexed in
/// Grassmannian order. exponents has length k; entries may be kInfinity.
double mixed_norm(const Grassmannian& gr, std::span<const double> g,
                  std::span<const double> exponents,
                  ComplementRule rule = ComplementRule::FirstNonzero);

/// q_i = (n-i)(n-i+1)/(n-k) for i = 1..k; requires 1 <= k < n.
std::vector<double> mixedq_exponents(std::size_t n, std::size_t k);

// ---------------------------------------------------------------- ratios

enum class Theorem { Exp, Shoop, Kakeq, Nikodym, RestrictedW, KPlaneConj, MixedQ };
std::string_view theorem_name(Theorem t) noexcept;
Theorem parse_theorem(std::string_view name);

struct TheoremSpec {
  Theorem tag = Theorem::Exp;
  double p = 0;   // source exponent (shoop, kplane_conj)
  double q = 0;   // target exponent (shoop, kplane_conj)
  std::size_t k = 1;
};

/// Throws ExponentOutOfRange when (p, q) lies outside the admissible region
/// of the tagged estimate in dimension n.
void check_exponent_region(const TheoremSpec& spec, std::size_t n);

struct RatioReport {
  std::string theorem;
  double lhs = 0;
  double rhs_scale = 0;
  double ratio = 0;
  nlohmann::json params;
  std::optional<std::uint64_t> seed;
};

/// exp, shoop, nikodym (lines), kplane_conj and mixedq, evaluated from f.
/// Throws ZeroFunction for f == 0.
RatioReport ratio_report(const PointFunction& f, const TheoremSpec& spec);

/// Anchored curve data for the variety estimates.
struct VarietyProblem {
  PointSet W;
  std::vector<Polynomial> ambient;
  std::vector<AnchoredCurve> family;
  /// Exponent n of the estimate: W has dimension n - 1.
  std::size_t n = 2;
  VarietySum mode = VarietySum::AllPoints;
};
/// kakeq uses the scale q^{(n-1)/n}; restricted_W uses max(|W|, q^{n-1})^{1/n}.
RatioReport variety_ratio_report(const PointFunction& f, const VarietyProblem& problem, Theorem tag);

struct EnsembleStats {
  std::string theorem;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> trial_seeds;
  std::vector<double> ratios;
  double max_ratio = 0;
  double mean_ratio = 0;
  std::size_t argmax = 0;
};

/// Seeded random non-negative, nonzero function mixing several shapes
/// (dense noise, random sets, spikes, subspace cosets).
PointFunction random_point_function(const AffineSpace& space, Rng& rng);
/// Indicators of a point, a line and the whole space.
std::vector<PointFunction> sharpness_indicators(const AffineSpace& space);
/// Trial t draws its function from Rng(derive_seed(seed, t)).
EnsembleStats ratio_ensemble(const AffineSpace& space, const TheoremSpec& spec, std::size_t trials,
                             std::uint64_t seed);

struct KakeyaSetReport {
  std::size_t J = 0;
  double lambda = 0;
  std::size_t set_size = 0;
  std::size_t n = 0;
  double c_hat = 0;
};
/// Checks |E cap gamma_j(F)| >= lambda for every curve (IntersectionTooSmall)
/// and reports (J lambda^n / (|E| q^{n-1}))^{1/n}.
KakeyaSetReport kakeya_set_report(const AffineSpace& space, const PointSet& E,
                                  const std::vector<AnchoredCurve>& curves, double lambda,
                                  std::size_t n);

/// Both sides of || sum_w g(w) 1_{gamma_w} ||_p >= (sum_w ||g(w) 1_{gamma_w}||_p^p)^{1/p}
/// with p = n/(n-1) and gamma_w the line through the origin in direction w.
struct DualCheck {
  double lhs = 0;
  double rhs = 0;
};
DualCheck dual_inequality(const AffineSpace& space, std::span<const double> g);

nlohmann::json to_json(const MaximalResult& r);
nlohmann::json to_json(const RatioReport& r);
nlohmann::json to_json(const EnsembleStats& s);
nlohmann::json to_json(const KakeyaSetReport& r);

}  // namespace kakeya
