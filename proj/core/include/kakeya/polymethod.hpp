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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "kakeya/error.hpp"
#include "kakeya/geometry.hpp"
#include "kakeya/linalg.hpp"
#include "kakeya/poly.hpp"
#include "kakeya/space.hpp"

namespace kakeya {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// C(n, k) exactly.
BigInt binomial(std::uint64_t n, std::uint64_t k);
/// dim P_D = C(n + D, D).
BigInt monomial_count(std::size_t n, unsigned D);

/// Non-negative integer weights on F^n; absent points carry 0.
class MultiplicityFunction {
 public:
  explicit MultiplicityFunction(AffineSpace space) : space_(std::move(space)) {}
  static MultiplicityFunction on_set(const AffineSpace& space, const PointSet& set, unsigned m);
  static MultiplicityFunction everywhere(const AffineSpace& space, unsigned m);

  const AffineSpace& space() const noexcept { return space_; }
  void set(PointIndex p, unsigned m);
  unsigned operator[](PointIndex p) const;
  const std::map<PointIndex, unsigned>& values() const noexcept { return m_; }
  /// min(m, q) pointwise.
  MultiplicityFunction clamped() const;
  /// Sum over points of C(m + n - 1, n), the number of vanishing conditions.
  BigInt condition_count() const;

 private:
  AffineSpace space_;
  std::map<PointIndex, unsigned> m_;
};

/// Rows are (point, e) with |e| < mult(point), points in increasing order and
/// e in GradedOrder; columns are the monomials of degree <= D in GradedOrder.
/// Entry: coefficient of (x - v)^e in x^a.
struct ConstraintSystem {
  Matrix matrix;
  std::vector<Monomial> columns;
  std::vector<std::pair<PointIndex, Monomial>> rows;
};
ConstraintSystem constraint_matrix(const MultiplicityFunction& mult, unsigned D, const Caps& caps = {});

/// Decodes a coefficient vector over the columns into a polynomial.
Polynomial polynomial_from_columns(const FieldPtr& field, std::size_t n, const std::vector<Monomial>& columns,
                                   const std::vector<Elem>& coeffs);

enum class CertificateKind { WitnessPoly, KernelTrivial };

struct VanishingCertificate {
  CertificateKind kind = CertificateKind::KernelTrivial;
  unsigned D = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
  /// Rank from the reverse-pivot elimination.
  std::size_t second_pass_rank = 0;
  /// Number of Hasse conditions re-evaluated on the witness.
  std::size_t hasse_checks = 0;
  bool hasse_checks_passed = false;
  std::optional<Polynomial> witness;
};

/// Solves the vanishing system; every witness is re-checked condition by
/// condition with hasse_coefficient and every full-rank claim by a second
/// elimination order (InternalError if either disagrees).
VanishingCertificate find_vanishing_poly(const MultiplicityFunction& mult, unsigned D, const Caps& caps = {});

/// find_vanishing_poly with multiplicity 1 on E and D = q - 1.
VanishingCertificate dvir_check(const AffineSpace& space, const PointSet& E, const Caps& caps = {});

struct LineCheck {
  bool kakeya = false;
  /// First direction (enumeration order) with no line inside E.
  std::optional<Direction> missing;
};
LineCheck kakeya_line_check(const AffineSpace& space, const PointSet& E);

/// Follows a witness P for a set claimed to be Kakeya: factor out x_n, take
/// the leading form of P, and return a direction where it is nonzero. No line
/// of E can have that direction.
struct Refutation {
  unsigned xn_power = 0;
  Polynomial leading_form;
  std::optional<Direction> uncovered;
};
Refutation refute_with_witness(const AffineSpace& space, const Polynomial& witness);

/// {(x, y) : x^2 - y is a square} plus the line x = 0, times F^{n-2}.
/// Throws EvenCharacteristic for p = 2.
PointSet build_small_kakeya(const FieldPtr& field, std::size_t n, std::uint64_t cap = Caps{}.enumeration);

/// Multiplicity m at every point of F^k with D = mq - 1. The inner lemma says
/// the result is always KernelTrivial. No clamping of m is applied.
VanishingCertificate multiplicity_sz_check(const FieldPtr& field, std::size_t k, unsigned m,
                                           const Caps& caps = {});

struct LinearFormsProduct {
  Polynomial poly;
  /// Projective classes of nonzero affine linear forms, constants included.
  std::uint64_t class_count = 0;
  /// Non-constant classes, i.e. factors of poly.
  std::uint64_t form_count = 0;
  unsigned degree = 0;
  /// Minimum over F^k of the vanishing order.
  unsigned min_vanishing_order = 0;
};
/// Product of one representative of every projective class of non-constant
/// affine linear forms on F^k, with its degree and vanishing order measured.
LinearFormsProduct linear_forms_product(const FieldPtr& field, std::size_t k, unsigned max_degree = 256);

struct PlaneCheck {
  bool vanishes_on_all = false;
  /// Index (Grassmannian order) of the first subspace where Q survives.
  std::optional<std::size_t> first_survivor;
  int degree = Polynomial::kZeroDegree;
  std::uint64_t degree_bound = 0;  // (q^{k+1}-1)/(q-1)
  /// False when Q != 0 vanishes everywhere yet has degree below the bound.
  bool bound_respected = true;
};
/// Whether homogeneous Q in n variables restricts to zero on every
/// k-dimensional linear subspace of F^n (symbolic substitution).
PlaneCheck leading_form_plane_check(const Polynomial& Q, std::size_t k);

struct KPlaneBound {
  BigRational binomial_form;
  BigRational closed_form;
  BigInt m;
  nlohmann::json chain;
};
/// With m = q^{k-1}: C(q^k+n-1, n) / C(q^{k-1}+n-1, n) and
/// q^n (1 - q^{1-k})^{C(n,2)}. Requires 2 <= k < n (BadParameters).
KPlaneBound kplane_bound(std::size_t n, std::size_t k, std::uint64_t q);

struct KPlaneCheck {
  bool kakeya = false;
  std::optional<std::size_t> missing;  // Grassmannian index
};
KPlaneCheck kplane_kakeya_check(const AffineSpace& space, const PointSet& E, std::size_t k);

/// A small Kakeya set of F^{n-k+1} on the slice where the last k-1
/// coordinates vanish, plus every point off that slice.
PointSet build_kplane_product(const FieldPtr& field, std::size_t n, std::size_t k);

/// Vanishing system with multiplicity q^{k-1} on E and D = q^k - 1; a k-plane
/// Kakeya set must give KernelTrivial.
VanishingCertificate kplane_certificate(const AffineSpace& space, const PointSet& E, std::size_t k,
                                        const Caps& caps = {});

std::string_view certificate_kind_name(CertificateKind k) noexcept;
nlohmann::json to_json(const VanishingCertificate& c);
nlohmann::json to_json(const KPlaneBound& b);
std::string to_string(const BigRational& r);

}  // namespace kakeya
