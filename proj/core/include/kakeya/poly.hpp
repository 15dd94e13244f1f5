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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kakeya/gf.hpp"

namespace kakeya {

/// Exponent vector of a monomial.
using Monomial = std::vector<std::uint32_t>;

unsigned total_degree(const Monomial& e) noexcept;

/// Graded order used for matrix columns and Hasse rows: lower total degree
/// first, then lexicographically larger exponent vectors first, so that for
/// two variables the sequence is 1, x, y, x^2, xy, y^2, ...
struct GradedOrder {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept;
};

/// All exponent vectors in n variables of total degree <= d, in GradedOrder.
std::vector<Monomial> monomials_up_to(std::size_t n, unsigned d);
/// All exponent vectors of total degree exactly d, in GradedOrder.
std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned d);

/// Dense univariate polynomial in t, coefficients low degree first.
class UniPoly {
 public:
  UniPoly() = default;
  UniPoly(FieldPtr field, std::vector<Elem> coeffs);
  static UniPoly constant(FieldPtr field, Elem c);
  /// c * t^k
  static UniPoly monomial(FieldPtr field, unsigned k, Elem c = 1);

  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  Elem coeff(std::size_t k) const noexcept { return k < c_.size() ? c_[k] : 0; }
  Elem eval(Elem t) const noexcept;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly scaled(Elem s) const;

  /// Largest r with (t - a)^r dividing this polynomial; the polynomial must be nonzero.
  unsigned root_multiplicity(Elem a) const;

  std::string to_string(const std::string& var = "t") const;

  bool operator==(const UniPoly& o) const noexcept { return c_ == o.c_; }

 private:
  void trim() noexcept;
  FieldPtr field_;
  std::vector<Elem> c_;
};

/// Sparse polynomial in n variables over F_q. Stored terms never carry a
/// zero coefficient.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Elem, GradedOrder>;
  static constexpr int kZeroDegree = -1;  // stands for -infinity

  Polynomial(FieldPtr field, std::size_t n_vars);
  static Polynomial constant(FieldPtr field, std::size_t n_vars, Elem c);
  /// x_{index}, zero-based.
  static Polynomial variable(FieldPtr field, std::size_t n_vars, std::size_t index);
  static Polynomial monomial(FieldPtr field, Monomial e, Elem c = 1);
  /// a_0 + a_1 x_1 + ... + a_n x_n, with coeffs = (a_0, a_1, ..., a_n).
  static Polynomial linear(FieldPtr field, std::span<const Elem> coeffs);
  /// Parses the text form produced by to_string(); coefficients are packed
  /// element codes and variables are written x1..xn.
  static Polynomial parse(FieldPtr field, std::size_t n_vars, const std::string& text);

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t n_vars() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int degree() const noexcept;
  Elem coefficient(const Monomial& e) const;

  /// Adds c * x^e in place.
  void add_term(const Monomial& e, Elem c);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(Elem s) const;
  Polynomial pow(unsigned k) const;

  Elem eval(std::span<const Elem> point) const;

  bool is_homogeneous() const noexcept;
  Polynomial homogeneous_part(unsigned d) const;
  /// Top-degree homogeneous part; zero for the zero polynomial.
  Polynomial leading_form() const;

  /// "c*x1^a1*x2^a2 + ..." in descending graded order; "0" for zero.
  std::string to_string() const;

  bool operator==(const Polynomial& o) const noexcept { return n_ == o.n_ && terms_ == o.terms_; }

 private:
  void check_same(const Polynomial& o) const;
  FieldPtr field_;
  std::size_t n_;
  Terms terms_;
};

/// Coefficient of (x - v)^e in the expansion of P around v, i.e. the Hasse
/// derivative of order e evaluated at v. P vanishes to order >= r at v iff
/// this is zero for every |e| < r.
Elem hasse_coefficient(const Polynomial& poly, std::span<const Elem> v, const Monomial& e);

/// Largest r such that every Hasse coefficient of order < r vanishes at v.
/// P must be nonzero (ZeroPolynomial otherwise).
unsigned vanishing_order(const Polynomial& poly, std::span<const Elem> v);

/// P = x_var^j * Q with Q not divisible by x_var.
struct FactorOut {
  unsigned power;
  Polynomial cofactor;
};
FactorOut factor_out(const Polynomial& poly, std::size_t var);

/// Exact number of zeros in F_q^n; checks the bound deg * q^(n-1).
std::uint64_t zero_count(const Polynomial& poly, std::uint64_t cap = 100'000'000);

/// P(subs_1, ..., subs_n) for substitutions in m variables.
Polynomial compose(const Polynomial& poly, const std::vector<Polynomial>& subs);
/// P(gamma_1(t), ..., gamma_n(t)).
UniPoly compose(const Polynomial& poly, const std::vector<UniPoly>& subs);

}  // namespace kakeya
