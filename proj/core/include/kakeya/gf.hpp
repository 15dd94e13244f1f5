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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kakeya {

/// Field element in canonical form: the coefficient vector (c_0, ..., c_{m-1})
/// of its representative modulo the field modulus, packed as sum c_i p^i.
/// Equality of elements is equality of this integer.
using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Exact arithmetic context for F_{p^m}.
///
/// The modulus is a monic irreducible polynomial over F_p, stored low degree
/// first. When the caller omits it, the first irreducible monic polynomial in
/// the order of its packed lower coefficients is chosen, so the default field
/// is reproducible without convention tables. For q <= 2^16 multiplication and
/// inversion go through log/antilog tables; larger fields reduce on the fly.
class Field {
 public:
  static FieldPtr make(std::uint32_t p, std::uint32_t m = 1,
                       std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);
  /// Convenience: field of order q, which must be a prime power.
  static FieldPtr of_order(std::uint64_t q);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t m() const noexcept { return m_; }
  std::uint64_t q() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  bool is_prime_field() const noexcept { return m_ == 1; }
  bool has_tables() const noexcept { return !exp_.empty(); }

  Elem add(Elem a, Elem b) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept;
  Elem neg(Elem a) const noexcept;
  Elem mul(Elem a, Elem b) const noexcept;
  /// Throws DivisionByZero for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const noexcept;

  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t v) const noexcept;
  std::vector<std::uint32_t> coeffs(Elem a) const;
  Elem from_coeffs(std::span<const std::uint32_t> c) const;
  bool contains(std::uint64_t a) const noexcept { return a < q_; }
  /// A generator of the multiplicative group.
  Elem primitive() const noexcept { return primitive_; }

  /// Prime fields print as integers, extensions as polynomials in x.
  std::string to_string(Elem a) const;

  bool operator==(const Field& other) const noexcept {
    return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
  }

 private:
  Field() = default;
  Elem mul_slow(Elem a, Elem b) const noexcept;
  Elem add_digits(Elem a, Elem b, bool subtract) const noexcept;

  std::uint32_t p_ = 0;
  std::uint32_t m_ = 0;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> modulus_;  // length m+1, monic
  Elem primitive_ = 1;
  std::vector<std::uint32_t> exp_;  // exp_[i] = g^i for i in [0, 2(q-1))
  std::vector<std::uint32_t> log_;  // log_[a] for a != 0
};

bool is_prime(std::uint64_t n) noexcept;

/// Irreducibility of a monic polynomial over F_p by trial division against
/// every monic polynomial of degree <= deg/2.
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& poly, std::uint32_t p);

/// C(n, k) mod p by Lucas' theorem.
std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) noexcept;

}  // namespace kakeya
