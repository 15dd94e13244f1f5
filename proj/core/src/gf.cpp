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

#include "kakeya/gf.hpp"

#include <algorithm>

#include "kakeya/error.hpp"

namespace kakeya {
namespace {

using PolyP = std::vector<std::uint32_t>;  // dense over F_p, low degree first

void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b over F_p.
PolyP poly_mod(PolyP a, const PolyP& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = (lead * b[i]) % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
  const std::size_t deg = poly.size() - 1;
  if (deg <= 1) return deg == 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    // Monic divisors of degree d: x^d + lower coefficients packed base p.
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      PolyP div(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        div[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      div[d] = 1;
      if (poly_mod(poly, div, p).empty()) return false;
    }
  }
  return true;
}

std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) noexcept {
  if (k > n) return 0;
  std::uint64_t result = 1;
  while (n > 0 || k > 0) {
    const std::uint64_t ni = n % p;
    const std::uint64_t ki = k % p;
    if (ki > ni) return 0;
    // C(ni, ki) mod p with ni < p, via multiplicative formula and inverse.
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t i = 0; i < ki; ++i) {
      num = num * ((ni - i) % p) % p;
      den = den * ((i + 1) % p) % p;
    }
    // den^(p-2)
    std::uint64_t inv = 1, b = den, e = p - 2;
    while (e > 0) {
      if (e & 1) inv = inv * b % p;
      b = b * b % p;
      e >>= 1;
    }
    result = result * (num * inv % p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(result);
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t m,
                     std::optional<std::vector<std::uint32_t>> modulus) {
  require(is_prime(p), ErrorCode::NonPrime, std::to_string(p) + " is not prime");
  require(m >= 1, ErrorCode::InvalidArgument, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    q *= p;
    require(q <= (1ULL << 32) - 1, ErrorCode::InvalidArgument,
            "fields with q >= 2^32 are not supported");
  }

  PolyP mod;
  if (modulus) {
    mod = *modulus;
    require(mod.size() == m + 1, ErrorCode::ReducibleModulus,
            "modulus must have degree " + std::to_string(m));
    for (auto c : mod) {
      require(c < p, ErrorCode::InvalidArgument, "modulus coefficient out of range");
    }
    require(mod.back() == 1, ErrorCode::ReducibleModulus, "modulus must be monic");
    require(is_irreducible_mod_p(mod, p), ErrorCode::ReducibleModulus,
            "modulus is reducible over F_" + std::to_string(p));
  } else if (m == 1) {
    mod = {0, 1};  // x
  } else {
    const std::uint64_t count = q;  // p^m choices for the lower coefficients
    bool found = false;
    for (std::uint64_t code = 0; code < count && !found; ++code) {
      PolyP cand(m + 1, 0);
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < m; ++i) {
        cand[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      cand[m] = 1;
      if (is_irreducible_mod_p(cand, p)) {
        mod = std::move(cand);
        found = true;
      }
    }
    require(found, ErrorCode::InternalError, "no irreducible polynomial found");
  }

  auto field = std::shared_ptr<Field>(new Field());
  field->p_ = p;
  field->m_ = m;
  field->q_ = q;
  field->modulus_ = std::move(mod);

  // Primitive element by order test against the prime factors of q-1.
  if (q == 2) {
    field->primitive_ = 1;
  } else {
    const auto factors = prime_factors(q - 1);
    for (std::uint64_t g = 2; g < q + 1; ++g) {
      const Elem cand = static_cast<Elem>(g % q);
      if (cand == 0) continue;
      bool ok = true;
      for (auto r : factors) {
        if (field->pow(cand, (q - 1) / r) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        field->primitive_ = cand;
        break;
      }
    }
  }

  if (q <= (1ULL << 16)) {
    const std::uint64_t order = q - 1;
    field->exp_.assign(2 * order + 1, 0);
    field->log_.assign(q, 0);
    Elem x = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
      field->exp_[i] = x;
      field->log_[x] = static_cast<std::uint32_t>(i);
      x = field->mul_slow(x, field->primitive_);
    }
    for (std::uint64_t i = order; i < 2 * order + 1; ++i) field->exp_[i] = field->exp_[i - order];
  }
  return field;
}

FieldPtr Field::of_order(std::uint64_t q) {
  require(q >= 2, ErrorCode::NonPrime, "field order must be a prime power >= 2");
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  std::uint32_t m = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++m;
  }
  require(r == 1, ErrorCode::NonPrime, std::to_string(q) + " is not a prime power");
  return make(static_cast<std::uint32_t>(p), m);
}

Elem Field::add_digits(Elem a, Elem b, bool subtract) const noexcept {
  if (p_ == 2) return a ^ b;
  Elem result = 0;
  Elem place = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    const std::uint32_t da = a % p_;
    const std::uint32_t db = b % p_;
    a /= p_;
    b /= p_;
    const std::uint32_t d = subtract ? (da + p_ - db) % p_ : (da + db) % p_;
    result += d * place;
    place *= p_;
  }
  return result;
}

Elem Field::add(Elem a, Elem b) const noexcept {
  if (m_ == 1) {
    const std::uint64_t s = static_cast<std::uint64_t>(a) + b;
    return static_cast<Elem>(s >= p_ ? s - p_ : s);
  }
  return add_digits(a, b, false);
}

Elem Field::sub(Elem a, Elem b) const noexcept {
  if (m_ == 1) return a >= b ? a - b : static_cast<Elem>(static_cast<std::uint64_t>(a) + p_ - b);
  return add_digits(a, b, true);
}

Elem Field::neg(Elem a) const noexcept { return sub(0, a); }

Elem Field::mul_slow(Elem a, Elem b) const noexcept {
  if (m_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  PolyP pa(m_), pb(m_);
  for (std::uint32_t i = 0; i < m_; ++i) {
    pa[i] = a % p_;
    a /= p_;
    pb[i] = b % p_;
    b /= p_;
  }
  PolyP prod(2 * m_ - 1, 0);
  for (std::uint32_t i = 0; i < m_; ++i) {
    if (pa[i] == 0) continue;
    for (std::uint32_t j = 0; j < m_; ++j) {
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + static_cast<std::uint64_t>(pa[i]) * pb[j]) % p_);
    }
  }
  const PolyP r = poly_mod(prod, modulus_, p_);
  Elem out = 0, place = 1;
  for (std::size_t i = 0; i < r.size(); ++i) {
    out += r[i] * place;
    place *= p_;
  }
  return out;
}

Elem Field::mul(Elem a, Elem b) const noexcept {
  if (a == 0 || b == 0) return 0;
  if (!exp_.empty()) return exp_[static_cast<std::size_t>(log_[a]) + log_[b]];
  return mul_slow(a, b);
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (!exp_.empty()) return exp_[static_cast<std::size_t>((log_[a] * (e % (q_ - 1))) % (q_ - 1))];
  Elem result = 1;
  Elem base = a;
  while (e > 0) {
    if (e & 1) result = mul_slow(result, base);
    base = mul_slow(base, base);
    e >>= 1;
  }
  return result;
}

Elem Field::inv(Elem a) const {
  require(a != 0, ErrorCode::DivisionByZero, "inverse of zero");
  if (!exp_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, q_ - 2);
}

Elem Field::div(Elem a, Elem b) const {
  require(b != 0, ErrorCode::DivisionByZero, "division by zero");
  return mul(a, inv(b));
}

Elem Field::from_int(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const {
  std::vector<std::uint32_t> c(m_);
  for (std::uint32_t i = 0; i < m_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Elem Field::from_coeffs(std::span<const std::uint32_t> c) const {
  require(c.size() == m_, ErrorCode::DimensionMismatch, "coefficient vector length");
  Elem out = 0, place = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    require(c[i] < p_, ErrorCode::InvalidArgument, "coefficient out of range");
    out += c[i] * place;
    place *= p_;
  }
  return out;
}

std::string Field::to_string(Elem a) const {
  if (m_ == 1) return std::to_string(a);
  const auto c = coeffs(a);
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || c[i] != 1) out += std::to_string(c[i]);
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : "(" + out + ")";
}

}  // namespace kakeya
