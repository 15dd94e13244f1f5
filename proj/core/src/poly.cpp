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

#include "kakeya/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "kakeya/error.hpp"

namespace kakeya {

unsigned total_degree(const Monomial& e) noexcept {
  return std::accumulate(e.begin(), e.end(), 0u);
}

bool GradedOrder::operator()(const Monomial& a, const Monomial& b) const noexcept {
  const unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

void monomials_rec(std::size_t n, unsigned remaining, std::size_t pos, Monomial& cur,
                   std::vector<Monomial>& out) {
  if (pos + 1 == n) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  // Larger leading exponents first gives GradedOrder within a degree.
  for (unsigned a = remaining + 1; a-- > 0;) {
    cur[pos] = a;
    monomials_rec(n, remaining - a, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned d) {
  std::vector<Monomial> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial cur(n, 0);
  monomials_rec(n, d, 0, cur, out);
  return out;
}

std::vector<Monomial> monomials_up_to(std::size_t n, unsigned d) {
  std::vector<Monomial> out;
  for (unsigned k = 0; k <= d; ++k) {
    auto part = monomials_of_degree(n, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(FieldPtr field, std::vector<Elem> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
  trim();
}

UniPoly UniPoly::constant(FieldPtr field, Elem c) { return UniPoly(std::move(field), {c}); }

UniPoly UniPoly::monomial(FieldPtr field, unsigned k, Elem c) {
  std::vector<Elem> v(k + 1, 0);
  v[k] = c;
  return UniPoly(std::move(field), std::move(v));
}

void UniPoly::trim() noexcept {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Elem UniPoly::eval(Elem t) const noexcept {
  Elem acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, t), c_[i]);
  return acc;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  const auto& f = field_ ? field_ : o.field_;
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f->add(coeff(i), o.coeff(i));
  return UniPoly(f, std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  const auto& f = field_ ? field_ : o.field_;
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f->sub(coeff(i), o.coeff(i));
  return UniPoly(f, std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  const auto& f = field_ ? field_ : o.field_;
  if (is_zero() || o.is_zero()) return UniPoly(f, {});
  std::vector<Elem> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      r[i + j] = f->add(r[i + j], f->mul(c_[i], o.c_[j]));
    }
  }
  return UniPoly(f, std::move(r));
}

UniPoly UniPoly::scaled(Elem s) const {
  std::vector<Elem> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = field_->mul(c_[i], s);
  return UniPoly(field_, std::move(r));
}

unsigned UniPoly::root_multiplicity(Elem a) const {
  require(!is_zero(), ErrorCode::ZeroPolynomial, "root multiplicity of the zero polynomial");
  std::vector<Elem> cur = c_;
  unsigned r = 0;
  for (;;) {
    // Synthetic division by (t - a).
    const std::size_t n = cur.size();
    std::vector<Elem> quot(n - 1 == 0 ? 0 : n - 1);
    Elem carry = 0;
    for (std::size_t i = n; i-- > 0;) {
      const Elem v = field_->add(cur[i], field_->mul(carry, a));
      if (i > 0) quot[i - 1] = v;
      carry = v;
    }
    if (carry != 0 || n == 1) return r;  // nonzero remainder, or nonzero constant
    ++r;
    cur = std::move(quot);
  }
}

std::string UniPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!out.empty()) out += " + ";
    std::string term;
    if (i == 0 || c_[i] != 1) term = std::to_string(c_[i]);
    if (i >= 1) {
      if (!term.empty()) term += "*";
      term += var;
      if (i >= 2) term += "^" + std::to_string(i);
    }
    out += term;
  }
  return out;
}

// ------------------------------------------------------------- Polynomial

Polynomial::Polynomial(FieldPtr field, std::size_t n_vars) : field_(std::move(field)), n_(n_vars) {}

Polynomial Polynomial::constant(FieldPtr field, std::size_t n_vars, Elem c) {
  Polynomial p(std::move(field), n_vars);
  p.add_term(Monomial(n_vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(FieldPtr field, std::size_t n_vars, std::size_t index) {
  require(index < n_vars, ErrorCode::DimensionMismatch, "variable index out of range");
  Monomial e(n_vars, 0);
  e[index] = 1;
  Polynomial p(std::move(field), n_vars);
  p.add_term(e, 1);
  return p;
}

Polynomial Polynomial::monomial(FieldPtr field, Monomial e, Elem c) {
  Polynomial p(std::move(field), e.size());
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::linear(FieldPtr field, std::span<const Elem> coeffs) {
  require(!coeffs.empty(), ErrorCode::InvalidArgument, "linear form needs a constant term");
  const std::size_t n = coeffs.size() - 1;
  Polynomial p(field, n);
  p.add_term(Monomial(n, 0), coeffs[0]);
  for (std::size_t i = 0; i < n; ++i) {
    Monomial e(n, 0);
    e[i] = 1;
    p.add_term(e, coeffs[i + 1]);
  }
  return p;
}

Polynomial Polynomial::parse(FieldPtr field, std::size_t n_vars, const std::string& text) {
  Polynomial out(field, n_vars);
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s == "0" || s.empty()) return out;
  std::size_t pos = 0;
  auto read_uint = [&](std::size_t& at) {
    require(at < s.size() && std::isdigit(static_cast<unsigned char>(s[at])), ErrorCode::ParseError,
            "expected a number in '" + text + "'");
    std::uint64_t v = 0;
    while (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]))) {
      v = v * 10 + static_cast<std::uint64_t>(s[at] - '0');
      require(v < (1ULL << 32), ErrorCode::ParseError, "number too large");
      ++at;
    }
    return static_cast<std::uint32_t>(v);
  };
  while (pos < s.size()) {
    bool negate = false;
    if (s[pos] == '+') {
      ++pos;
    } else if (s[pos] == '-') {
      negate = true;
      ++pos;
    }
    Elem coeff = 1;
    Monomial e(n_vars, 0);
    bool first = true;
    for (;;) {
      if (!first) {
        if (pos < s.size() && s[pos] == '*') {
          ++pos;
        } else {
          break;
        }
      }
      first = false;
      require(pos < s.size(), ErrorCode::ParseError, "unexpected end of '" + text + "'");
      if (s[pos] == 'x') {
        ++pos;
        const std::uint32_t idx = read_uint(pos);
        require(idx >= 1 && idx <= n_vars, ErrorCode::ParseError,
                "variable x" + std::to_string(idx) + " out of range");
        std::uint32_t power = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          power = read_uint(pos);
        }
        e[idx - 1] += power;
      } else {
        const std::uint32_t c = read_uint(pos);
        require(field->contains(c), ErrorCode::ParseError, "coefficient not a field element");
        coeff = field->mul(coeff, c);
      }
    }
    out.add_term(e, negate ? field->neg(coeff) : coeff);
    require(pos == s.size() || s[pos] == '+' || s[pos] == '-', ErrorCode::ParseError,
            "unexpected character in '" + text + "'");
  }
  return out;
}

int Polynomial::degree() const noexcept {
  if (terms_.empty()) return kZeroDegree;
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

Elem Polynomial::coefficient(const Monomial& e) const {
  require(e.size() == n_, ErrorCode::DimensionMismatch, "exponent vector length");
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

void Polynomial::add_term(const Monomial& e, Elem c) {
  require(e.size() == n_, ErrorCode::DimensionMismatch, "exponent vector length");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = field_->add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::check_same(const Polynomial& o) const {
  require(n_ == o.n_, ErrorCode::DimensionMismatch, "variable count mismatch");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_same(o);
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  check_same(o);
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, field_->neg(c));
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_same(o);
  Polynomial r(field_, n_);
  Monomial e(n_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < n_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, field_->mul(ca, cb));
    }
  }
  return r;
}

Polynomial Polynomial::scaled(Elem s) const {
  Polynomial r(field_, n_);
  if (s == 0) return r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, field_->mul(c, s));
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(field_, n_, 1);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Elem Polynomial::eval(std::span<const Elem> point) const {
  require(point.size() == n_, ErrorCode::DimensionMismatch,
          "point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
              std::to_string(n_) + " variables");
  Elem acc = 0;
  for (const auto& [e, c] : terms_) {
    Elem t = c;
    for (std::size_t i = 0; i < n_ && t != 0; ++i) {
      if (e[i] != 0) t = field_->mul(t, field_->pow(point[i], e[i]));
    }
    acc = field_->add(acc, t);
  }
  return acc;
}

bool Polynomial::is_homogeneous() const noexcept {
  if (terms_.empty()) return true;
  const unsigned d = total_degree(terms_.begin()->first);
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return total_degree(t.first) == d; });
}

Polynomial Polynomial::homogeneous_part(unsigned d) const {
  Polynomial r(field_, n_);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) == d) r.terms_.emplace(e, c);
  }
  return r;
}

Polynomial Polynomial::leading_form() const {
  if (terms_.empty()) return *this;
  return homogeneous_part(static_cast<unsigned>(degree()));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, Elem>> ordered(terms_.begin(), terms_.end());
  // Descending degree; within a degree the lexicographically larger vector first.
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    const unsigned da = total_degree(a.first), db = total_degree(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::string out;
  for (const auto& [e, c] : ordered) {
    if (!out.empty()) out += " + ";
    std::string term;
    if (c != 1 || total_degree(e) == 0) term = std::to_string(c);
    for (std::size_t i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      if (!term.empty()) term += "*";
      term += "x" + std::to_string(i + 1);
      if (e[i] > 1) term += "^" + std::to_string(e[i]);
    }
    out += term;
  }
  return out;
}

// ------------------------------------------------------------- algorithms

Elem hasse_coefficient(const Polynomial& poly, std::span<const Elem> v, const Monomial& e) {
  const std::size_t n = poly.n_vars();
  require(v.size() == n, ErrorCode::DimensionMismatch, "point dimension");
  require(e.size() == n, ErrorCode::DimensionMismatch, "exponent dimension");
  const Field& f = *poly.field();
  Elem acc = 0;
  for (const auto& [a, c] : poly.terms()) {
    Elem term = c;
    for (std::size_t i = 0; i < n && term != 0; ++i) {
      if (a[i] < e[i]) {
        term = 0;
        break;
      }
      const std::uint32_t b = binomial_mod_p(a[i], e[i], f.p());
      term = f.mul(term, f.from_int(b));
      if (a[i] > e[i]) term = f.mul(term, f.pow(v[i], a[i] - e[i]));
    }
    acc = f.add(acc, term);
  }
  return acc;
}

unsigned vanishing_order(const Polynomial& poly, std::span<const Elem> v) {
  require(!poly.is_zero(), ErrorCode::ZeroPolynomial, "vanishing order of the zero polynomial");
  const auto deg = static_cast<unsigned>(poly.degree());
  for (unsigned d = 0; d <= deg; ++d) {
    for (const auto& e : monomials_of_degree(poly.n_vars(), d)) {
      if (hasse_coefficient(poly, v, e) != 0) return d;
    }
  }
  fail(ErrorCode::InternalError, "nonzero polynomial with all Hasse coefficients zero");
}

FactorOut factor_out(const Polynomial& poly, std::size_t var) {
  require(!poly.is_zero(), ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
  require(var < poly.n_vars(), ErrorCode::DimensionMismatch, "variable index out of range");
  std::uint32_t j = UINT32_MAX;
  for (const auto& [e, c] : poly.terms()) j = std::min(j, e[var]);
  Polynomial q(poly.field(), poly.n_vars());
  for (const auto& [e, c] : poly.terms()) {
    Monomial r = e;
    r[var] -= j;
    q.add_term(r, c);
  }
  return {j, std::move(q)};
}

std::uint64_t zero_count(const Polynomial& poly, std::uint64_t cap) {
  require(!poly.is_zero(), ErrorCode::ZeroPolynomial, "zero polynomial vanishes everywhere");
  const Field& f = *poly.field();
  const std::size_t n = poly.n_vars();
  const std::uint64_t total = checked_pow(f.q(), static_cast<unsigned>(n), cap, "q^n");
  std::vector<Elem> pt(n, 0);
  std::uint64_t zeros = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t r = idx;
    for (std::size_t i = n; i-- > 0;) {
      pt[i] = static_cast<Elem>(r % f.q());
      r /= f.q();
    }
    if (poly.eval(pt) == 0) ++zeros;
  }
  if (n >= 1) {
    const std::uint64_t bound = static_cast<std::uint64_t>(poly.degree()) * (total / f.q());
    require(zeros <= bound, ErrorCode::InternalError,
            "zero count " + std::to_string(zeros) + " exceeds deg*q^(n-1) = " + std::to_string(bound));
  }
  return zeros;
}

namespace {

template <class P>
P compose_impl(const Polynomial& poly, const std::vector<P>& subs, const P& one) {
  const std::size_t n = poly.n_vars();
  require(subs.size() == n, ErrorCode::DimensionMismatch, "substitution count");
  // powers[i][k] = subs[i]^k, filled lazily.
  std::vector<std::vector<P>> powers(n);
  for (std::size_t i = 0; i < n; ++i) powers[i].push_back(one);
  auto power = [&](std::size_t i, unsigned k) -> const P& {
    while (powers[i].size() <= k) powers[i].push_back(powers[i].back() * subs[i]);
    return powers[i][k];
  };
  P acc = one.scaled(0);
  for (const auto& [e, c] : poly.terms()) {
    P term = one.scaled(c);
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] != 0) term = term * power(i, e[i]);
    }
    acc = acc + term;
  }
  return acc;
}

}  // namespace

Polynomial compose(const Polynomial& poly, const std::vector<Polynomial>& subs) {
  require(!subs.empty() || poly.n_vars() == 0, ErrorCode::DimensionMismatch, "substitution count");
  const std::size_t m = subs.empty() ? 0 : subs.front().n_vars();
  for (const auto& s : subs) require(s.n_vars() == m, ErrorCode::DimensionMismatch, "mixed arity");
  return compose_impl(poly, subs, Polynomial::constant(poly.field(), m, 1));
}

UniPoly compose(const Polynomial& poly, const std::vector<UniPoly>& subs) {
  return compose_impl(poly, subs, UniPoly::constant(poly.field(), 1));
}

}  // namespace kakeya
