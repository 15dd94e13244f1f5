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

#include "kakeya/polymethod.hpp"

#include <algorithm>
#include <string>

#include "kakeya/parallel.hpp"

namespace kakeya {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

BigInt monomial_count(std::size_t n, unsigned D) { return binomial(n + D, D); }

// ----------------------------------------------------- multiplicities

MultiplicityFunction MultiplicityFunction::on_set(const AffineSpace& space, const PointSet& set, unsigned m) {
  MultiplicityFunction f(space);
  for (auto p : set) f.set(p, m);
  return f;
}

MultiplicityFunction MultiplicityFunction::everywhere(const AffineSpace& space, unsigned m) {
  MultiplicityFunction f(space);
  for (PointIndex p = 0; p < space.size(); ++p) f.set(p, m);
  return f;
}

void MultiplicityFunction::set(PointIndex p, unsigned m) {
  require(p < space_.size(), ErrorCode::InvalidArgument, "point outside the space");
  if (m == 0) {
    m_.erase(p);
  } else {
    m_[p] = m;
  }
}

unsigned MultiplicityFunction::operator[](PointIndex p) const {
  auto it = m_.find(p);
  return it == m_.end() ? 0 : it->second;
}

MultiplicityFunction MultiplicityFunction::clamped() const {
  MultiplicityFunction out(space_);
  const auto q = static_cast<unsigned>(std::min<std::uint64_t>(space_.q(), UINT32_MAX));
  for (const auto& [p, m] : m_) out.set(p, std::min(m, q));
  return out;
}

BigInt MultiplicityFunction::condition_count() const {
  BigInt total = 0;
  const std::size_t n = space_.dim();
  for (const auto& [p, m] : m_) total += binomial(m + n - 1, n);
  return total;
}

// ------------------------------------------------------ constraint system

ConstraintSystem constraint_matrix(const MultiplicityFunction& mult, unsigned D, const Caps& caps) {
  const AffineSpace& space = mult.space();
  const Field& f = space.f();
  const std::size_t n = space.dim();
  const BigInt cols_big = monomial_count(n, D);
  const BigInt rows_big = mult.condition_count();
  require(cols_big <= caps.matrix_entries && rows_big * cols_big <= caps.matrix_entries,
          ErrorCode::MatrixTooLarge,
          "constraint matrix " + rows_big.str() + " x " + cols_big.str() + " exceeds " +
              std::to_string(caps.matrix_entries) + " entries");

  ConstraintSystem sys{Matrix(space.field(), static_cast<std::size_t>(rows_big),
                              static_cast<std::size_t>(cols_big)),
                       monomials_up_to(n, D), {}};
  std::vector<std::pair<PointIndex, unsigned>> pts(mult.values().begin(), mult.values().end());
  std::vector<std::size_t> offset(pts.size() + 1, 0);
  std::map<unsigned, std::vector<Monomial>> orders;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto& e = orders[pts[i].second];
    if (e.empty()) e = monomials_up_to(n, pts[i].second - 1);
    offset[i + 1] = offset[i] + e.size();
  }
  sys.rows.resize(offset.back());
  parallel_for(pts.size(), [&](std::size_t i) {
    const Point v = space.decode(pts[i].first);
    const auto& exps = orders.at(pts[i].second);
    for (std::size_t r = 0; r < exps.size(); ++r) {
      const std::size_t row = offset[i] + r;
      const Monomial& e = exps[r];
      sys.rows[row] = {pts[i].first, e};
      for (std::size_t c = 0; c < sys.columns.size(); ++c) {
        const Monomial& a = sys.columns[c];
        Elem entry = 1;
        for (std::size_t j = 0; j < n && entry != 0; ++j) {
          if (a[j] < e[j]) {
            entry = 0;
            break;
          }
          const Elem b = f.from_int(binomial_mod_p(a[j], e[j], f.p()));
          const Elem pw = (a[j] == e[j]) ? 1 : f.pow(v[j], a[j] - e[j]);
          entry = f.mul(entry, f.mul(b, pw));
        }
        sys.matrix.at(row, c) = entry;
      }
    }
  });
  return sys;
}

Polynomial polynomial_from_columns(const FieldPtr& field, std::size_t n, const std::vector<Monomial>& columns,
                                   const std::vector<Elem>& coeffs) {
  require(columns.size() == coeffs.size(), ErrorCode::DimensionMismatch, "coefficient count");
  Polynomial p(field, n);
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (coeffs[i] != 0) p.add_term(columns[i], coeffs[i]);
  }
  return p;
}

VanishingCertificate find_vanishing_poly(const MultiplicityFunction& mult, unsigned D, const Caps& caps) {
  const AffineSpace& space = mult.space();
  ConstraintSystem sys = constraint_matrix(mult, D, caps);
  VanishingCertificate cert;
  cert.D = D;
  cert.rows = sys.matrix.rows();
  cert.cols = sys.matrix.cols();
  cert.second_pass_rank = rank_reverse_pivot(sys.matrix);
  const Echelon ech = row_reduce(std::move(sys.matrix));
  cert.rank = ech.rank;
  require(cert.rank == cert.second_pass_rank, ErrorCode::InternalError,
          "elimination passes disagree: rank " + std::to_string(cert.rank) + " vs " +
              std::to_string(cert.second_pass_rank));
  if (cert.rank == cert.cols) {
    cert.kind = CertificateKind::KernelTrivial;
    cert.hasse_checks_passed = true;
    return cert;
  }
  const auto kernel = kernel_basis(ech);
  require(!kernel.empty(), ErrorCode::InternalError, "rank deficient matrix with empty kernel");
  Polynomial w = polynomial_from_columns(space.field(), space.dim(), sys.columns, kernel.front());
  require(!w.is_zero() && w.degree() <= static_cast<int>(D), ErrorCode::InternalError,
          "kernel vector decodes to an invalid witness");
  bool ok = true;
  for (const auto& [p, m] : mult.values()) {
    const Point v = space.decode(p);
    for (const auto& e : monomials_up_to(space.dim(), m - 1)) {
      ++cert.hasse_checks;
      if (hasse_coefficient(w, v, e) != 0) ok = false;
    }
  }
  require(ok, ErrorCode::InternalError, "witness fails an independent Hasse check");
  cert.kind = CertificateKind::WitnessPoly;
  cert.hasse_checks_passed = true;
  cert.witness = std::move(w);
  return cert;
}

VanishingCertificate dvir_check(const AffineSpace& space, const PointSet& E, const Caps& caps) {
  return find_vanishing_poly(MultiplicityFunction::on_set(space, E, 1),
                             static_cast<unsigned>(space.q() - 1), caps);
}

// ------------------------------------------------------------ Kakeya sets

LineCheck kakeya_line_check(const AffineSpace& space, const PointSet& E) {
  const auto mask = membership(E, space.size());
  const auto coords = coordinate_table(space);
  const auto dirs = enum_directions(space.field(), space.dim());
  std::vector<char> covered(dirs.size(), 0);
  parallel_for(dirs.size(), [&](std::size_t i) {
    const auto hits = CosetIndexer(space, direction_subspace(dirs[i])).hits(mask, coords);
    covered[i] = std::any_of(hits.begin(), hits.end(), [&](std::uint64_t h) { return h == space.q(); });
  });
  LineCheck r;
  r.kakeya = true;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (!covered[i]) {
      r.kakeya = false;
      r.missing = dirs[i];
      break;
    }
  }
  return r;
}

Refutation refute_with_witness(const AffineSpace& space, const Polynomial& witness) {
  require(witness.n_vars() == space.dim(), ErrorCode::DimensionMismatch, "witness arity");
  const FactorOut fo = factor_out(witness, space.dim() - 1);
  Refutation r{fo.power, witness.leading_form(), std::nullopt};
  for (const auto& d : enum_directions(space.field(), space.dim())) {
    if (r.leading_form.eval(d.rep) != 0) {
      r.uncovered = d;
      break;
    }
  }
  return r;
}

PointSet build_small_kakeya(const FieldPtr& field, std::size_t n, std::uint64_t cap) {
  const Field& f = *field;
  require(f.p() != 2, ErrorCode::EvenCharacteristic, "the tangent-line construction needs odd characteristic");
  require(n >= 2, ErrorCode::InvalidArgument, "dimension must be >= 2");
  const AffineSpace space(field, n, cap);
  const std::uint64_t q = f.q();
  std::vector<char> square(q, 0);
  for (std::uint64_t a = 0; a < q; ++a) square[f.mul(static_cast<Elem>(a), static_cast<Elem>(a))] = 1;
  const std::uint64_t tail = space.size() / (q * q);
  std::vector<PointIndex> pts;
  for (std::uint64_t x = 0; x < q; ++x) {
    for (std::uint64_t y = 0; y < q; ++y) {
      const Elem X = static_cast<Elem>(x), Y = static_cast<Elem>(y);
      if (x != 0 && !square[f.sub(f.mul(X, X), Y)]) continue;
      const PointIndex head = x * q + y;
      for (std::uint64_t t = 0; t < tail; ++t) pts.push_back(head * tail + t);
    }
  }
  return make_point_set(std::move(pts));
}

VanishingCertificate multiplicity_sz_check(const FieldPtr& field, std::size_t k, unsigned m, const Caps& caps) {
  require(k >= 1 && m >= 1, ErrorCode::InvalidArgument, "need k >= 1 and m >= 1");
  const AffineSpace space(field, k, caps.enumeration);
  const std::uint64_t D = static_cast<std::uint64_t>(m) * field->q() - 1;
  require(D < UINT32_MAX, ErrorCode::MatrixTooLarge, "degree bound too large");
  return find_vanishing_poly(MultiplicityFunction::everywhere(space, m), static_cast<unsigned>(D), caps);
}

LinearFormsProduct linear_forms_product(const FieldPtr& field, std::size_t k, unsigned max_degree) {
  require(k >= 1, ErrorCode::InvalidArgument, "k must be >= 1");
  const auto classes = enum_directions(field, k + 1);
  LinearFormsProduct r{Polynomial::constant(field, k, 1), classes.size(), classes.size() - 1, 0, 0};
  require(r.form_count <= max_degree, ErrorCode::DegreeTooLarge,
          "product of " + std::to_string(r.form_count) + " linear forms exceeds degree cap " +
              std::to_string(max_degree));
  for (const auto& c : classes) {
    if (std::all_of(c.rep.begin() + 1, c.rep.end(), [](Elem a) { return a == 0; })) continue;
    r.poly = r.poly * Polynomial::linear(field, c.rep);
  }
  r.degree = static_cast<unsigned>(r.poly.degree());
  require(r.degree == r.form_count, ErrorCode::InternalError, "product degree differs from factor count");
  const AffineSpace space(field, k);
  r.min_vanishing_order = UINT32_MAX;
  for (PointIndex p = 0; p < space.size(); ++p) {
    r.min_vanishing_order = std::min(r.min_vanishing_order, vanishing_order(r.poly, space.decode(p)));
  }
  return r;
}

PlaneCheck leading_form_plane_check(const Polynomial& Q, std::size_t k) {
  require(Q.is_zero() || Q.is_homogeneous(), ErrorCode::NotHomogeneous, "Q must be homogeneous");
  const std::size_t n = Q.n_vars();
  require(k >= 1 && k <= n, ErrorCode::InvalidArgument, "need 1 <= k <= n");
  const FieldPtr& field = Q.field();
  const AffineSpace space(field, n);
  const Grassmannian gr(space, k);
  PlaneCheck r;
  r.degree = Q.degree();
  std::uint64_t bound = 0, pw = 1;
  for (std::size_t i = 0; i <= k; ++i) {
    bound += pw;
    pw *= field->q();
  }
  r.degree_bound = bound;
  r.vanishes_on_all = true;
  for (std::size_t i = 0; i < gr.size(); ++i) {
    std::vector<Polynomial> subs;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Elem> coeffs{0};
      for (const auto& b : gr[i].basis) coeffs.push_back(b[j]);
      subs.push_back(Polynomial::linear(field, coeffs));
    }
    if (!compose(Q, subs).is_zero()) {
      r.vanishes_on_all = false;
      r.first_survivor = i;
      break;
    }
  }
  if (r.vanishes_on_all && !Q.is_zero() && static_cast<std::uint64_t>(r.degree) < bound) {
    r.bound_respected = false;
  }
  return r;
}

std::string_view certificate_kind_name(CertificateKind k) noexcept {
  return k == CertificateKind::WitnessPoly ? "witness_poly" : "kernel_trivial";
}

nlohmann::json to_json(const VanishingCertificate& c) {
  nlohmann::json j = {{"kind", certificate_kind_name(c.kind)},
                      {"D", c.D},
                      {"rows", c.rows},
                      {"cols", c.cols},
                      {"rank", c.rank},
                      {"verification",
                       {{"hasse_checks_passed", c.hasse_checks_passed},
                        {"hasse_checks", c.hasse_checks},
                        {"second_pass_rank", c.second_pass_rank}}}};
  if (c.witness) j["witness"] = c.witness->to_string();
  return j;
}

}  // namespace kakeya
