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

#include "kakeya/linalg.hpp"

#include <utility>

#include "kakeya/error.hpp"

namespace kakeya {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

std::vector<Elem> Matrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

Matrix Matrix::transposed() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  }
  return t;
}

std::vector<Elem> Matrix::apply(const std::vector<Elem>& v) const {
  require(v.size() == cols_, ErrorCode::DimensionMismatch, "matrix-vector size");
  std::vector<Elem> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    Elem acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc = field_->add(acc, field_->mul(at(r, c), v[c]));
    out[r] = acc;
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
  require(cols_ == o.rows_, ErrorCode::DimensionMismatch, "matrix product size");
  Matrix out(field_, rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Elem a = at(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) {
        out.at(r, c) = field_->add(out.at(r, c), field_->mul(a, o.at(k, c)));
      }
    }
  }
  return out;
}

bool Matrix::is_zero() const noexcept {
  for (Elem v : data_) {
    if (v != 0) return false;
  }
  return true;
}

Echelon row_reduce(Matrix m) {
  const Field& f = *m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m.at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    }
    const Elem inv = f.inv(m.at(r, c));
    for (std::size_t j = c; j < cols; ++j) m.at(r, j) = f.mul(m.at(r, j), inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Elem factor = m.at(i, c);
      if (factor == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return Echelon{std::move(m), r, std::move(pivots)};
}

std::vector<std::vector<Elem>> kernel_basis(const Echelon& e) {
  const Field& f = *e.reduced.field();
  const std::size_t cols = e.reduced.cols();
  std::vector<char> is_pivot(cols, 0);
  for (auto c : e.pivot_cols) is_pivot[c] = 1;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
      v[e.pivot_cols[i]] = f.neg(e.reduced.at(i, free));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank_reverse_pivot(const Matrix& m) {
  Matrix t = m.transposed();
  const Field& f = *t.field();
  const std::size_t rows = t.rows(), cols = t.cols();
  std::vector<char> used(rows, 0);
  std::size_t rank = 0;
  for (std::size_t c = cols; c-- > 0;) {
    std::size_t piv = rows;
    for (std::size_t i = rows; i-- > 0;) {
      if (!used[i] && t.at(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv == rows) continue;
    used[piv] = 1;
    ++rank;
    const Elem inv = f.inv(t.at(piv, c));
    for (std::size_t i = 0; i < rows; ++i) {
      if (used[i] || t.at(i, c) == 0) continue;
      const Elem factor = f.mul(t.at(i, c), inv);
      for (std::size_t j = 0; j <= c; ++j) {
        t.at(i, j) = f.sub(t.at(i, j), f.mul(factor, t.at(piv, j)));
      }
    }
  }
  return rank;
}

}  // namespace kakeya
