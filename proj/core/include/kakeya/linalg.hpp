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

#include <cstddef>
#include <vector>

#include "kakeya/gf.hpp"

namespace kakeya {

/// Dense row-major matrix over F_q.
class Matrix {
 public:
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Elem& at(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  Elem at(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  std::vector<Elem> row(std::size_t r) const;
  Matrix transposed() const;
  /// Matrix-vector product.
  std::vector<Elem> apply(const std::vector<Elem>& v) const;
  Matrix operator*(const Matrix& o) const;
  bool is_zero() const noexcept;

 private:
  FieldPtr field_;
  std::size_t rows_, cols_;
  std::vector<Elem> data_;
};

/// Reduced row echelon form computed by scanning columns left to right and
/// taking the first row with a nonzero entry as pivot.
struct Echelon {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};
Echelon row_reduce(Matrix m);

/// Kernel basis from an Echelon: one vector per free column, in column order.
std::vector<std::vector<Elem>> kernel_basis(const Echelon& e);

/// Rank by a second, independent elimination: works on the transpose and
/// picks pivots scanning rows from last to first and columns from last to
/// first. Used to cross-check row_reduce.
std::size_t rank_reverse_pivot(const Matrix& m);

}  // namespace kakeya
