/*
 * Copyright 2026 The permrank Authors
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
#include <cstdint>
#include <optional>
#include <vector>

#include "permrank/common.hpp"
#include "permrank/field.hpp"

namespace permrank {

/// Dense vector over a shared field; entries are raw element codes.
class Vector {
 public:
  Vector(FqPtr field, size_t dim);
  static Vector from_ints(const FqPtr& field, const std::vector<int64_t>& v);
  static Vector unit(const FqPtr& field, size_t dim, size_t index);

  size_t dim() const { return data_.size(); }
  const FqPtr& field() const { return field_; }
  uint32_t at(size_t i) const { return data_[i]; }
  void set(size_t i, uint32_t code);
  FieldElement elem(size_t i) const { return field_->element(data_[i]); }
  bool is_zero() const;

  bool operator==(const Vector& o) const;
  bool operator!=(const Vector& o) const { return !(*this == o); }

 private:
  FqPtr field_;
  std::vector<uint32_t> data_;
};

/// Dense row-major matrix over a shared field; entries are raw element codes.
class Matrix {
 public:
  Matrix(FqPtr field, size_t rows, size_t cols);
  static Matrix identity(const FqPtr& field, size_t n);
  static Matrix from_ints(const FqPtr& field,
                          const std::vector<std::vector<int64_t>>& rows);
  static Matrix from_rows(const std::vector<Vector>& rows);
  static Matrix random(const FqPtr& field, size_t rows, size_t cols, Rng& rng);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const FqPtr& field() const { return field_; }

  uint32_t at(size_t i, size_t j) const { return data_[i * cols_ + j]; }
  void set(size_t i, size_t j, uint32_t code);
  FieldElement elem(size_t i, size_t j) const {
    return field_->element(at(i, j));
  }

  Vector row(size_t i) const;
  Vector col(size_t j) const;
  void set_col(size_t j, const Vector& v);
  Matrix transpose() const;
  /// Matrix with row i and column j removed.
  Matrix minor_at(size_t i, size_t j) const;
  Matrix submatrix(const std::vector<size_t>& row_idx,
                   const std::vector<size_t>& col_idx) const;

  bool is_zero() const;
  std::optional<size_t> zero_column() const;

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  FqPtr field_;
  size_t rows_, cols_;
  std::vector<uint32_t> data_;
};

struct RrefResult {
  Matrix reduced;
  size_t rank;
  std::vector<size_t> pivots;  // strictly increasing column indices
};

/// Gauss-Jordan reduced row echelon form.
RrefResult rref(const Matrix& m);

/// A linear subspace of F^n held in canonical form: the basis matrix is the
/// RREF of any spanning set with zero rows dropped, so structural equality of
/// bases is equality of subspaces.
class Subspace {
 public:
  static Subspace span_rows(const Matrix& m);
  static Subspace span(const std::vector<Vector>& vectors, const FqPtr& field,
                       size_t ambient);
  static Subspace zero(const FqPtr& field, size_t ambient);
  static Subspace full(const FqPtr& field, size_t ambient);
  /// Kernel of the functional x -> <normal, x>; normal must be nonzero.
  static Subspace hyperplane(const Vector& normal);

  size_t ambient() const { return ambient_; }
  size_t dim() const { return basis_.rows(); }
  size_t codim() const { return ambient_ - dim(); }
  const FqPtr& field() const { return basis_.field(); }
  /// dim() x ambient() matrix in RREF with no zero rows.
  const Matrix& basis() const { return basis_; }

  bool contains(const Vector& v) const;
  /// Subspace containment (every basis vector of other lies in *this).
  bool contains(const Subspace& other) const;

  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  Subspace(Matrix basis, size_t ambient);

  size_t ambient_;
  Matrix basis_;
};

/// Coordinate change that exhibits a subspace as a graph over its pivot
/// coordinates. column_permutation is the new-to-old column map: applying it
/// to the basis (new column j reads old column column_permutation[j]) yields
/// rows (e_i, a_i) with a_i in F^codim; a_block is the codim x dim matrix
/// whose i-th column is a_i.
struct StandardForm {
  std::vector<size_t> column_permutation;
  Matrix a_block;
  size_t codim;
};

/// Throws std::invalid_argument for the zero subspace (it has no standard
/// form).
StandardForm standard_form(const Subspace& s);

inline constexpr uint64_t kDefaultStateBudget = 1ull << 24;

/// Streams every dim-dimensional subspace of F^n exactly once, deterministic
/// order: pivot-column sets lexicographically, then the free entries of the
/// canonical basis by row-major odometer over ascending element codes.
/// Construction throws BudgetExceeded when q^n exceeds state_budget.
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(FqPtr field, size_t ambient, size_t dim,
                     uint64_t state_budget = kDefaultStateBudget);

  std::optional<Subspace> next();

 private:
  bool advance_free_entries();
  bool advance_pivots();
  Subspace current() const;

  FqPtr field_;
  size_t ambient_, dim_;
  std::vector<size_t> pivots_;
  std::vector<std::pair<size_t, size_t>> free_pos_;  // (row, col) free slots
  std::vector<uint32_t> free_val_;
  bool done_;
  bool fresh_pivots_;
};

/// Convenience wrapper collecting the full enumeration into a vector.
std::vector<Subspace> enumerate_subspaces(
    const FqPtr& field, size_t ambient, size_t dim,
    uint64_t state_budget = kDefaultStateBudget);

}  // namespace permrank
