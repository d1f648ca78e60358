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

#include "permrank/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace permrank {

Vector::Vector(FqPtr field, size_t dim) : field_(std::move(field)) {
  if (!field_) throw std::invalid_argument("null field");
  data_.assign(dim, 0);
}

Vector Vector::from_ints(const FqPtr& field, const std::vector<int64_t>& v) {
  Vector out(field, v.size());
  for (size_t i = 0; i < v.size(); ++i) out.data_[i] = field->from_int(v[i]);
  return out;
}

Vector Vector::unit(const FqPtr& field, size_t dim, size_t index) {
  Vector out(field, dim);
  out.set(index, 1);
  return out;
}

void Vector::set(size_t i, uint32_t code) {
  if (code >= field_->order())
    throw std::invalid_argument("element code out of range");
  data_[i] = code;
}

bool Vector::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](uint32_t c) { return c == 0; });
}

bool Vector::operator==(const Vector& o) const {
  return field_->same_field(*o.field_) && data_ == o.data_;
}

Matrix::Matrix(FqPtr field, size_t rows, size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
  if (!field_) throw std::invalid_argument("null field");
  data_.assign(rows * cols, 0);
}

Matrix Matrix::identity(const FqPtr& field, size_t n) {
  Matrix out(field, n, n);
  for (size_t i = 0; i < n; ++i) out.set(i, i, 1);
  return out;
}

Matrix Matrix::from_ints(const FqPtr& field,
                         const std::vector<std::vector<int64_t>>& rows) {
  size_t r = rows.size();
  size_t c = r == 0 ? 0 : rows[0].size();
  Matrix out(field, r, c);
  for (size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c)
      throw std::invalid_argument("ragged row lengths");
    for (size_t j = 0; j < c; ++j)
      out.data_[i * c + j] = field->from_int(rows[i][j]);
  }
  return out;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) throw std::invalid_argument("from_rows needs rows");
  size_t c = rows[0].dim();
  Matrix out(rows[0].field(), rows.size(), c);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].dim() != c || !rows[i].field()->same_field(*out.field_))
      throw std::invalid_argument("incompatible rows");
    for (size_t j = 0; j < c; ++j) out.data_[i * c + j] = rows[i].at(j);
  }
  return out;
}

Matrix Matrix::random(const FqPtr& field, size_t rows, size_t cols, Rng& rng) {
  Matrix out(field, rows, cols);
  for (auto& v : out.data_) v = field->sample(rng);
  return out;
}

void Matrix::set(size_t i, size_t j, uint32_t code) {
  if (code >= field_->order())
    throw std::invalid_argument("element code out of range");
  data_[i * cols_ + j] = code;
}

Vector Matrix::row(size_t i) const {
  Vector out(field_, cols_);
  for (size_t j = 0; j < cols_; ++j) out.set(j, at(i, j));
  return out;
}

Vector Matrix::col(size_t j) const {
  Vector out(field_, rows_);
  for (size_t i = 0; i < rows_; ++i) out.set(i, at(i, j));
  return out;
}

void Matrix::set_col(size_t j, const Vector& v) {
  if (v.dim() != rows_) throw std::invalid_argument("column length mismatch");
  for (size_t i = 0; i < rows_; ++i) data_[i * cols_ + j] = v.at(i);
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out.data_[j * rows_ + i] = at(i, j);
  return out;
}

Matrix Matrix::minor_at(size_t ri, size_t cj) const {
  Matrix out(field_, rows_ - 1, cols_ - 1);
  for (size_t i = 0, oi = 0; i < rows_; ++i) {
    if (i == ri) continue;
    for (size_t j = 0, oj = 0; j < cols_; ++j) {
      if (j == cj) continue;
      out.data_[oi * (cols_ - 1) + oj] = at(i, j);
      ++oj;
    }
    ++oi;
  }
  return out;
}

Matrix Matrix::submatrix(const std::vector<size_t>& row_idx,
                         const std::vector<size_t>& col_idx) const {
  Matrix out(field_, row_idx.size(), col_idx.size());
  for (size_t i = 0; i < row_idx.size(); ++i)
    for (size_t j = 0; j < col_idx.size(); ++j)
      out.data_[i * col_idx.size() + j] = at(row_idx[i], col_idx[j]);
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](uint32_t c) { return c == 0; });
}

std::optional<size_t> Matrix::zero_column() const {
  for (size_t j = 0; j < cols_; ++j) {
    bool zero = true;
    for (size_t i = 0; i < rows_; ++i)
      if (at(i, j) != 0) {
        zero = false;
        break;
      }
    if (zero) return j;
  }
  return std::nullopt;
}

bool Matrix::operator==(const Matrix& o) const {
  return field_->same_field(*o.field_) && rows_ == o.rows_ &&
         cols_ == o.cols_ && data_ == o.data_;
}

RrefResult rref(const Matrix& m) {
  const Fq& f = *m.field();
  Matrix r = m;
  std::vector<size_t> pivots;
  size_t pr = 0;  // next pivot row
  for (size_t c = 0; c < m.cols() && pr < m.rows(); ++c) {
    size_t sel = pr;
    while (sel < m.rows() && r.at(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    // swap rows sel, pr
    if (sel != pr)
      for (size_t j = 0; j < m.cols(); ++j) {
        uint32_t t = r.at(pr, j);
        r.set(pr, j, r.at(sel, j));
        r.set(sel, j, t);
      }
    // scale pivot row to 1
    uint32_t piv = r.at(pr, c);
    if (piv != 1) {
      uint32_t s = f.inv(piv);
      for (size_t j = c; j < m.cols(); ++j)
        r.set(pr, j, f.mul(r.at(pr, j), s));
    }
    // eliminate the pivot column everywhere else
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == pr) continue;
      uint32_t v = r.at(i, c);
      if (v == 0) continue;
      for (size_t j = c; j < m.cols(); ++j)
        r.set(i, j, f.sub(r.at(i, j), f.mul(v, r.at(pr, j))));
    }
    pivots.push_back(c);
    ++pr;
  }
  return {std::move(r), pivots.size(), std::move(pivots)};
}

Subspace::Subspace(Matrix basis, size_t ambient)
    : ambient_(ambient), basis_(std::move(basis)) {}

Subspace Subspace::span_rows(const Matrix& m) {
  RrefResult rr = rref(m);
  Matrix basis(m.field(), rr.rank, m.cols());
  for (size_t i = 0; i < rr.rank; ++i)
    for (size_t j = 0; j < m.cols(); ++j) basis.set(i, j, rr.reduced.at(i, j));
  return Subspace(std::move(basis), m.cols());
}

Subspace Subspace::span(const std::vector<Vector>& vectors, const FqPtr& field,
                        size_t ambient) {
  if (vectors.empty()) return zero(field, ambient);
  for (const auto& v : vectors)
    if (v.dim() != ambient) throw std::invalid_argument("ambient mismatch");
  return span_rows(Matrix::from_rows(vectors));
}

Subspace Subspace::zero(const FqPtr& field, size_t ambient) {
  return Subspace(Matrix(field, 0, ambient), ambient);
}

Subspace Subspace::full(const FqPtr& field, size_t ambient) {
  return Subspace(Matrix::identity(field, ambient), ambient);
}

Subspace Subspace::hyperplane(const Vector& normal) {
  if (normal.is_zero())
    throw std::invalid_argument("hyperplane normal must be nonzero");
  const FqPtr& f = normal.field();
  size_t n = normal.dim();
  size_t c = 0;
  while (normal.at(c) == 0) ++c;
  uint32_t ic = f->inv(normal.at(c));
  std::vector<Vector> gens;
  for (size_t j = 0; j < n; ++j) {
    if (j == c) continue;
    // e_j - (normal_j / normal_c) e_c satisfies <normal, x> = 0
    Vector v(f, n);
    v.set(j, 1);
    v.set(c, f->neg(f->mul(normal.at(j), ic)));
    gens.push_back(v);
  }
  return span(gens, f, n);
}

bool Subspace::contains(const Vector& v) const {
  if (v.dim() != ambient_) throw std::invalid_argument("ambient mismatch");
  const Fq& f = *field();
  std::vector<uint32_t> w(ambient_);
  for (size_t j = 0; j < ambient_; ++j) w[j] = v.at(j);
  for (size_t i = 0; i < dim(); ++i) {
    // basis_ is RREF: the pivot of row i is its first nonzero entry (a 1)
    size_t c = 0;
    while (basis_.at(i, c) == 0) ++c;
    uint32_t coef = w[c];
    if (coef == 0) continue;
    for (size_t j = 0; j < ambient_; ++j)
      w[j] = f.sub(w[j], f.mul(coef, basis_.at(i, j)));
  }
  return std::all_of(w.begin(), w.end(), [](uint32_t x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_)
    throw std::invalid_argument("ambient mismatch");
  for (size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

bool Subspace::operator==(const Subspace& o) const {
  return ambient_ == o.ambient_ && basis_ == o.basis_;
}

StandardForm standard_form(const Subspace& s) {
  if (s.dim() == 0)
    throw std::invalid_argument("zero subspace has no standard form");
  RrefResult rr = rref(s.basis());
  size_t n = s.ambient(), k = s.dim(), d = s.codim();
  std::vector<size_t> perm;
  perm.reserve(n);
  std::vector<bool> is_pivot(n, false);
  for (size_t c : rr.pivots) is_pivot[c] = true;
  for (size_t c : rr.pivots) perm.push_back(c);
  std::vector<size_t> nonpivots;
  for (size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) {
      perm.push_back(c);
      nonpivots.push_back(c);
    }
  // Column i of a_block is the non-pivot tail of basis row i.
  Matrix a_block(s.field(), d, k);
  for (size_t r = 0; r < d; ++r)
    for (size_t i = 0; i < k; ++i)
      a_block.set(r, i, s.basis().at(i, nonpivots[r]));
  return {std::move(perm), std::move(a_block), d};
}

SubspaceEnumerator::SubspaceEnumerator(FqPtr field, size_t ambient, size_t dim,
                                       uint64_t state_budget)
    : field_(std::move(field)), ambient_(ambient), dim_(dim), done_(false),
      fresh_pivots_(true) {
  if (dim_ > ambient_) {
    done_ = true;
    return;
  }
  if (saturating_pow_u64(field_->order(), ambient_) > state_budget)
    throw BudgetExceeded("subspace enumeration over " + field_->name() +
                         "^" + std::to_string(ambient_) +
                         " exceeds the state budget");
  pivots_.resize(dim_);
  for (size_t i = 0; i < dim_; ++i) pivots_[i] = i;
}

namespace {

// Free slots of the canonical RREF shape for a given pivot set: position
// (i, j) is free iff j > pivots[i] and j is not itself a pivot column.
std::vector<std::pair<size_t, size_t>> free_positions(
    const std::vector<size_t>& pivots, size_t ambient) {
  std::vector<bool> is_pivot(ambient, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::pair<size_t, size_t>> out;
  for (size_t i = 0; i < pivots.size(); ++i)
    for (size_t j = pivots[i] + 1; j < ambient; ++j)
      if (!is_pivot[j]) out.emplace_back(i, j);
  return out;
}

}  // namespace

std::optional<Subspace> SubspaceEnumerator::next() {
  if (done_) return std::nullopt;
  if (fresh_pivots_) {
    free_pos_ = free_positions(pivots_, ambient_);
    free_val_.assign(free_pos_.size(), 0);
    fresh_pivots_ = false;
    return current();
  }
  if (advance_free_entries()) return current();
  if (advance_pivots()) {
    free_pos_ = free_positions(pivots_, ambient_);
    free_val_.assign(free_pos_.size(), 0);
    return current();
  }
  done_ = true;
  return std::nullopt;
}

bool SubspaceEnumerator::advance_free_entries() {
  uint32_t q = field_->order();
  for (size_t i = free_val_.size(); i-- > 0;) {
    if (free_val_[i] + 1 < q) {
      ++free_val_[i];
      std::fill(free_val_.begin() + i + 1, free_val_.end(), 0);
      return true;
    }
  }
  return false;
}

bool SubspaceEnumerator::advance_pivots() {
  // next lexicographic dim-combination of [0, ambient)
  if (dim_ == 0) return false;
  size_t i = dim_;
  while (i-- > 0) {
    if (pivots_[i] + 1 <= ambient_ - (dim_ - i)) {
      ++pivots_[i];
      for (size_t j = i + 1; j < dim_; ++j) pivots_[j] = pivots_[j - 1] + 1;
      return true;
    }
  }
  return false;
}

Subspace SubspaceEnumerator::current() const {
  Matrix basis(field_, dim_, ambient_);
  for (size_t i = 0; i < dim_; ++i) basis.set(i, pivots_[i], 1);
  for (size_t t = 0; t < free_pos_.size(); ++t)
    basis.set(free_pos_[t].first, free_pos_[t].second, free_val_[t]);
  return Subspace::span_rows(basis);
}

std::vector<Subspace> enumerate_subspaces(const FqPtr& field, size_t ambient,
                                          size_t dim, uint64_t state_budget) {
  SubspaceEnumerator en(field, ambient, dim, state_budget);
  std::vector<Subspace> out;
  while (auto s = en.next()) out.push_back(std::move(*s));
  return out;
}

}  // namespace permrank
