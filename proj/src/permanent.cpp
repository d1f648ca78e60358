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

#include "permrank/permanent.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace permrank {
namespace {

void require_square(const Matrix& a, const char* op) {
  if (a.rows() != a.cols())
    throw std::invalid_argument(std::string(op) + ": matrix is " +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + ", not square");
}

// Lexicographically next r-combination of [0, n); returns false at the end.
bool next_combination(std::vector<size_t>& c, size_t n) {
  size_t r = c.size();
  size_t i = r;
  while (i-- > 0) {
    if (c[i] + 1 <= n - (r - i)) {
      ++c[i];
      for (size_t j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

FieldElement per_naive(const Matrix& a, size_t max_n) {
  require_square(a, "per_naive");
  const Fq& f = *a.field();
  size_t n = a.rows();
  if (n > max_n)
    throw BudgetExceeded("per_naive: n = " + std::to_string(n) +
                         " exceeds the budget of " + std::to_string(max_n));
  if (n == 0) return a.field()->one();
  std::vector<size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  uint32_t acc = 0;
  do {
    uint32_t prod = 1;
    for (size_t i = 0; i < n && prod != 0; ++i)
      prod = f.mul(prod, a.at(i, sigma[i]));
    acc = f.add(acc, prod);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return a.field()->element(acc);
}

FieldElement per_ryser(const Matrix& a, size_t max_n) {
  require_square(a, "per_ryser");
  const Fq& f = *a.field();
  size_t n = a.rows();
  if (n > max_n)
    throw BudgetExceeded("per_ryser: n = " + std::to_string(n) +
                         " exceeds the budget of " + std::to_string(max_n));
  if (n == 0) return a.field()->one();
  std::vector<uint32_t> rowsum(n, 0);
  uint32_t acc = 0;
  uint64_t prev_mask = 0;
  for (uint64_t g = 1; g < (1ull << n); ++g) {
    uint64_t mask = g ^ (g >> 1);
    uint64_t diff = mask ^ prev_mask;  // exactly one column toggled
    size_t j = static_cast<size_t>(std::countr_zero(diff));
    if (mask & diff)
      for (size_t i = 0; i < n; ++i) rowsum[i] = f.add(rowsum[i], a.at(i, j));
    else
      for (size_t i = 0; i < n; ++i) rowsum[i] = f.sub(rowsum[i], a.at(i, j));
    uint32_t prod = rowsum[0];
    for (size_t i = 1; i < n && prod != 0; ++i) prod = f.mul(prod, rowsum[i]);
    // sign (-1)^(n - |T|) realized as a field negation
    if ((n - static_cast<size_t>(std::popcount(mask))) & 1)
      acc = f.sub(acc, prod);
    else
      acc = f.add(acc, prod);
    prev_mask = mask;
  }
  return a.field()->element(acc);
}

std::vector<std::pair<FieldElement, FieldElement>> cofactor_expansion(
    const Matrix& a, size_t row) {
  require_square(a, "cofactor_expansion");
  if (row >= a.rows()) throw std::invalid_argument("row index out of range");
  std::vector<std::pair<FieldElement, FieldElement>> out;
  out.reserve(a.cols());
  for (size_t j = 0; j < a.cols(); ++j)
    out.emplace_back(a.elem(row, j), per_ryser(a.minor_at(row, j)));
  return out;
}

PrkResult prk(const Matrix& a, uint64_t op_budget) {
  const size_t rmax = std::min(a.rows(), a.cols());
  uint64_t spent = 0;
  for (size_t r = rmax; r >= 1; --r) {
    std::vector<size_t> rowset(r), colset(r);
    std::iota(rowset.begin(), rowset.end(), 0);
    uint64_t per_cost = (1ull << r) * r;
    do {
      std::iota(colset.begin(), colset.end(), 0);
      do {
        spent += per_cost;
        if (spent > op_budget)
          throw BudgetExceeded(
              "prk: submatrix search exceeds the operation budget");
        if (!per_ryser(a.submatrix(rowset, colset)).is_zero())
          return {r, std::make_pair(rowset, colset)};
      } while (next_combination(colset, a.cols()));
    } while (next_combination(rowset, a.rows()));
  }
  return {0, std::nullopt};
}

FullPrkResult has_full_prk(const Matrix& a) {
  size_t n = a.rows(), k = a.cols();
  if (n < k)
    throw std::invalid_argument("has_full_prk: fewer rows than columns");
  if (k == 0) return {true, std::vector<size_t>{}};
  std::vector<size_t> cols(k), rows(k);
  std::iota(cols.begin(), cols.end(), 0);
  std::iota(rows.begin(), rows.end(), 0);
  do {
    if (!per_ryser(a.submatrix(rows, cols)).is_zero()) return {true, rows};
  } while (next_combination(rows, n));
  return {false, std::nullopt};
}

Vector per_3x2(const Matrix& a) {
  if (a.rows() != 3 || a.cols() != 2)
    throw std::invalid_argument("per_3x2: matrix must be 3x2");
  const Fq& f = *a.field();
  Vector out(a.field(), 3);
  for (size_t drop = 0; drop < 3; ++drop) {
    size_t r0 = drop == 0 ? 1 : 0;
    size_t r1 = drop == 2 ? 1 : 2;
    uint32_t per = f.add(f.mul(a.at(r0, 0), a.at(r1, 1)),
                         f.mul(a.at(r0, 1), a.at(r1, 0)));
    out.set(drop, per);
  }
  return out;
}

Nx2Class classify_nx2(const Matrix& a) {
  if (a.cols() != 2) throw std::invalid_argument("classify_nx2: need 2 columns");
  if (a.rows() < 1)
    throw std::invalid_argument("classify_nx2: need at least 1 row");
  const Fq& f = *a.field();
  size_t n = a.rows();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      uint32_t per = f.add(f.mul(a.at(i, 0), a.at(j, 1)),
                           f.mul(a.at(i, 1), a.at(j, 0)));
      if (per != 0) return Nx2Class::kFullPrk;
    }
  if (a.zero_column()) return Nx2Class::kZeroColumn;
  std::vector<size_t> nonzero;
  for (size_t i = 0; i < n; ++i)
    if (a.at(i, 0) != 0 || a.at(i, 1) != 0) nonzero.push_back(i);
  if (nonzero.size() == 1) return Nx2Class::kSingleRow;
  if (nonzero.size() == 2) return Nx2Class::kPairedRows;
  // The classification theorem rules this out; reaching it means a bug.
  throw std::logic_error("classify_nx2: rank-deficient matrix fits no case");
}

}  // namespace permrank
