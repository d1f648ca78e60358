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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "permrank/linalg.hpp"

namespace permrank {

inline constexpr size_t kNaivePermanentMaxN = 9;
inline constexpr size_t kRyserMaxN = 24;
inline constexpr uint64_t kDefaultPrkOpBudget = 1ull << 30;

/// Permanent by direct summation over all n! permutations. Reference
/// implementation, kept independent of per_ryser so the two can validate
/// each other. The empty 0x0 matrix has permanent 1.
FieldElement per_naive(const Matrix& a, size_t max_n = kNaivePermanentMaxN);

/// Permanent by inclusion-exclusion over column subsets: the sum over
/// nonempty T of (-1)^(n-|T|) * prod_i sum_{j in T} a_ij, walked in Gray-code
/// order so each step updates the row sums by a single column. Signs are
/// field negations, which is exactly right in odd characteristic.
FieldElement per_ryser(const Matrix& a, size_t max_n = kRyserMaxN);

/// Terms (a_{row,j}, per of the minor at (row, j)) for j = 0..n-1. Their
/// sum telescopes to per(a): the permanent expands along any row.
std::vector<std::pair<FieldElement, FieldElement>> cofactor_expansion(
    const Matrix& a, size_t row);

struct PrkResult {
  size_t value;
  /// Row and column index sets of a value x value submatrix with nonzero
  /// permanent; empty for the zero matrix (value 0).
  std::optional<std::pair<std::vector<size_t>, std::vector<size_t>>> witness;
};

/// Permanental rank: the largest r such that some r x r submatrix has
/// nonzero permanent. Searches sizes descending, index sets in lexicographic
/// order, so the witness is the first one found at the top size. The
/// op_budget caps the estimated field operations spent across the search.
PrkResult prk(const Matrix& a, uint64_t op_budget = kDefaultPrkOpBudget);

struct FullPrkResult {
  bool full;
  /// Rows of a k x k submatrix (all k columns) with nonzero permanent.
  std::optional<std::vector<size_t>> witness_rows;
};

/// For n x k with n >= k: does some k x k submatrix have nonzero permanent?
/// Row subsets are scanned lexicographically with early exit.
FullPrkResult has_full_prk(const Matrix& a);

/// The three 2 x 2 subpermanents of a 3 x 2 matrix in row-deletion order:
/// component i is the permanent of the submatrix with row i removed.
Vector per_3x2(const Matrix& a);

enum class Nx2Class {
  kFullPrk,     // some 2 x 2 subpermanent is nonzero
  kZeroColumn,  // a column is identically zero
  kSingleRow,   // exactly one nonzero row, proportional to (1, x), x != 0
  kPairedRows,  // exactly two nonzero rows, proportional to (1, x), (1, -x)
};

/// Classification of n x 2 matrices. When the permanental rank is below 2,
/// exactly one of the three degenerate shapes applies.
Nx2Class classify_nx2(const Matrix& a);

}  // namespace permrank
