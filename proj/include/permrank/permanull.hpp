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
#include <string>
#include <vector>

#include "json.hpp"
#include "permrank/linalg.hpp"

namespace permrank {

// A subspace S <= F^n is called permanull when every n x n matrix whose
// columns all lie in S has permanent zero. S is trivial when it lies inside
// some coordinate hyperplane {x : x_i = 0}; trivial subspaces are always
// permanull (every matrix over them has a zero row).
//
// The fast checker expands the permanent of a generic matrix over S as a
// polynomial in the standard-form coordinates. With codim d and dim k, the
// polynomial lives in d vector variables in F^k and its monomials are indexed
// by tuples alpha in [k]^d: the coefficient of x^alpha is
// n_alpha * per(M_alpha), where M_alpha collects the standard-form tail
// columns selected by alpha and n_alpha counts ways to place repeated picks.
// S is permanull exactly when every such coefficient vanishes in F.

/// Monomial index: d values in [0, k).
struct AlphaTuple {
  std::vector<size_t> entries;

  bool operator==(const AlphaTuple& o) const { return entries == o.entries; }
};

/// Multiplicity factor of a monomial: the product over distinct values j in
/// alpha of (count of j in alpha) + 1. Computed as an exact integer; reduce
/// into the field at the point of use.
uint64_t n_alpha(const AlphaTuple& alpha);

/// Coefficient of x^alpha: n_alpha * per(M_alpha), where column t of the
/// d x d matrix M_alpha is column alpha[t] of a_block.
FieldElement coefficient(const AlphaTuple& alpha, const Matrix& a_block);

enum class PermanullMethod { kPolynomial, kBruteForce };

struct PermanullVerdict {
  bool permanull;
  PermanullMethod method;
  /// Polynomial checker, negative verdicts: a monomial with nonvanishing
  /// coefficient.
  std::optional<AlphaTuple> failing_alpha;
  /// Brute-force checker, negative verdicts: an explicit square matrix with
  /// columns in the subspace(s) and nonzero permanent.
  std::optional<Matrix> counterexample;
};

struct PolyCheckOptions {
  /// Coefficients are symmetric under permuting alpha, so scanning
  /// non-decreasing tuples suffices; disable to scan all k^d tuples.
  bool nondecreasing_only = true;
};

/// Fast permanull check via the coefficient criterion. Cost O(binom(k+d-1,d))
/// coefficient evaluations, each a d x d permanent. The zero subspace is
/// permanull (ambient >= 1); the full space is not (the identity matrix
/// witnesses it at d = 0).
PermanullVerdict is_permanull_poly(const Subspace& s, PolyCheckOptions opts = {});

struct BruteOptions {
  uint64_t tuple_budget = 1ull << 22;
  /// Skip tuples that omit some basis index. Valid for RREF bases (an
  /// omitted pivot forces a zero row) but off by default so the oracle stays
  /// assumption-free.
  bool skip_missing_index = false;
};

/// Brute-force oracle: by column multilinearity, S is permanull iff the
/// permanent vanishes on every n-tuple of basis vectors, all dim(S)^n of
/// which are enumerated.
PermanullVerdict is_permanull_brute(const Subspace& s, BruteOptions opts = {});

/// Least coordinate i with every vector of S vanishing at i, if any. The
/// subspace is trivial exactly when this is non-empty.
std::optional<size_t> trivial_coordinate(const Subspace& s);

/// A list S_1..S_n <= F^n is jointly permanull when every n x n matrix whose
/// i-th column lies in S_i has permanent zero. Checked over all basis-vector
/// tuples (prod dim(S_i) of them), again by multilinearity.
PermanullVerdict is_jointly_permanull_brute(const std::vector<Subspace>& list,
                                            BruteOptions opts = {});

/// Dimension of the span of the image of (u, v) -> per_3x2([u v]) over
/// u in U, v in V, both subspaces of F^3 of dimension >= 2. The map is
/// bilinear, so basis pairs span the image hull; pairwise-sum pairs are
/// included as a belt-and-braces measure and cross-checked by full
/// enumeration in the tests.
size_t puv_dimension(const Subspace& u, const Subspace& v);

/// Sufficient condition for permanullity: project the standard-form tail
/// vectors a_i into F^codim and test the span. If that projected span is
/// permanull, so is S; the converse fails (a permanull S can have a full
/// projected span). Requires dim(S) >= 1.
bool permanull_sufficient(const Subspace& s);

/// Outcome of an exhaustive theorem check. `params` echoes the inputs;
/// `violations` lists human-readable mismatches (empty means the assertion
/// held); `findings` carries report-only observations.
struct VerifyReport {
  std::string theorem;
  nlohmann::json params;
  uint64_t total_enumerated = 0;
  uint64_t passing = 0;
  std::vector<std::string> violations;
  std::vector<std::string> findings;
  bool ok = true;
};

/// Codimension-1 classification: among all hyperplanes of F^n, exactly the n
/// coordinate hyperplanes are permanull. Checks every hyperplane with the
/// polynomial criterion.
VerifyReport verify_c1_classification(const FqPtr& field, size_t n,
                                      uint64_t state_budget = kDefaultStateBudget);

/// Joint classification for n in {3, 4}: over all n-term lists drawn from
/// hyperplanes plus the full space, exactly the n constant coordinate-
/// hyperplane lists are jointly permanull. Parallelized over list ranges.
VerifyReport verify_manyfriends(const FqPtr& field, size_t n, int workers = 1,
                                uint64_t state_budget = kDefaultStateBudget);

/// Characteristic threshold at codimension d: when char F > d + 1, permanull
/// is equivalent to trivial over all codim-d subspaces (asserted); otherwise
/// the nontrivial permanull subspaces found are reported, not asserted.
VerifyReport verify_char_threshold(const FqPtr& field, size_t n, size_t d,
                                   uint64_t state_budget = kDefaultStateBudget);

}  // namespace permrank
