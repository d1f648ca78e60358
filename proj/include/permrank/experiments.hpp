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
#include <map>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "permrank/field.hpp"

namespace permrank {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr uint64_t kDefaultCellBudget = 43046721;  // 3^16

enum class ExperimentKind {
  kMcPerZero,         // MC: per(A) == 0 for random n x n
  kMcDetZero,         // MC: det(A) == 0 (rank deficiency) for random n x n
  kMcZ,               // MC: no k x k subpermanent of a random n x k is nonzero
  kExactPerZero,      // exhaustive per(A) == 0 count over all n x n
  kExactZ,            // exhaustive count of the MC_Z event
  kExactPrkDeficient  // same count, reported under the rank-deficiency name
};

std::string kind_name(ExperimentKind k);
std::optional<ExperimentKind> kind_from_name(const std::string& name);
bool kind_is_exact(ExperimentKind k);

/// One experiment outcome. `samples` is the sample count for Monte-Carlo
/// kinds and the exhaustive total for exact kinds; hits/samples is the exact
/// estimate, `estimate` its decimal value. stderr_value and seed are only
/// meaningful for Monte-Carlo records.
struct ExperimentRecord {
  int v = 1;  // record schema version
  ExperimentKind kind;
  int64_t q = 0;
  size_t n = 0;
  size_t k = 0;  // 0 when the kind has no k parameter
  uint64_t samples = 0;
  uint64_t hits = 0;
  double estimate = 0.0;
  double stderr_value = 0.0;
  uint64_t seed = 0;
  std::string rng_id;
  int workers = 1;
  uint64_t wall_time_ms = 0;
  /// For MC_Z: how each sample was decided (certificate, zero column,
  /// brute-force fallback).
  std::map<std::string, uint64_t> method_counts;

  nlohmann::json to_json() const;
  static std::string csv_header();
  std::string csv_row() const;
};

/// Probability that a uniform n x n matrix over GF(q) is singular:
/// 1 - prod_{i=0}^{n-1} (1 - q^(i-n)), as an exact rational.
Rational det_zero_probability_exact(int64_t q, size_t n);

/// Probability that a uniform n x k matrix has some zero column:
/// 1 - (1 - q^-n)^k, as an exact rational.
Rational sc0_probability_exact(int64_t q, size_t n, size_t k);

/// Exhaustive count of n x n matrices with zero permanent. Enumerates all
/// q^(n^2) matrices; `cell_budget` caps that total.
ExperimentRecord exact_count_per_zero(const FqPtr& field, size_t n,
                                      int workers = 1,
                                      uint64_t cell_budget = kDefaultCellBudget);

/// Exhaustive count of n x k matrices (n >= k) with no k x k subpermanent
/// nonzero, i.e. permanental rank below k. `kind` selects the record tag
/// (EXACT_Z and EXACT_PRK_DEFICIENT are the same count by definition).
ExperimentRecord exact_count_prk_deficient(
    const FqPtr& field, size_t n, size_t k, int workers = 1,
    uint64_t cell_budget = kDefaultCellBudget,
    ExperimentKind kind = ExperimentKind::kExactPrkDeficient);

/// Exhaustive check of the cofactor-expansion identity
///   Pr[per(A) = 0 over n x n] = 1/q + (1 - 1/q) Pr[prk(B) < n-1 over n x (n-1)]
/// with both sides as exact rationals from full enumeration.
struct CofactorIdentityReport {
  Rational lhs;
  Rational rhs;
  bool holds = false;
  ExperimentRecord square;  // the n x n per-zero count
  ExperimentRecord rect;    // the n x (n-1) rank-deficiency count
};

CofactorIdentityReport cofactor_identity_check(
    const FqPtr& field, size_t n, int workers = 1,
    uint64_t cell_budget = kDefaultCellBudget);

struct McParams {
  ExperimentKind kind = ExperimentKind::kMcPerZero;
  int64_t q = 3;
  size_t n = 1;
  size_t k = 0;  // required for MC_Z
  uint64_t samples = 0;
  uint64_t seed = 0;
  int workers = 1;
};

/// Monte-Carlo estimator. Sample s draws its matrix from substream(s) of the
/// master stream for `seed`, entries row-major, so hit counts do not depend
/// on the worker count. stderr is sqrt(p(1-p)/samples) for the observed p.
ExperimentRecord mc_estimate(const McParams& params);

/// Appends one record per line; creates files as needed. The CSV helper
/// writes a header when the file starts empty.
void append_jsonl(const std::string& path, const ExperimentRecord& rec);
void append_csv(const std::string& path, const ExperimentRecord& rec);

}  // namespace permrank
