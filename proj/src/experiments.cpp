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

#include "permrank/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "permrank/common.hpp"
#include "permrank/linalg.hpp"
#include "permrank/permanent.hpp"
#include "permrank/wellspread.hpp"

namespace permrank {
namespace {

using Clock = std::chrono::steady_clock;

uint64_t elapsed_ms(Clock::time_point start) {
  return static_cast<uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                            start)
          .count());
}

double binomial_stderr(uint64_t hits, uint64_t samples) {
  if (samples == 0) return 0.0;
  double p = static_cast<double>(hits) / static_cast<double>(samples);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
}

// Writes the base-q digits of index into the entries of m, row-major with
// entry (0,0) least significant. This is the bijection the exhaustive
// counters parallelize over.
void matrix_from_index(Matrix& m, uint64_t index, uint32_t q) {
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      m.set(i, j, static_cast<uint32_t>(index % q));
      index /= q;
    }
}

// Shared scaffold for the exhaustive counters: splits [0, total) across
// workers, counts predicate hits deterministically.
template <typename Pred>
uint64_t count_over_all_matrices(const FqPtr& field, size_t rows, size_t cols,
                                 uint64_t total, int workers, Pred pred) {
  auto ranges = split_ranges(total, workers);
  std::vector<uint64_t> counts(ranges.size(), 0);
  auto run = [&](size_t w) {
    Matrix m(field, rows, cols);
    uint64_t local = 0;
    for (uint64_t t = ranges[w].first; t < ranges[w].second; ++t) {
      matrix_from_index(m, t, field->order());
      if (pred(m)) ++local;
    }
    counts[w] = local;
  };
  std::vector<std::thread> pool;
  for (size_t w = 1; w < ranges.size(); ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& th : pool) th.join();
  uint64_t hits = 0;
  for (uint64_t c : counts) hits += c;
  return hits;
}

uint64_t checked_cell_total(const FqPtr& field, size_t cells,
                            uint64_t cell_budget, const char* what) {
  uint64_t total = saturating_pow_u64(field->order(), cells);
  if (total > cell_budget)
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(cells) +
                         " cells over " + field->name() +
                         " exceeds the exhaustive budget");
  return total;
}

}  // namespace

std::string kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kMcPerZero: return "MC_PER_ZERO";
    case ExperimentKind::kMcDetZero: return "MC_DET_ZERO";
    case ExperimentKind::kMcZ: return "MC_Z";
    case ExperimentKind::kExactPerZero: return "EXACT_PER_ZERO";
    case ExperimentKind::kExactZ: return "EXACT_Z";
    case ExperimentKind::kExactPrkDeficient: return "EXACT_PRK_DEFICIENT";
  }
  return "UNKNOWN";
}

std::optional<ExperimentKind> kind_from_name(const std::string& name) {
  if (name == "MC_PER_ZERO") return ExperimentKind::kMcPerZero;
  if (name == "MC_DET_ZERO") return ExperimentKind::kMcDetZero;
  if (name == "MC_Z") return ExperimentKind::kMcZ;
  if (name == "EXACT_PER_ZERO") return ExperimentKind::kExactPerZero;
  if (name == "EXACT_Z") return ExperimentKind::kExactZ;
  if (name == "EXACT_PRK_DEFICIENT") return ExperimentKind::kExactPrkDeficient;
  return std::nullopt;
}

bool kind_is_exact(ExperimentKind k) {
  return k == ExperimentKind::kExactPerZero || k == ExperimentKind::kExactZ ||
         k == ExperimentKind::kExactPrkDeficient;
}

nlohmann::json ExperimentRecord::to_json() const {
  nlohmann::json j{
      {"v", v},
      {"kind", kind_name(kind)},
      {"q", q},
      {"n", n},
      {"samples", samples},
      {"hits", hits},
      {"estimate", estimate},
      {"workers", workers},
      {"wall_time_ms", wall_time_ms},
  };
  if (k > 0) j["k"] = k;
  if (!kind_is_exact(kind)) {
    j["stderr"] = stderr_value;
    j["seed"] = seed;
    j["rng_id"] = rng_id;
  }
  if (!method_counts.empty()) j["method_counts"] = method_counts;
  return j;
}

std::string ExperimentRecord::csv_header() {
  return "kind,q,n,k,samples,hits,estimate,stderr,seed";
}

std::string ExperimentRecord::csv_row() const {
  std::ostringstream os;
  os << kind_name(kind) << ',' << q << ',' << n << ',';
  if (k > 0) os << k;
  os << ',' << samples << ',' << hits << ',' << estimate << ',';
  if (!kind_is_exact(kind)) os << stderr_value;
  os << ',';
  if (!kind_is_exact(kind)) os << seed;
  return os.str();
}

Rational det_zero_probability_exact(int64_t q, size_t n) {
  using boost::multiprecision::cpp_int;
  Rational survive = 1;
  cpp_int qn = boost::multiprecision::pow(cpp_int(q), static_cast<unsigned>(n));
  cpp_int qi = 1;  // q^i
  for (size_t i = 0; i < n; ++i) {
    survive *= Rational(qn - qi, qn);
    qi *= q;
  }
  return 1 - survive;
}

Rational sc0_probability_exact(int64_t q, size_t n, size_t k) {
  using boost::multiprecision::cpp_int;
  cpp_int qn = boost::multiprecision::pow(cpp_int(q), static_cast<unsigned>(n));
  Rational base(qn - 1, qn), no_zero_col = 1;
  for (size_t i = 0; i < k; ++i) no_zero_col *= base;
  return 1 - no_zero_col;
}

ExperimentRecord exact_count_per_zero(const FqPtr& field, size_t n,
                                      int workers, uint64_t cell_budget) {
  auto start = Clock::now();
  uint64_t total =
      checked_cell_total(field, n * n, cell_budget, "exact_count_per_zero");
  uint64_t hits = count_over_all_matrices(
      field, n, n, total, workers,
      [](const Matrix& m) { return per_ryser(m).is_zero(); });
  ExperimentRecord rec;
  rec.kind = ExperimentKind::kExactPerZero;
  rec.q = field->order();
  rec.n = n;
  rec.samples = total;
  rec.hits = hits;
  rec.estimate = static_cast<double>(hits) / static_cast<double>(total);
  rec.workers = workers;
  rec.wall_time_ms = elapsed_ms(start);
  return rec;
}

ExperimentRecord exact_count_prk_deficient(const FqPtr& field, size_t n,
                                           size_t k, int workers,
                                           uint64_t cell_budget,
                                           ExperimentKind kind) {
  if (!kind_is_exact(kind) || kind == ExperimentKind::kExactPerZero)
    throw std::invalid_argument("exact_count_prk_deficient: wrong kind tag");
  if (n < k)
    throw std::invalid_argument("exact_count_prk_deficient: need n >= k");
  auto start = Clock::now();
  uint64_t total = checked_cell_total(field, n * k, cell_budget,
                                      "exact_count_prk_deficient");
  uint64_t hits = count_over_all_matrices(
      field, n, k, total, workers,
      [](const Matrix& m) { return !has_full_prk(m).full; });
  ExperimentRecord rec;
  rec.kind = kind;
  rec.q = field->order();
  rec.n = n;
  rec.k = k;
  rec.samples = total;
  rec.hits = hits;
  rec.estimate = static_cast<double>(hits) / static_cast<double>(total);
  rec.workers = workers;
  rec.wall_time_ms = elapsed_ms(start);
  return rec;
}

CofactorIdentityReport cofactor_identity_check(const FqPtr& field, size_t n,
                                               int workers,
                                               uint64_t cell_budget) {
  if (n < 2)
    throw std::invalid_argument("cofactor_identity_check: need n >= 2");
  CofactorIdentityReport report;
  report.square = exact_count_per_zero(field, n, workers, cell_budget);
  report.rect = exact_count_prk_deficient(field, n, n - 1, workers,
                                          cell_budget);
  int64_t q = field->order();
  report.lhs = Rational(report.square.hits, report.square.samples);
  report.rhs = Rational(1, q) + Rational(q - 1, q) * Rational(
                                    report.rect.hits, report.rect.samples);
  report.holds = report.lhs == report.rhs;
  return report;
}

ExperimentRecord mc_estimate(const McParams& params) {
  if (params.samples == 0)
    throw std::invalid_argument("mc_estimate: samples must be positive");
  if (params.kind == ExperimentKind::kMcZ) {
    if (params.k == 0 || params.n < params.k)
      throw std::invalid_argument("mc_estimate: MC_Z needs n >= k >= 1");
  } else if (params.kind != ExperimentKind::kMcPerZero &&
             params.kind != ExperimentKind::kMcDetZero) {
    throw std::invalid_argument("mc_estimate: not a Monte-Carlo kind");
  }
  auto [p, m] = factor_prime_power(params.q);
  FqPtr field = Fq::make(p, m);
  size_t cols = params.kind == ExperimentKind::kMcZ ? params.k : params.n;
  if (params.kind != ExperimentKind::kMcZ && params.n > kRyserMaxN)
    throw BudgetExceeded("mc_estimate: n exceeds the permanent budget");

  auto start = Clock::now();
  Rng master(params.seed);
  auto ranges = split_ranges(params.samples, params.workers);
  std::vector<uint64_t> counts(ranges.size(), 0);
  std::vector<std::map<std::string, uint64_t>> methods(ranges.size());

  auto run = [&](size_t w) {
    Matrix mat(field, params.n, cols);
    uint64_t local = 0;
    for (uint64_t s = ranges[w].first; s < ranges[w].second; ++s) {
      // Per-sample substream keyed by the sample index alone: hit counts
      // are identical for any worker count.
      Rng rng = master.substream(s);
      for (size_t i = 0; i < params.n; ++i)
        for (size_t j = 0; j < cols; ++j) mat.set(i, j, field->sample(rng));
      bool hit = false;
      switch (params.kind) {
        case ExperimentKind::kMcPerZero:
          hit = per_ryser(mat).is_zero();
          break;
        case ExperimentKind::kMcDetZero:
          hit = rref(mat).rank < params.n;
          break;
        case ExperimentKind::kMcZ: {
          if (params.k >= 3) {
            switch (certify_full_prk(mat)) {
              case CertifyVerdict::kCertifiedFull:
                ++methods[w]["certified"];
                hit = false;
                break;
              case CertifyVerdict::kZeroColumn:
                ++methods[w]["zero_column"];
                hit = true;
                break;
              case CertifyVerdict::kInconclusive:
                ++methods[w]["fallback"];
                hit = !has_full_prk(mat).full;
                break;
            }
          } else {
            ++methods[w]["fallback"];
            hit = !has_full_prk(mat).full;
          }
          break;
        }
        default:
          break;
      }
      if (hit) ++local;
    }
    counts[w] = local;
  };

  std::vector<std::thread> pool;
  for (size_t w = 1; w < ranges.size(); ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& th : pool) th.join();

  ExperimentRecord rec;
  rec.kind = params.kind;
  rec.q = params.q;
  rec.n = params.n;
  rec.k = params.kind == ExperimentKind::kMcZ ? params.k : 0;
  rec.samples = params.samples;
  for (uint64_t c : counts) rec.hits += c;
  rec.estimate =
      static_cast<double>(rec.hits) / static_cast<double>(rec.samples);
  rec.stderr_value = binomial_stderr(rec.hits, rec.samples);
  rec.seed = params.seed;
  rec.rng_id = Rng::kAlgorithmId;
  rec.workers = params.workers;
  for (auto& mm : methods)
    for (auto& [name, count] : mm) rec.method_counts[name] += count;
  rec.wall_time_ms = elapsed_ms(start);
  return rec;
}

void append_jsonl(const std::string& path, const ExperimentRecord& rec) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for append");
  out << rec.to_json().dump() << '\n';
}

void append_csv(const std::string& path, const ExperimentRecord& rec) {
  bool fresh = !std::filesystem::exists(path) ||
               std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for append");
  if (fresh) out << ExperimentRecord::csv_header() << '\n';
  out << rec.csv_row() << '\n';
}

}  // namespace permrank
