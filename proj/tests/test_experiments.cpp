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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "permrank/experiments.hpp"
#include "permrank/linalg.hpp"
#include "permrank/permanent.hpp"

using namespace permrank;

namespace {

FqPtr f3() { return Fq::make(3); }

// Walks all rows x cols matrices over GF(q) and counts those satisfying the
// predicate. Independent of the library's exhaustive counters.
template <typename Pred>
uint64_t count_matrices(const FqPtr& f, size_t rows, size_t cols, Pred pred) {
  size_t cells = rows * cols;
  std::vector<uint32_t> digits(cells, 0);
  Matrix m(f, rows, cols);
  uint64_t count = 0;
  while (true) {
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) m.set(i, j, digits[i * cols + j]);
    if (pred(m)) ++count;
    size_t i = 0;
    while (i < cells && ++digits[i] == f->order()) digits[i++] = 0;
    if (i == cells) break;
  }
  return count;
}

uint64_t census_formula(int64_t q, size_t n) {
  // Expected number of n x 2 matrices with no nonzero 2 x 2 subpermanent:
  // one term per degenerate shape of the classification.
  uint64_t qn = 1;
  for (size_t i = 0; i < n; ++i) qn *= static_cast<uint64_t>(q);
  uint64_t u = static_cast<uint64_t>(q) - 1;
  return (2 * qn - 1) + n * u * u + (n * (n - 1) / 2) * u * u * u;
}

bool singular(const Matrix& m) { return rref(m).rank < m.rows(); }

}  // namespace

TEST_CASE("experiment kind names round trip") {
  for (ExperimentKind k :
       {ExperimentKind::kMcPerZero, ExperimentKind::kMcDetZero,
        ExperimentKind::kMcZ, ExperimentKind::kExactPerZero,
        ExperimentKind::kExactZ, ExperimentKind::kExactPrkDeficient}) {
    auto back = kind_from_name(kind_name(k));
    REQUIRE(back.has_value());
    CHECK(*back == k);
  }
  CHECK(kind_name(ExperimentKind::kMcPerZero) == "MC_PER_ZERO");
  CHECK_FALSE(kind_from_name("bogus").has_value());
  CHECK(kind_is_exact(ExperimentKind::kExactZ));
  CHECK_FALSE(kind_is_exact(ExperimentKind::kMcZ));
}

TEST_CASE("closed-form singular probability") {
  CHECK(det_zero_probability_exact(3, 1) == Rational(1, 3));
  CHECK(det_zero_probability_exact(3, 2) == Rational(33, 81));

  SUBCASE("matches exhaustive rank counts") {
    for (int64_t q : {int64_t{3}, int64_t{5}}) {
      auto f = Fq::make(q);
      for (size_t n = 1; n <= (q == 3 ? 3u : 2u); ++n) {
        uint64_t total = 1;
        for (size_t i = 0; i < n * n; ++i) total *= q;
        uint64_t sing = count_matrices(f, n, n, singular);
        CHECK(det_zero_probability_exact(q, n) == Rational(sing, total));
      }
    }
  }
}

TEST_CASE("closed-form zero-column probability") {
  CHECK(sc0_probability_exact(3, 2, 2) == Rational(17, 81));
  CHECK(sc0_probability_exact(3, 1, 3) == Rational(19, 27));
  SUBCASE("matches exhaustive counts") {
    auto f = f3();
    uint64_t with_zero_col = count_matrices(
        f, 2, 2, [](const Matrix& m) { return m.zero_column().has_value(); });
    CHECK(sc0_probability_exact(3, 2, 2) == Rational(with_zero_col, 81));
  }
}

TEST_CASE("exhaustive permanent-zero counts") {
  ExperimentRecord r1 = exact_count_per_zero(f3(), 1);
  CHECK(r1.hits == 1);
  CHECK(r1.samples == 3);
  CHECK(r1.kind == ExperimentKind::kExactPerZero);
  CHECK(r1.k == 0);

  ExperimentRecord r2 = exact_count_per_zero(f3(), 2);
  CHECK(r2.hits == 33);
  CHECK(r2.samples == 81);
  CHECK(r2.estimate == doctest::Approx(33.0 / 81.0));
  // For 2 x 2 the permanent-zero and determinant-zero counts coincide
  // (negate one off-diagonal entry to map one event onto the other).
  CHECK(r2.hits == count_matrices(f3(), 2, 2, singular));

  ExperimentRecord r3 = exact_count_per_zero(f3(), 3, /*workers=*/4);
  CHECK(r3.hits == 8163);
  CHECK(r3.samples == 19683);
  ExperimentRecord r3s = exact_count_per_zero(f3(), 3, /*workers=*/1);
  CHECK(r3s.hits == r3.hits);

  CHECK_THROWS_AS(exact_count_per_zero(Fq::make(5), 3, 1, /*cell_budget=*/100),
                  BudgetExceeded);
}

TEST_CASE("exhaustive rank-deficiency counts match the census formula") {
  for (size_t n : {size_t{2}, size_t{3}, size_t{4}}) {
    ExperimentRecord r = exact_count_prk_deficient(f3(), n, 2);
    CHECK(r.hits == census_formula(3, n));
    uint64_t total = 1;
    for (size_t i = 0; i < 2 * n; ++i) total *= 3;
    CHECK(r.samples == total);
    CHECK(r.kind == ExperimentKind::kExactPrkDeficient);
    CHECK(r.k == 2);
  }
  CHECK(census_formula(3, 2) == 33);
  CHECK(census_formula(3, 3) == 89);
  CHECK(census_formula(3, 4) == 225);

  SUBCASE("census formula against a direct subpermanent scan") {
    for (int64_t q : {int64_t{3}, int64_t{5}}) {
      auto f = Fq::make(q);
      for (size_t n : {size_t{2}, size_t{3}}) {
        uint64_t direct = count_matrices(
            f, n, 2, [](const Matrix& m) { return !has_full_prk(m).full; });
        CHECK(direct == census_formula(q, n));
      }
    }
  }

  SUBCASE("EXACT_Z is the same count under another tag") {
    ExperimentRecord z =
        exact_count_prk_deficient(f3(), 3, 2, 1, kDefaultCellBudget,
                                  ExperimentKind::kExactZ);
    CHECK(z.hits == 89);
    CHECK(z.kind == ExperimentKind::kExactZ);
  }

  SUBCASE("k = n reduces to the permanent-zero count") {
    ExperimentRecord square = exact_count_prk_deficient(f3(), 3, 3);
    CHECK(square.hits == 8163);
  }

  SUBCASE("validation") {
    CHECK_THROWS_AS(exact_count_prk_deficient(f3(), 2, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        exact_count_prk_deficient(f3(), 3, 2, 1, kDefaultCellBudget,
                                  ExperimentKind::kMcPerZero),
        std::invalid_argument);
  }
}

TEST_CASE("cofactor identity holds exactly") {
  for (auto [q, n] : std::vector<std::pair<int64_t, size_t>>{
           {3, 2}, {3, 3}, {5, 2}}) {
    CofactorIdentityReport rep =
        cofactor_identity_check(Fq::make(q), n, /*workers=*/2);
    CHECK(rep.holds);
    CHECK(rep.lhs == rep.rhs);
    CHECK(rep.lhs == Rational(rep.square.hits, rep.square.samples));
    Rational rect(rep.rect.hits, rep.rect.samples);
    CHECK(rep.rhs == Rational(1, q) + (Rational(1) - Rational(1, q)) * rect);
  }
  CofactorIdentityReport r32 = cofactor_identity_check(f3(), 3);
  CHECK(r32.square.hits == 8163);
  CHECK(r32.rect.hits == 89);
  CHECK_THROWS_AS(cofactor_identity_check(f3(), 1), std::invalid_argument);
}

TEST_CASE("zero-column probability lower-bounds the rank-deficiency rate") {
  for (auto [n, k] : std::vector<std::pair<size_t, size_t>>{
           {2, 2}, {3, 2}, {3, 3}}) {
    ExperimentRecord z = exact_count_prk_deficient(f3(), n, k);
    CHECK(sc0_probability_exact(3, n, k) <= Rational(z.hits, z.samples));
  }
}

TEST_CASE("Monte-Carlo estimates are reproducible and worker-independent") {
  McParams params;
  params.kind = ExperimentKind::kMcPerZero;
  params.q = 3;
  params.n = 3;
  params.samples = 20000;
  params.seed = 42;

  ExperimentRecord a = mc_estimate(params);
  ExperimentRecord b = mc_estimate(params);
  CHECK(a.hits == b.hits);
  CHECK(a.estimate == b.estimate);
  CHECK(a.stderr_value == b.stderr_value);
  CHECK(a.rng_id == "splitmix64-ctr-v1");
  CHECK(a.seed == 42);
  CHECK(a.v == 1);

  for (int workers : {2, 8}) {
    McParams p = params;
    p.workers = workers;
    ExperimentRecord r = mc_estimate(p);
    CHECK(r.hits == a.hits);
    CHECK(r.workers == workers);
  }

  McParams z;
  z.kind = ExperimentKind::kMcZ;
  z.q = 3;
  z.n = 5;
  z.k = 3;
  z.samples = 5000;
  z.seed = 7;
  ExperimentRecord z1 = mc_estimate(z);
  z.workers = 4;
  ExperimentRecord z4 = mc_estimate(z);
  CHECK(z1.hits == z4.hits);
  CHECK(z1.method_counts == z4.method_counts);
}

TEST_CASE("Monte-Carlo estimates agree with exact values") {
  auto within = [](const ExperimentRecord& r, double truth, double sigmas) {
    return std::abs(r.estimate - truth) <= sigmas * r.stderr_value;
  };

  McParams per2;
  per2.kind = ExperimentKind::kMcPerZero;
  per2.q = 3;
  per2.n = 2;
  per2.samples = 40000;
  per2.seed = 1;
  CHECK(within(mc_estimate(per2), 33.0 / 81.0, 4));

  McParams det3;
  det3.kind = ExperimentKind::kMcDetZero;
  det3.q = 3;
  det3.n = 3;
  det3.samples = 40000;
  det3.seed = 2;
  double det3_truth =
      static_cast<double>(det_zero_probability_exact(3, 3).convert_to<double>());
  CHECK(within(mc_estimate(det3), det3_truth, 4));

  McParams z22;
  z22.kind = ExperimentKind::kMcZ;
  z22.q = 3;
  z22.n = 2;
  z22.k = 2;
  z22.samples = 40000;
  z22.seed = 3;
  ExperimentRecord zr = mc_estimate(z22);
  CHECK(within(zr, 33.0 / 81.0, 4));
  // k < 3 has no certificate path, so every sample is a fallback.
  CHECK(zr.method_counts.at("fallback") == zr.samples);

  McParams z53;
  z53.kind = ExperimentKind::kMcZ;
  z53.q = 3;
  z53.n = 5;
  z53.k = 3;
  z53.samples = 30000;
  z53.seed = 4;
  ExperimentRecord z53r = mc_estimate(z53);
  uint64_t decided = 0;
  for (const auto& [name, cnt] : z53r.method_counts) {
    CHECK((name == "certified" || name == "zero_column" || name == "fallback"));
    decided += cnt;
  }
  CHECK(decided == z53r.samples);
  // Exhaustive truth over the 3^15 cells is affordable once here.
  ExperimentRecord exact53 =
      exact_count_prk_deficient(f3(), 5, 3, /*workers=*/4);
  double truth53 = exact53.estimate;
  CHECK(within(z53r, truth53, 4));
}

TEST_CASE("Monte-Carlo record invariants and validation") {
  McParams params;
  params.kind = ExperimentKind::kMcDetZero;
  params.q = 9;
  params.n = 2;
  params.samples = 5000;
  params.seed = 11;
  ExperimentRecord r = mc_estimate(params);
  CHECK(r.estimate ==
        static_cast<double>(r.hits) / static_cast<double>(r.samples));
  double p = r.estimate;
  CHECK(r.stderr_value ==
        doctest::Approx(std::sqrt(p * (1 - p) / r.samples)));
  CHECK(r.q == 9);
  CHECK(r.k == 0);

  McParams bad = params;
  bad.samples = 0;
  CHECK_THROWS_AS(mc_estimate(bad), std::invalid_argument);

  McParams badz;
  badz.kind = ExperimentKind::kMcZ;
  badz.q = 3;
  badz.n = 2;
  badz.k = 3;
  badz.samples = 10;
  CHECK_THROWS_AS(mc_estimate(badz), std::invalid_argument);
  badz.k = 0;
  CHECK_THROWS_AS(mc_estimate(badz), std::invalid_argument);

  McParams exact_kind = params;
  exact_kind.kind = ExperimentKind::kExactPerZero;
  CHECK_THROWS_AS(mc_estimate(exact_kind), std::invalid_argument);

  McParams huge = params;
  huge.kind = ExperimentKind::kMcPerZero;
  huge.n = 30;
  CHECK_THROWS_AS(mc_estimate(huge), BudgetExceeded);
}

TEST_CASE("records serialize to JSON and CSV") {
  McParams params;
  params.kind = ExperimentKind::kMcZ;
  params.q = 3;
  params.n = 4;
  params.k = 3;
  params.samples = 100;
  params.seed = 5;
  ExperimentRecord mc = mc_estimate(params);

  nlohmann::json j = mc.to_json();
  CHECK(j.at("v") == 1);
  CHECK(j.at("kind") == "MC_Z");
  CHECK(j.at("q") == 3);
  CHECK(j.at("n") == 4);
  CHECK(j.at("k") == 3);
  CHECK(j.at("samples") == 100);
  CHECK(j.at("hits") == mc.hits);
  CHECK(j.at("seed") == 5);
  CHECK(j.at("rng_id") == "splitmix64-ctr-v1");
  CHECK(j.contains("stderr"));
  CHECK(j.contains("method_counts"));

  ExperimentRecord exact = exact_count_per_zero(f3(), 2);
  nlohmann::json je = exact.to_json();
  CHECK_FALSE(je.contains("k"));
  CHECK_FALSE(je.contains("stderr"));
  CHECK_FALSE(je.contains("seed"));
  CHECK_FALSE(je.contains("rng_id"));
  CHECK_FALSE(je.contains("method_counts"));

  CHECK(ExperimentRecord::csv_header() ==
        "kind,q,n,k,samples,hits,estimate,stderr,seed");
  std::string row = mc.csv_row();
  CHECK(row.rfind("MC_Z,3,4,3,100,", 0) == 0);
  CHECK(std::count(row.begin(), row.end(), ',') == 8);
  std::string erow = exact.csv_row();
  CHECK(erow.rfind("EXACT_PER_ZERO,3,2,,81,33,", 0) == 0);
  CHECK(std::count(erow.begin(), erow.end(), ',') == 8);
}

TEST_CASE("appending records to JSONL and CSV files") {
  std::string jsonl = "/tmp/permrank_test_records.jsonl";
  std::string csv = "/tmp/permrank_test_records.csv";
  std::remove(jsonl.c_str());
  std::remove(csv.c_str());

  ExperimentRecord rec = exact_count_per_zero(f3(), 2);
  append_jsonl(jsonl, rec);
  append_jsonl(jsonl, rec);
  append_csv(csv, rec);
  append_csv(csv, rec);

  std::ifstream jf(jsonl);
  std::string line;
  size_t json_lines = 0;
  while (std::getline(jf, line)) {
    nlohmann::json j = nlohmann::json::parse(line);
    CHECK(j.at("hits") == 33);
    ++json_lines;
  }
  CHECK(json_lines == 2);

  std::ifstream cf(csv);
  std::vector<std::string> lines;
  while (std::getline(cf, line)) lines.push_back(line);
  REQUIRE(lines.size() == 3);  // one header and two rows
  CHECK(lines[0] == ExperimentRecord::csv_header());
  CHECK(lines[1] == rec.csv_row());
  CHECK(lines[2] == rec.csv_row());

  std::remove(jsonl.c_str());
  std::remove(csv.c_str());
}
