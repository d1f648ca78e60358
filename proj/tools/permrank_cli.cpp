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

// Command-line front end. Exit codes: 0 success, 1 verification violation,
// 2 usage or input errors (including exceeded budgets). All indices in the
// output are 0-based.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "permrank/experiments.hpp"
#include "permrank/io.hpp"
#include "permrank/permanent.hpp"
#include "permrank/permanull.hpp"
#include "permrank/wellspread.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";

using namespace permrank;

void print_json_header(const std::vector<std::string>& args) {
  nlohmann::json j{{"tool_version", kToolVersion},
                   {"rng_id", Rng::kAlgorithmId},
                   {"args", args}};
  std::cout << j.dump() << '\n';
}

FqPtr field_from_q(int64_t q) {
  auto [p, m] = factor_prime_power(q);
  return Fq::make(p, m);
}

Subspace subspace_from_file(const std::string& path) {
  return Subspace::span_rows(read_matrix_file(path));
}

void print_indices(const char* label, const std::vector<size_t>& idx) {
  std::cout << label;
  for (size_t i : idx) std::cout << ' ' << i;
  std::cout << '\n';
}

void print_verdict(const PermanullVerdict& verdict, const char* yes,
                   const char* no) {
  std::cout << (verdict.permanull ? yes : no) << '\n';
  if (verdict.failing_alpha) {
    std::cout << "witness_alpha";
    for (size_t t : verdict.failing_alpha->entries) std::cout << ' ' << t;
    std::cout << '\n';
  }
  if (verdict.counterexample) {
    std::cout << "witness_matrix\n";
    write_matrix(std::cout, *verdict.counterexample);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"permanents and permanental rank over odd finite fields"};
  app.require_subcommand(1);
  bool json_header = false;
  app.add_flag("--json", json_header,
               "print a JSON header line before any results");

  std::string file, file2;
  int64_t q_flag = 0;
  std::string method = "poly";
  std::vector<std::string> files;
  std::string theorem, kind_str;
  int64_t q = 3;
  size_t n = 0, k = 0, d = 1;
  uint64_t samples = 0, seed = 0;
  int workers = 1;
  uint64_t max_states = kDefaultStateBudget;
  uint64_t max_cells = kDefaultCellBudget;
  std::string out_path, csv_path;

  auto* per_cmd = app.add_subcommand("per", "permanent of a square matrix");
  per_cmd->add_option("file", file, "matrix file")->required();
  per_cmd->add_option("--q", q_flag, "expected field order (validated)");

  auto* prk_cmd = app.add_subcommand("prk", "permanental rank with witness");
  prk_cmd->add_option("file", file, "matrix file")->required();

  auto* null_cmd = app.add_subcommand(
      "nullcheck", "is the row span of the file a permanull subspace");
  null_cmd->add_option("file", file, "spanning-set file")->required();
  null_cmd->add_option("--method", method, "poly (default) or brute")
      ->check(CLI::IsMember({"poly", "brute"}));

  auto* joint_cmd = app.add_subcommand(
      "joint", "are n subspaces of F^n jointly permanull");
  joint_cmd->add_option("files", files, "one spanning-set file per subspace")
      ->required();

  auto* ws_cmd = app.add_subcommand(
      "wellspread", "greedy well-spread partition of the rows");
  ws_cmd->add_option("file", file, "matrix file")->required();

  auto* cert_cmd = app.add_subcommand(
      "certify", "permanent-free certificate of full permanental rank");
  cert_cmd->add_option("file", file, "matrix file")->required();

  auto* verify_cmd =
      app.add_subcommand("verify", "exhaustive theorem verification");
  verify_cmd->add_option("--theorem", theorem, "c1, manyfriends, charthreshold")
      ->required()
      ->check(CLI::IsMember({"c1", "manyfriends", "charthreshold"}));
  verify_cmd->add_option("--q", q, "field order")->required();
  verify_cmd->add_option("--n", n, "ambient dimension")->required();
  verify_cmd->add_option("--d", d, "codimension (charthreshold only)");
  verify_cmd->add_option("--workers", workers, "worker threads");
  verify_cmd->add_option("--max-states", max_states,
                         "enumeration budget on q^n");

  auto* mc_cmd = app.add_subcommand("mc", "Monte-Carlo estimation");
  mc_cmd->add_option("--kind", kind_str, "per_zero, det_zero, or z")
      ->required()
      ->check(CLI::IsMember({"per_zero", "det_zero", "z"}));
  mc_cmd->add_option("--q", q, "field order")->required();
  mc_cmd->add_option("--n", n, "rows")->required();
  mc_cmd->add_option("--k", k, "columns (kind z)");
  mc_cmd->add_option("--samples", samples, "sample count")->required();
  mc_cmd->add_option("--seed", seed, "rng seed");
  mc_cmd->add_option("--workers", workers, "worker threads");
  mc_cmd->add_option("--out", out_path, "append the record to a JSONL file");
  mc_cmd->add_option("--csv", csv_path, "append a summary row to a CSV file");

  auto* exact_cmd = app.add_subcommand("exact", "exhaustive counting");
  exact_cmd->add_option("--kind", kind_str, "per_zero, z, or prk_deficient")
      ->required()
      ->check(CLI::IsMember({"per_zero", "z", "prk_deficient"}));
  exact_cmd->add_option("--q", q, "field order")->required();
  exact_cmd->add_option("--n", n, "rows")->required();
  exact_cmd->add_option("--k", k, "columns (kinds z, prk_deficient)");
  exact_cmd->add_option("--workers", workers, "worker threads");
  exact_cmd->add_option("--max-cells", max_cells,
                        "budget on the number of enumerated matrices");
  exact_cmd->add_option("--out", out_path, "append the record to a JSONL file");
  exact_cmd->add_option("--csv", csv_path, "append a summary row to a CSV file");

  auto* puv_cmd = app.add_subcommand(
      "puv", "dimension of the paired 2x2-subpermanent image span in F^3");
  puv_cmd->add_option("file_u", file, "first subspace file")->required();
  puv_cmd->add_option("file_v", file2, "second subspace file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (json_header) {
    std::vector<std::string> args(argv + 1, argv + argc);
    print_json_header(args);
  }

  if (per_cmd->parsed()) {
    Matrix m = read_matrix_file(file);
    if (q_flag != 0 && q_flag != m.field()->order())
      throw std::invalid_argument("--q " + std::to_string(q_flag) +
                                  " does not match the file's field GF(" +
                                  std::to_string(m.field()->order()) + ")");
    std::cout << per_ryser(m).value() << '\n';
  } else if (prk_cmd->parsed()) {
    PrkResult r = prk(read_matrix_file(file));
    std::cout << r.value << '\n';
    if (r.witness) {
      print_indices("rows", r.witness->first);
      print_indices("cols", r.witness->second);
    }
  } else if (null_cmd->parsed()) {
    Subspace s = subspace_from_file(file);
    PermanullVerdict verdict =
        method == "brute" ? is_permanull_brute(s) : is_permanull_poly(s);
    print_verdict(verdict, "permanull", "not_permanull");
  } else if (joint_cmd->parsed()) {
    std::vector<Subspace> list;
    for (const auto& f : files) list.push_back(subspace_from_file(f));
    print_verdict(is_jointly_permanull_brute(list), "jointly_permanull",
                  "not_jointly_permanull");
  } else if (ws_cmd->parsed()) {
    PartitionCertificate cert = greedy_partition(read_matrix_file(file));
    nlohmann::json j{{"success", cert.success},
                     {"parts", cert.parts},
                     {"dims", cert.dims},
                     {"ineffective_count", cert.ineffective_count}};
    std::cout << j.dump() << '\n';
  } else if (cert_cmd->parsed()) {
    switch (certify_full_prk(read_matrix_file(file))) {
      case CertifyVerdict::kCertifiedFull: std::cout << "CERTIFIED_FULL\n"; break;
      case CertifyVerdict::kZeroColumn: std::cout << "ZERO_COLUMN\n"; break;
      case CertifyVerdict::kInconclusive: std::cout << "INCONCLUSIVE\n"; break;
    }
  } else if (verify_cmd->parsed()) {
    FqPtr f = field_from_q(q);
    VerifyReport report;
    if (theorem == "c1")
      report = verify_c1_classification(f, n, max_states);
    else if (theorem == "manyfriends")
      report = verify_manyfriends(f, n, workers, max_states);
    else
      report = verify_char_threshold(f, n, d, max_states);
    nlohmann::json j{{"theorem", report.theorem},
                     {"params", report.params},
                     {"total_enumerated", report.total_enumerated},
                     {"passing", report.passing},
                     {"violations", report.violations}};
    if (!report.findings.empty()) j["findings"] = report.findings;
    std::cout << j.dump() << '\n';
    if (!report.ok) return 1;
  } else if (mc_cmd->parsed()) {
    McParams params;
    params.kind = kind_str == "per_zero"  ? ExperimentKind::kMcPerZero
                  : kind_str == "det_zero" ? ExperimentKind::kMcDetZero
                                           : ExperimentKind::kMcZ;
    params.q = q;
    params.n = n;
    params.k = k;
    params.samples = samples;
    params.seed = seed;
    params.workers = workers;
    ExperimentRecord rec = mc_estimate(params);
    std::cout << rec.to_json().dump() << '\n';
    if (!out_path.empty()) append_jsonl(out_path, rec);
    if (!csv_path.empty()) append_csv(csv_path, rec);
  } else if (exact_cmd->parsed()) {
    FqPtr f = field_from_q(q);
    ExperimentRecord rec;
    if (kind_str == "per_zero") {
      rec = exact_count_per_zero(f, n, workers, max_cells);
    } else {
      if (k == 0)
        throw std::invalid_argument("exact --kind " + kind_str +
                                    " requires --k");
      rec = exact_count_prk_deficient(
          f, n, k, workers, max_cells,
          kind_str == "z" ? ExperimentKind::kExactZ
                          : ExperimentKind::kExactPrkDeficient);
    }
    std::cout << rec.to_json().dump() << '\n';
    if (!out_path.empty()) append_jsonl(out_path, rec);
    if (!csv_path.empty()) append_csv(csv_path, rec);
  } else if (puv_cmd->parsed()) {
    std::cout << puv_dimension(subspace_from_file(file),
                               subspace_from_file(file2))
              << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
