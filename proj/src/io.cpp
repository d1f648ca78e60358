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

#include "permrank/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace permrank {
namespace {

// All whitespace-separated tokens with comments stripped.
std::vector<std::string> tokenize(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

int64_t to_int(const std::string& tok, const char* what) {
  try {
    size_t pos = 0;
    int64_t v = std::stoll(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("expected integer for ") + what + ", got '" +
                     tok + "'");
  }
}

}  // namespace

Matrix read_matrix(std::istream& in) {
  auto tokens = tokenize(in);
  if (tokens.size() < 3)
    throw ParseError("missing header line 'q n k'");
  int64_t q = to_int(tokens[0], "q");
  int64_t n = to_int(tokens[1], "n");
  int64_t k = to_int(tokens[2], "k");
  if (n < 0 || k < 0) throw ParseError("matrix dimensions must be >= 0");
  auto [p, m] = factor_prime_power(q);
  FqPtr field = Fq::make(p, m);
  size_t need = static_cast<size_t>(n) * static_cast<size_t>(k);
  if (tokens.size() != 3 + need)
    throw ParseError("expected " + std::to_string(need) + " entries, found " +
                     std::to_string(tokens.size() - 3));
  Matrix out(field, static_cast<size_t>(n), static_cast<size_t>(k));
  for (size_t i = 0; i < need; ++i) {
    int64_t v = to_int(tokens[3 + i], "matrix entry");
    if (v < 0 || v >= q)
      throw ParseError("entry " + std::to_string(v) + " out of range [0, " +
                       std::to_string(q) + ")");
    out.set(i / k, i % k, static_cast<uint32_t>(v));
  }
  return out;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return read_matrix(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.field()->order() << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m.at(i, j);
    }
    out << '\n';
  }
}

}  // namespace permrank
