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

#include "permrank/wellspread.hpp"

#include <algorithm>
#include <stdexcept>

namespace permrank {

PartitionCertificate greedy_partition(const Matrix& x) {
  size_t n = x.rows(), k = x.cols();
  if (k == 0) throw std::invalid_argument("greedy_partition: k must be >= 1");
  PartitionCertificate cert;
  cert.parts.assign(k, {});
  cert.dims.assign(k, 0);
  cert.steps.reserve(n);

  // Incremental spans kept as growing row lists; membership via Subspace.
  std::vector<std::vector<Vector>> gens(k);
  std::vector<Subspace> spans(k, Subspace::zero(x.field(), k));
  std::vector<bool> active(k, true);

  for (size_t l = 0; l < n; ++l) {
    Vector row = x.row(l);
    int chosen = -1;
    for (size_t i = 0; i < k; ++i) {
      if (!active[i]) continue;
      if (!spans[i].contains(row)) {
        chosen = static_cast<int>(i);
        break;
      }
    }
    if (chosen >= 0) {
      size_t i = static_cast<size_t>(chosen);
      cert.parts[i].push_back(l);
      gens[i].push_back(row);
      spans[i] = Subspace::span(gens[i], x.field(), k);
      cert.dims[i] = spans[i].dim();
      cert.steps.push_back({chosen, true});
      if (cert.dims[i] >= k - 1) active[i] = false;
    } else {
      // Row lies in every active span; park it in part 0. Part 0 may be
      // inactive already, so its dimension can still grow here.
      cert.parts[0].push_back(l);
      gens[0].push_back(row);
      spans[0] = Subspace::span(gens[0], x.field(), k);
      cert.dims[0] = spans[0].dim();
      cert.steps.push_back({0, false});
      ++cert.ineffective_count;
    }
  }
  cert.success =
      std::all_of(cert.dims.begin(), cert.dims.end(),
                  [&](size_t d) { return d + 1 >= k; });
  return cert;
}

CertifyVerdict certify_full_prk(const Matrix& x) {
  size_t n = x.rows(), k = x.cols();
  if (k < 3)
    throw std::invalid_argument("certify_full_prk: k must be >= 3");
  if (n < k)
    throw std::invalid_argument("certify_full_prk: need at least k rows");
  if (x.zero_column()) return CertifyVerdict::kZeroColumn;
  if (greedy_partition(x).success) return CertifyVerdict::kCertifiedFull;
  return CertifyVerdict::kInconclusive;
}

BipartiteGraph BipartiteGraph::make(
    size_t a_size, size_t b_size,
    std::vector<std::pair<size_t, size_t>> edges) {
  for (auto& [a, b] : edges)
    if (a >= a_size || b >= b_size)
      throw std::invalid_argument("edge endpoint out of range");
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return {a_size, b_size, std::move(edges)};
}

BipartiteGraph BipartiteGraph::complete(size_t a_size, size_t b_size) {
  std::vector<std::pair<size_t, size_t>> edges;
  edges.reserve(a_size * b_size);
  for (size_t a = 0; a < a_size; ++a)
    for (size_t b = 0; b < b_size; ++b) edges.emplace_back(a, b);
  return {a_size, b_size, std::move(edges)};
}

bool BipartiteGraph::has_edge(size_t a, size_t b) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

size_t BipartiteGraph::degree_a(size_t a) const {
  size_t d = 0;
  for (const auto& e : edges)
    if (e.first == a) ++d;
  return d;
}

size_t BipartiteGraph::degree_b(size_t b) const {
  size_t d = 0;
  for (const auto& e : edges)
    if (e.second == b) ++d;
  return d;
}

bool BipartiteGraph::is_complete() const {
  return edges.size() == a_size * b_size;
}

bool BipartiteGraph::has_isolated_vertex() const {
  for (size_t a = 0; a < a_size; ++a)
    if (degree_a(a) == 0) return true;
  for (size_t b = 0; b < b_size; ++b)
    if (degree_b(b) == 0) return true;
  return false;
}

BipartiteGraph remove_pair(const BipartiteGraph& g, size_t a, size_t b) {
  std::vector<std::pair<size_t, size_t>> edges;
  for (const auto& e : g.edges) {
    if (e.first == a || e.second == b) continue;
    edges.emplace_back(e.first > a ? e.first - 1 : e.first,
                       e.second > b ? e.second - 1 : e.second);
  }
  return BipartiteGraph::make(g.a_size - 1, g.b_size - 1, std::move(edges));
}

bool is_b_star(const BipartiteGraph& g) {
  size_t positive = 0;
  for (size_t b = 0; b < g.b_size; ++b)
    if (g.degree_b(b) > 0) ++positive;
  return positive == 1;
}

std::pair<size_t, size_t> star_avoid(const BipartiteGraph& g) {
  if (g.a_size < 4 || g.b_size < 4)
    throw std::invalid_argument("star_avoid: both sides need >= 4 vertices");
  if (g.has_isolated_vertex())
    throw std::invalid_argument("star_avoid: isolated vertex");
  if (g.is_complete()) return {0, 0};
  // b: least-index minimum-degree B-vertex. Non-completeness guarantees it
  // has a non-neighbour; a: least-index minimum-degree such non-neighbour.
  size_t b = 0, bdeg = g.degree_b(0);
  for (size_t cand = 1; cand < g.b_size; ++cand) {
    size_t d = g.degree_b(cand);
    if (d < bdeg) {
      b = cand;
      bdeg = d;
    }
  }
  size_t a = g.a_size, adeg = 0;
  for (size_t cand = 0; cand < g.a_size; ++cand) {
    if (g.has_edge(cand, b)) continue;
    size_t d = g.degree_a(cand);
    if (a == g.a_size || d < adeg) {
      a = cand;
      adeg = d;
    }
  }
  if (a == g.a_size)
    throw std::logic_error("star_avoid: minimum-degree vertex has full degree");
  return {a, b};
}

}  // namespace permrank
