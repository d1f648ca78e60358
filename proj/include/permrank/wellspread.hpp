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

#include <cstddef>
#include <utility>
#include <vector>

#include "permrank/linalg.hpp"

namespace permrank {

struct PartitionStep {
  int part;         // part the row joined (ineffective rows land in part 0)
  bool effective;   // true iff the row raised that part's span dimension
};

/// Result of the greedy well-spreading pass over the rows of an n x k
/// matrix. parts[i] holds row indices in insertion order; dims[i] is the
/// rank of those rows; success means every part spans dimension >= k-1.
struct PartitionCertificate {
  std::vector<std::vector<size_t>> parts;
  std::vector<size_t> dims;
  size_t ineffective_count = 0;
  bool success = false;
  std::vector<PartitionStep> steps;  // one entry per row, in row order
};

/// Greedy partition of rows into k parts, each aiming for span dimension
/// k-1. Row l goes to the least active part whose current span misses it;
/// a part deactivates once its dimension reaches k-1; rows inside every
/// active span are recorded ineffective and appended to part 0.
PartitionCertificate greedy_partition(const Matrix& x);

enum class CertifyVerdict { kCertifiedFull, kZeroColumn, kInconclusive };

/// Permanent-free certificate of full permanental rank for n x k matrices,
/// n >= k >= 3: a successful well-spread partition together with no zero
/// column forces some k x k subpermanent to be nonzero. ZERO_COLUMN refutes
/// full rank outright; INCONCLUSIVE decides nothing.
CertifyVerdict certify_full_prk(const Matrix& x);

/// Simple bipartite graph on parts A and B; edges are deduplicated pairs
/// (a, b) with a in [a_size), b in [b_size).
struct BipartiteGraph {
  size_t a_size = 0;
  size_t b_size = 0;
  std::vector<std::pair<size_t, size_t>> edges;

  static BipartiteGraph make(size_t a_size, size_t b_size,
                             std::vector<std::pair<size_t, size_t>> edges);
  static BipartiteGraph complete(size_t a_size, size_t b_size);

  bool has_edge(size_t a, size_t b) const;
  size_t degree_a(size_t a) const;
  size_t degree_b(size_t b) const;
  bool is_complete() const;
  bool has_isolated_vertex() const;
};

/// G with one A-vertex and one B-vertex removed (indices above the removed
/// ones shift down).
BipartiteGraph remove_pair(const BipartiteGraph& g, size_t a, size_t b);

/// True when exactly one B-vertex has positive degree (a "B-star").
bool is_b_star(const BipartiteGraph& g);

/// Picks a vertex pair (a, b) whose removal leaves a graph that is neither
/// edgeless nor a B-star, with b not the unique neighbour of a. Requires
/// |A| >= 4, |B| >= 4 and no isolated vertices. Rule: in a complete graph
/// any pair works (least indices returned); otherwise b is a minimum-degree
/// B-vertex and a a minimum-degree vertex among the non-neighbours of b,
/// ties broken by least index.
std::pair<size_t, size_t> star_avoid(const BipartiteGraph& g);

}  // namespace permrank
