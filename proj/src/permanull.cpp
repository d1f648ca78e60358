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

#include "permrank/permanull.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "permrank/common.hpp"
#include "permrank/permanent.hpp"

namespace permrank {
namespace {

std::string describe_subspace(const Subspace& s) {
  std::ostringstream os;
  os << "span{";
  for (size_t i = 0; i < s.dim(); ++i) {
    if (i) os << "; ";
    for (size_t j = 0; j < s.ambient(); ++j) {
      if (j) os << ",";
      os << s.basis().at(i, j);
    }
  }
  os << "}";
  return os.str();
}

bool is_coordinate_hyperplane(const Subspace& s) {
  auto c = trivial_coordinate(s);
  return c.has_value() && s.dim() + 1 == s.ambient();
}

}  // namespace

uint64_t n_alpha(const AlphaTuple& alpha) {
  std::vector<size_t> sorted = alpha.entries;
  std::sort(sorted.begin(), sorted.end());
  uint64_t prod = 1;
  size_t i = 0;
  while (i < sorted.size()) {
    size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    prod *= static_cast<uint64_t>(j - i + 1);
    i = j;
  }
  return prod;
}

FieldElement coefficient(const AlphaTuple& alpha, const Matrix& a_block) {
  size_t d = a_block.rows();
  if (alpha.entries.size() != d)
    throw std::invalid_argument("alpha length must equal codim");
  for (size_t t : alpha.entries)
    if (t >= a_block.cols())
      throw std::invalid_argument("alpha entry out of range");
  Matrix m_alpha(a_block.field(), d, d);
  for (size_t t = 0; t < d; ++t)
    for (size_t r = 0; r < d; ++r)
      m_alpha.set(r, t, a_block.at(r, alpha.entries[t]));
  const Fq& f = *a_block.field();
  uint32_t mult = f.from_int(static_cast<int64_t>(n_alpha(alpha) %
                                                  static_cast<uint64_t>(
                                                      f.characteristic())));
  return f.element(f.mul(mult, per_ryser(m_alpha).value()));
}

PermanullVerdict is_permanull_poly(const Subspace& s, PolyCheckOptions opts) {
  if (s.ambient() == 0)
    return {false, PermanullMethod::kPolynomial, AlphaTuple{}, std::nullopt};
  if (s.dim() == 0)
    return {true, PermanullMethod::kPolynomial, std::nullopt, std::nullopt};
  StandardForm sf = standard_form(s);
  size_t d = sf.codim, k = s.dim();
  if (d == 0) {
    // Full space: the polynomial is the permanent of the identity, never 0.
    return {false, PermanullMethod::kPolynomial, AlphaTuple{}, std::nullopt};
  }
  // Odometer over alpha in [k]^d; in symmetric mode only non-decreasing
  // tuples are visited (coefficients are invariant under permuting alpha).
  AlphaTuple alpha;
  alpha.entries.assign(d, 0);
  while (true) {
    if (!coefficient(alpha, sf.a_block).is_zero())
      return {false, PermanullMethod::kPolynomial, alpha, std::nullopt};
    size_t i = d;
    bool advanced = false;
    while (i-- > 0) {
      if (alpha.entries[i] + 1 < k) {
        ++alpha.entries[i];
        if (opts.nondecreasing_only)
          for (size_t j = i + 1; j < d; ++j)
            alpha.entries[j] = alpha.entries[i];
        else
          for (size_t j = i + 1; j < d; ++j) alpha.entries[j] = 0;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return {true, PermanullMethod::kPolynomial, std::nullopt, std::nullopt};
}

PermanullVerdict is_permanull_brute(const Subspace& s, BruteOptions opts) {
  if (s.ambient() == 0)
    return {false, PermanullMethod::kBruteForce, std::nullopt, std::nullopt};
  std::vector<Subspace> list(s.ambient(), s);
  auto verdict = is_jointly_permanull_brute(list, opts);
  verdict.method = PermanullMethod::kBruteForce;
  return verdict;
}

std::optional<size_t> trivial_coordinate(const Subspace& s) {
  for (size_t j = 0; j < s.ambient(); ++j) {
    bool all_zero = true;
    for (size_t i = 0; i < s.dim(); ++i)
      if (s.basis().at(i, j) != 0) {
        all_zero = false;
        break;
      }
    if (all_zero) return j;
  }
  return std::nullopt;
}

PermanullVerdict is_jointly_permanull_brute(const std::vector<Subspace>& list,
                                            BruteOptions opts) {
  if (list.empty())
    throw std::invalid_argument("jointly-permanull check needs a list");
  size_t n = list[0].ambient();
  if (n == 0 || list.size() != n)
    throw std::invalid_argument(
        "jointly-permanull check needs n subspaces of F^n");
  const FqPtr& field = list[0].field();
  for (const auto& s : list)
    if (s.ambient() != n || !s.field()->same_field(*field))
      throw std::invalid_argument("mixed ambients or fields in list");

  // A subspace of dimension 0 in the list makes every column choice zero.
  for (const auto& s : list)
    if (s.dim() == 0)
      return {true, PermanullMethod::kBruteForce, std::nullopt, std::nullopt};

  uint64_t tuples = 1;
  for (const auto& s : list) {
    tuples *= s.dim();
    if (tuples > opts.tuple_budget)
      throw BudgetExceeded("brute-force check exceeds the tuple budget");
  }

  // The missing-index shortcut is only justified when the list is one
  // subspace repeated, so its RREF pivots line up across columns.
  bool can_skip = opts.skip_missing_index;
  for (size_t i = 1; can_skip && i < n; ++i)
    if (!(list[i] == list[0])) can_skip = false;

  std::vector<size_t> pick(n, 0);
  Matrix m(field, n, n);
  while (true) {
    bool skip = false;
    if (can_skip) {
      // With every S_i equal and its basis in RREF, a tuple that omits some
      // basis index leaves that pivot row zero; such permanents vanish.
      std::vector<bool> used(list[0].dim(), false);
      for (size_t c = 0; c < n; ++c)
        if (pick[c] < used.size()) used[pick[c]] = true;
      skip = !std::all_of(used.begin(), used.end(), [](bool b) { return b; });
    }
    if (!skip) {
      for (size_t c = 0; c < n; ++c)
        for (size_t r = 0; r < n; ++r)
          m.set(r, c, list[c].basis().at(pick[c], r));
      if (!per_ryser(m).is_zero())
        return {false, PermanullMethod::kBruteForce, std::nullopt, m};
    }
    size_t i = n;
    bool advanced = false;
    while (i-- > 0) {
      if (pick[i] + 1 < list[i].dim()) {
        ++pick[i];
        std::fill(pick.begin() + i + 1, pick.end(), 0);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return {true, PermanullMethod::kBruteForce, std::nullopt, std::nullopt};
}

size_t puv_dimension(const Subspace& u, const Subspace& v) {
  if (u.ambient() != 3 || v.ambient() != 3)
    throw std::invalid_argument("puv_dimension: ambient must be 3");
  if (u.dim() < 2 || v.dim() < 2)
    throw std::invalid_argument("puv_dimension: dimensions must be >= 2");
  const FqPtr& f = u.field();
  if (!f->same_field(*v.field()))
    throw std::invalid_argument("puv_dimension: fields differ");
  std::vector<Vector> us, vs;
  for (size_t i = 0; i < u.dim(); ++i) us.push_back(u.basis().row(i));
  for (size_t i = 0; i < v.dim(); ++i) vs.push_back(v.basis().row(i));
  // Augment with pairwise sums of basis vectors on each side.
  auto augment = [&](std::vector<Vector>& side) {
    size_t base = side.size();
    for (size_t i = 0; i < base; ++i)
      for (size_t j = i + 1; j < base; ++j) {
        Vector w(f, 3);
        for (size_t t = 0; t < 3; ++t)
          w.set(t, f->add(side[i].at(t), side[j].at(t)));
        side.push_back(w);
      }
  };
  augment(us);
  augment(vs);
  std::vector<Vector> images;
  Matrix pair(f, 3, 2);
  for (const auto& a : us)
    for (const auto& b : vs) {
      pair.set_col(0, a);
      pair.set_col(1, b);
      images.push_back(per_3x2(pair));
    }
  return Subspace::span(images, f, 3).dim();
}

bool permanull_sufficient(const Subspace& s) {
  if (s.dim() == 0)
    throw std::invalid_argument("permanull_sufficient: dim must be >= 1");
  StandardForm sf = standard_form(s);
  size_t d = sf.codim;
  std::vector<Vector> tails;
  for (size_t i = 0; i < s.dim(); ++i) tails.push_back(sf.a_block.col(i));
  Subspace projected = Subspace::span(tails, s.field(), d);
  return is_permanull_poly(projected).permanull;
}

VerifyReport verify_c1_classification(const FqPtr& field, size_t n,
                                      uint64_t state_budget) {
  VerifyReport report;
  report.theorem = "c1";
  report.params = {{"q", field->order()}, {"n", n}};
  SubspaceEnumerator en(field, n, n - 1, state_budget);
  while (auto s = en.next()) {
    ++report.total_enumerated;
    bool expected = is_coordinate_hyperplane(*s);
    bool actual = is_permanull_poly(*s).permanull;
    if (actual) ++report.passing;
    if (actual != expected)
      report.violations.push_back(
          describe_subspace(*s) + (actual ? " is permanull but not a"
                                          : " is not permanull despite being a") +
          " coordinate hyperplane");
  }
  report.ok = report.violations.empty();
  return report;
}

VerifyReport verify_manyfriends(const FqPtr& field, size_t n, int workers,
                                uint64_t state_budget) {
  if (n != 3 && n != 4)
    throw std::invalid_argument("verify_manyfriends: n must be 3 or 4");
  VerifyReport report;
  report.theorem = "manyfriends";
  report.params = {{"q", field->order()}, {"n", n}};

  // Candidates: every subspace of dimension >= n-1, i.e. all hyperplanes
  // plus the full space.
  std::vector<Subspace> candidates =
      enumerate_subspaces(field, n, n - 1, state_budget);
  candidates.push_back(Subspace::full(field, n));
  std::vector<bool> is_coord(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i)
    is_coord[i] = is_coordinate_hyperplane(candidates[i]);

  const size_t c = candidates.size();
  uint64_t total = 1;
  for (size_t i = 0; i < n; ++i) total *= c;
  report.total_enumerated = total;

  auto ranges = split_ranges(total, workers);
  std::vector<uint64_t> pass_counts(ranges.size(), 0);
  std::vector<std::vector<std::string>> violation_lists(ranges.size());

  auto run_range = [&](size_t w) {
    auto [begin, end] = ranges[w];
    std::vector<size_t> idx(n);
    std::vector<Subspace> list;
    for (uint64_t t = begin; t < end; ++t) {
      uint64_t rem = t;
      for (size_t i = n; i-- > 0;) {
        idx[i] = static_cast<size_t>(rem % c);
        rem /= c;
      }
      list.clear();
      for (size_t i = 0; i < n; ++i) list.push_back(candidates[idx[i]]);
      bool actual = is_jointly_permanull_brute(list).permanull;
      bool constant = std::all_of(idx.begin(), idx.end(),
                                  [&](size_t i) { return i == idx[0]; });
      bool expected = constant && is_coord[idx[0]];
      if (actual) ++pass_counts[w];
      if (actual != expected) {
        std::ostringstream os;
        os << "list (";
        for (size_t i = 0; i < n; ++i)
          os << (i ? ", " : "") << describe_subspace(candidates[idx[i]]);
        os << ") " << (actual ? "is" : "is not") << " jointly permanull";
        violation_lists[w].push_back(os.str());
      }
    }
  };

  std::vector<std::thread> pool;
  for (size_t w = 1; w < ranges.size(); ++w) pool.emplace_back(run_range, w);
  run_range(0);
  for (auto& th : pool) th.join();

  for (size_t w = 0; w < ranges.size(); ++w) {
    report.passing += pass_counts[w];
    for (auto& v : violation_lists[w])
      report.violations.push_back(std::move(v));
  }
  report.ok = report.violations.empty();
  return report;
}

VerifyReport verify_char_threshold(const FqPtr& field, size_t n, size_t d,
                                   uint64_t state_budget) {
  if (d == 0 || d > n)
    throw std::invalid_argument("verify_char_threshold: need 1 <= d <= n");
  VerifyReport report;
  report.theorem = "charthreshold";
  report.params = {{"q", field->order()}, {"n", n}, {"d", d}};
  bool assert_mode =
      field->characteristic() > static_cast<int64_t>(d) + 1;
  SubspaceEnumerator en(field, n, n - d, state_budget);
  while (auto s = en.next()) {
    ++report.total_enumerated;
    bool trivial = trivial_coordinate(*s).has_value();
    bool permanull = is_permanull_poly(*s).permanull;
    if (permanull) ++report.passing;
    if (assert_mode) {
      if (permanull != trivial)
        report.violations.push_back(describe_subspace(*s) +
                                    (permanull ? " is permanull but nontrivial"
                                               : " is trivial but not permanull"));
    } else if (permanull && !trivial) {
      report.findings.push_back(describe_subspace(*s) +
                                " is a nontrivial permanull subspace");
    }
  }
  report.ok = report.violations.empty();
  return report;
}

}  // namespace permrank
