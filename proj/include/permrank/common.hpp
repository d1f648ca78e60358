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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace permrank {

/// Thrown when an enumeration or evaluation would exceed its configured
/// work budget. Callers may retry with a larger explicit budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// base^exp with saturation at UINT64_MAX instead of wrap-around.
inline uint64_t saturating_pow_u64(uint64_t base, uint64_t exp) {
  uint64_t acc = 1;
  for (uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && acc > UINT64_MAX / base) return UINT64_MAX;
    acc *= base;
  }
  return acc;
}

/// Splits [0, total) into at most `workers` contiguous non-empty ranges.
inline std::vector<std::pair<uint64_t, uint64_t>> split_ranges(uint64_t total,
                                                               int workers) {
  std::vector<std::pair<uint64_t, uint64_t>> out;
  if (workers < 1) workers = 1;
  uint64_t w = static_cast<uint64_t>(workers);
  if (w > total) w = total == 0 ? 1 : total;
  uint64_t base = total / w, rem = total % w, start = 0;
  for (uint64_t i = 0; i < w; ++i) {
    uint64_t len = base + (i < rem ? 1 : 0);
    out.emplace_back(start, start + len);
    start += len;
  }
  return out;
}

}  // namespace permrank
