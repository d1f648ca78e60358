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

namespace permrank {

/// Counter-based pseudorandom stream built on the splitmix64 finalizer.
///
/// The stream is a pure function of (key, counter), so any draw can be
/// reproduced without replaying earlier draws, and substream(i) yields an
/// independent stream keyed by (key, i). Substream derivation does not
/// depend on how many values were already drawn. This is what makes
/// Monte-Carlo results independent of the worker count: sample s always
/// uses substream(s) of the master stream.
class Rng {
 public:
  /// Algorithm identifier recorded in experiment output.
  static constexpr const char* kAlgorithmId = "splitmix64-ctr-v1";

  explicit Rng(uint64_t seed) : key_(mix(seed + kGolden)), counter_(0) {}

  /// Independent stream for the given index, derived from this stream's key.
  Rng substream(uint64_t index) const {
    return Rng(mix(key_ ^ mix(index + kSubstreamSalt)), 0);
  }

  uint64_t next() {
    ++counter_;
    return mix(key_ + counter_ * kGolden);
  }

  /// Uniform value in [0, bound) via rejection sampling (no modulo bias).
  uint32_t below(uint32_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    uint64_t zone = (UINT64_MAX / bound) * bound;
    uint64_t r;
    do {
      r = next();
    } while (r >= zone);
    return static_cast<uint32_t>(r % bound);
  }

 private:
  Rng(uint64_t key, uint64_t counter) : key_(key), counter_(counter) {}

  static constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  static constexpr uint64_t kSubstreamSalt = 0x632BE59BD9B4E019ull;

  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  uint64_t key_;
  uint64_t counter_;
};

}  // namespace permrank
