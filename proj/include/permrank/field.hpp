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
#include <memory>
#include <string>
#include <vector>

#include "permrank/rng.hpp"

namespace permrank {

class Fq;
class FieldElement;
using FqPtr = std::shared_ptr<const Fq>;

/// A finite field GF(p^m) of odd characteristic.
///
/// Elements are encoded as integers in [0, q): the base-p digits of the code,
/// least significant first, are the coefficients of the element in the
/// polynomial basis {1, x, ..., x^(m-1)}. Code 0 is the additive identity and
/// code 1 the multiplicative identity. The same encoding is used on every
/// external surface (matrix files, CLI output, JSON records).
///
/// For m > 1 arithmetic is done modulo the lexicographically least monic
/// irreducible polynomial of degree m over GF(p), where candidates are ordered
/// by the base-p code of their non-leading coefficients. The choice is
/// deterministic, so two fields with equal (p, m) are interchangeable.
///
/// Multiplication and inversion go through log/antilog tables over a fixed
/// generator; construction therefore caps q at 2^16.
class Fq : public std::enable_shared_from_this<Fq> {
 public:
  /// Builds GF(p^m). Throws std::invalid_argument for even or composite p,
  /// m < 1, or p^m > 2^16.
  static FqPtr make(int64_t p, int m = 1);

  int64_t characteristic() const { return p_; }
  int extension_degree() const { return m_; }
  uint32_t order() const { return q_; }

  /// Reduction polynomial coefficients, constant term first, length m+1,
  /// leading coefficient 1. For m == 1 this is the placeholder {0, 1} (x),
  /// which arithmetic never consults.
  const std::vector<uint32_t>& reduction_polynomial() const { return red_; }

  // Arithmetic on raw element codes. Codes must lie in [0, q); only inv and
  // div validate their arguments (division by zero).
  uint32_t add(uint32_t a, uint32_t b) const {
    if (m_ == 1) {
      uint32_t s = a + b;
      return s >= q_ ? s - q_ : s;
    }
    return add_ext(a, b);
  }
  uint32_t neg(uint32_t a) const { return neg_[a]; }
  uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg_[b]); }
  uint32_t mul(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  uint32_t inv(uint32_t a) const;
  uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

  /// a^e. Conventions: pow(0, 0) = 1, pow(0, e) = 0 for e > 0; negative e
  /// requires a != 0.
  uint32_t pow(uint32_t a, int64_t e) const;

  /// Image of an arbitrary integer under the prime-subfield embedding
  /// (v mod p as a constant polynomial). Accepts negatives: from_int(-1)
  /// is the additive inverse of one.
  uint32_t from_int(int64_t v) const;

  /// Base-p digits of a code, least significant (constant coefficient) first.
  std::vector<uint32_t> coefficients(uint32_t code) const;

  /// All element codes in ascending order: 0 first, then 1, then the rest.
  std::vector<uint32_t> elements() const;

  /// Uniform element code.
  uint32_t sample(Rng& rng) const { return rng.below(q_); }

  bool same_field(const Fq& other) const {
    return p_ == other.p_ && m_ == other.m_;
  }

  FieldElement element(uint32_t code) const;
  FieldElement zero() const;
  FieldElement one() const;

  /// "GF(q)" display name.
  std::string name() const;

 private:
  Fq(int64_t p, int m);
  void build_tables();
  uint32_t add_ext(uint32_t a, uint32_t b) const;

  int64_t p_;
  int m_;
  uint32_t q_;
  std::vector<uint32_t> red_;
  std::vector<uint32_t> exp_;  // exp_[i] = g^i for i in [0, 2(q-1)), doubled to skip a mod
  std::vector<uint32_t> log_;  // log_[a] for a != 0
  std::vector<uint32_t> neg_;
  std::vector<uint32_t> inv_;
};

/// Decomposes q into (p, m) with p prime and p^m == q. Throws
/// std::invalid_argument if q is not an odd prime power.
std::pair<int64_t, int> factor_prime_power(int64_t q);

/// Value-semantics wrapper pairing an element code with its field. Operators
/// validate that both operands live in the same field.
class FieldElement {
 public:
  FieldElement(FqPtr field, uint32_t value);

  uint32_t value() const { return value_; }
  const FqPtr& field() const { return field_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(int64_t e) const;

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  void check_compatible(const FieldElement& o) const;

  FqPtr field_;
  uint32_t value_;
};

}  // namespace permrank
