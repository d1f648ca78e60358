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

#include "permrank/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace permrank {
namespace {

constexpr uint32_t kMaxOrder = 1u << 16;

bool is_prime(int64_t p) {
  if (p < 2) return false;
  for (int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Dense polynomial over GF(p), constant term first. Helpers below keep
// vectors trimmed of leading zeros.
using Poly = std::vector<uint32_t>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo monic g.
Poly poly_rem(Poly f, const Poly& g, int64_t p) {
  trim(f);
  while (f.size() >= g.size() && !f.empty()) {
    uint32_t lead = f.back();
    size_t shift = f.size() - g.size();
    for (size_t i = 0; i < g.size(); ++i) {
      int64_t v = static_cast<int64_t>(f[shift + i]) -
                  static_cast<int64_t>(lead) * g[i] % p;
      f[shift + i] = static_cast<uint32_t>((v % p + p) % p);
    }
    trim(f);
  }
  return f;
}

Poly poly_mul(const Poly& a, const Poly& b, int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      out[i + j] = static_cast<uint32_t>(
          (out[i + j] + static_cast<uint64_t>(a[i]) * b[j]) % p);
  return out;
}

// Monic polynomial of degree deg whose non-leading coefficients are the
// base-p digits of code.
Poly poly_from_code(uint64_t code, int deg, int64_t p) {
  Poly f(deg + 1, 0);
  for (int i = 0; i < deg; ++i) {
    f[i] = static_cast<uint32_t>(code % p);
    code /= p;
  }
  f[deg] = 1;
  return f;
}

bool is_irreducible(const Poly& f, int64_t p) {
  int m = static_cast<int>(f.size()) - 1;
  for (int e = 1; 2 * e <= m; ++e) {
    uint64_t count = 1;
    for (int i = 0; i < e; ++i) count *= static_cast<uint64_t>(p);
    for (uint64_t code = 0; code < count; ++code) {
      Poly g = poly_from_code(code, e, p);
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<int64_t> prime_factors(int64_t n) {
  std::vector<int64_t> out;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

Fq::Fq(int64_t p, int m) : p_(p), m_(m) {
  uint64_t q = 1;
  for (int i = 0; i < m; ++i) {
    q *= static_cast<uint64_t>(p);
    if (q > kMaxOrder)
      throw std::invalid_argument("field order exceeds 2^16");
  }
  q_ = static_cast<uint32_t>(q);
}

FqPtr Fq::make(int64_t p, int m) {
  if (p == 2) throw std::invalid_argument("even characteristic unsupported");
  if (p < 2 || !is_prime(p))
    throw std::invalid_argument("characteristic must be an odd prime");
  if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
  auto f = std::shared_ptr<Fq>(new Fq(p, m));
  f->build_tables();
  return f;
}

void Fq::build_tables() {
  if (m_ == 1) {
    red_ = {0, 1};
  } else {
    // Lexicographically least monic irreducible of degree m: candidates are
    // ordered by the base-p code of their non-leading coefficients.
    bool found = false;
    for (uint64_t code = 0; code < q_; ++code) {
      Poly f = poly_from_code(code, m_, p_);
      if (is_irreducible(f, p_)) {
        red_ = f;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("no irreducible polynomial found");
  }

  // Negation table, digit-wise.
  neg_.assign(q_, 0);
  for (uint32_t a = 1; a < q_; ++a) {
    uint32_t v = a, r = 0, scale = 1;
    for (int i = 0; i < m_; ++i) {
      uint32_t d = v % p_;
      v /= p_;
      r += static_cast<uint32_t>((p_ - d) % p_) * scale;
      scale *= static_cast<uint32_t>(p_);
    }
    neg_[a] = r;
  }

  // Raw product via polynomial multiplication mod the reduction polynomial;
  // used only while bootstrapping the log/antilog tables.
  auto mul_raw = [&](uint32_t a, uint32_t b) -> uint32_t {
    Poly fa = poly_from_code(a, m_, p_), fb = poly_from_code(b, m_, p_);
    fa.pop_back();
    fb.pop_back();
    trim(fa);
    trim(fb);
    Poly prod = poly_rem(poly_mul(fa, fb, p_), red_, p_);
    uint32_t r = 0, scale = 1;
    for (size_t i = 0; i < prod.size(); ++i) {
      r += prod[i] * scale;
      scale *= static_cast<uint32_t>(p_);
    }
    return r;
  };
  auto pow_raw = [&](uint32_t a, uint64_t e) -> uint32_t {
    uint32_t acc = 1;
    while (e) {
      if (e & 1) acc = mul_raw(acc, a);
      a = mul_raw(a, a);
      e >>= 1;
    }
    return acc;
  };

  // Find a generator of the multiplicative group: g qualifies iff
  // g^((q-1)/l) != 1 for every prime l dividing q-1.
  uint32_t g = 0;
  auto factors = prime_factors(q_ - 1);
  for (uint32_t c = 2; c < q_; ++c) {
    bool ok = true;
    for (int64_t l : factors) {
      if (pow_raw(c, (q_ - 1) / l) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g = c;
      break;
    }
  }
  if (g == 0 && q_ > 2) throw std::logic_error("no generator found");

  exp_.assign(2 * (q_ - 1), 0);
  log_.assign(q_, 0);
  uint32_t cur = 1;
  for (uint32_t i = 0; i < q_ - 1; ++i) {
    exp_[i] = cur;
    log_[cur] = i;
    cur = mul_raw(cur, g);
  }
  if (cur != 1) throw std::logic_error("generator order mismatch");
  for (uint32_t i = 0; i < q_ - 1; ++i) exp_[q_ - 1 + i] = exp_[i];

  inv_.assign(q_, 0);
  for (uint32_t a = 1; a < q_; ++a)
    inv_[a] = exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

uint32_t Fq::add_ext(uint32_t a, uint32_t b) const {
  uint32_t r = 0, scale = 1;
  for (int i = 0; i < m_; ++i) {
    uint32_t s = a % p_ + b % p_;
    if (s >= p_) s -= static_cast<uint32_t>(p_);
    r += s * scale;
    scale *= static_cast<uint32_t>(p_);
    a /= p_;
    b /= p_;
  }
  return r;
}

uint32_t Fq::inv(uint32_t a) const {
  if (a == 0) throw std::domain_error("division by zero in " + name());
  return inv_[a];
}

uint32_t Fq::pow(uint32_t a, int64_t e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e > 0) return 0;
    throw std::domain_error("zero raised to a negative power");
  }
  int64_t ord = q_ - 1;
  int64_t r = ((e % ord) + ord) % ord;
  uint64_t l = static_cast<uint64_t>(log_[a]) * static_cast<uint64_t>(r);
  return exp_[l % ord];
}

uint32_t Fq::from_int(int64_t v) const {
  int64_t r = ((v % p_) + p_) % p_;
  return static_cast<uint32_t>(r);
}

std::vector<uint32_t> Fq::coefficients(uint32_t code) const {
  std::vector<uint32_t> out(m_);
  for (int i = 0; i < m_; ++i) {
    out[i] = code % p_;
    code /= static_cast<uint32_t>(p_);
  }
  return out;
}

std::vector<uint32_t> Fq::elements() const {
  std::vector<uint32_t> out(q_);
  for (uint32_t i = 0; i < q_; ++i) out[i] = i;
  return out;
}

FieldElement Fq::element(uint32_t code) const {
  if (code >= q_) throw std::invalid_argument("element code out of range");
  return FieldElement(shared_from_this(), code);
}

FieldElement Fq::zero() const { return FieldElement(shared_from_this(), 0); }
FieldElement Fq::one() const { return FieldElement(shared_from_this(), 1); }

std::string Fq::name() const { return "GF(" + std::to_string(q_) + ")"; }

std::pair<int64_t, int> factor_prime_power(int64_t q) {
  if (q < 3) throw std::invalid_argument("field order must be at least 3");
  int64_t p = 0;
  for (int64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;  // q itself is prime
  if (p == 2) throw std::invalid_argument("even characteristic unsupported");
  int m = 0;
  int64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++m;
  }
  if (rest != 1)
    throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  return {p, m};
}

FieldElement::FieldElement(FqPtr field, uint32_t value)
    : field_(std::move(field)), value_(value) {
  if (!field_) throw std::invalid_argument("null field");
  if (value_ >= field_->order())
    throw std::invalid_argument("element code out of range");
}

void FieldElement::check_compatible(const FieldElement& o) const {
  if (!field_->same_field(*o.field_))
    throw std::invalid_argument("elements of different fields: " +
                                field_->name() + " vs " + o.field_->name());
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_compatible(o);
  return FieldElement(field_, field_->add(value_, o.value_));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_compatible(o);
  return FieldElement(field_, field_->sub(value_, o.value_));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_compatible(o);
  return FieldElement(field_, field_->mul(value_, o.value_));
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_compatible(o);
  return FieldElement(field_, field_->div(value_, o.value_));
}

FieldElement FieldElement::operator-() const {
  return FieldElement(field_, field_->neg(value_));
}

FieldElement FieldElement::inverse() const {
  return FieldElement(field_, field_->inv(value_));
}

FieldElement FieldElement::pow(int64_t e) const {
  return FieldElement(field_, field_->pow(value_, e));
}

bool FieldElement::operator==(const FieldElement& o) const {
  return field_->same_field(*o.field_) && value_ == o.value_;
}

}  // namespace permrank
