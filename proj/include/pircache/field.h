// Copyright 2026 The pircache Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Finite fields GF(q^delta) built as towers: a prime field GF(p), the base
// field GF(q) = GF(p)[x]/(f) with q = p^m, and the extension
// GF(q^delta) = GF(q)[y]/(g).
//
// Elements are plain integers. An element of an extension with base order Q
// and coefficients c_0..c_{e-1} over the base is encoded as sum_t c_t Q^t.
// Because constants keep their encoding, GF(q) values are valid values of any
// GF(q^delta) built on the same GF(q) object, which is what lets query
// matrices over GF(q) act directly on cached symbols over GF(q^delta).

#ifndef PIRCACHE_FIELD_H_
#define PIRCACHE_FIELD_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pircache::gf {

using Value = std::uint64_t;

// Polynomial coefficients, lowest degree first.
using Poly = std::vector<Value>;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field : public std::enable_shared_from_this<Field> {
 public:
  // Fields above this order use polynomial arithmetic instead of log tables.
  static constexpr Value kMaxTableOrder = Value{1} << 20;

  static FieldPtr Prime(std::uint64_t p);
  // `modulus` must be monic and irreducible over `base`. `q` and `delta`
  // record how callers view the result: GF(q^delta).
  static FieldPtr Extension(FieldPtr base, Poly modulus, std::uint64_t q,
                            int delta);

  std::uint64_t characteristic() const { return p_; }
  Value order() const { return order_; }
  // Order of the base field GF(q) in the GF(q^delta) view.
  std::uint64_t q() const { return q_; }
  int delta() const { return delta_; }
  // Degree over the immediate base field (1 for prime fields).
  int degree() const { return degree_; }
  bool is_prime() const { return base_ == nullptr; }
  const FieldPtr& base() const { return base_; }
  const Poly& modulus() const { return modulus_; }

  // GF(q): the field itself when delta == 1, otherwise its base.
  FieldPtr BaseQ() const;

  bool Contains(Value a) const { return a < order_; }
  Value Add(Value a, Value b) const;
  Value Sub(Value a, Value b) const;
  Value Neg(Value a) const;
  Value Mul(Value a, Value b) const;
  // Throws InvalidArgument on zero.
  Value Inv(Value a) const;
  Value Div(Value a, Value b) const { return Mul(a, Inv(b)); }
  Value Pow(Value a, std::uint64_t e) const;

  // Coefficients over the immediate base field, length degree().
  Poly Digits(Value a) const;
  Value FromDigits(std::span<const Value> digits) const;

  // Structural identity: same tower, same moduli.
  bool SameAs(const Field& other) const;

  std::string Name() const;
  std::string Format(Value a) const;

 private:
  Field() = default;
  Value MulSlow(Value a, Value b) const;
  void BuildTables();

  std::uint64_t p_ = 0;
  Value order_ = 0;
  std::uint64_t q_ = 0;
  int delta_ = 1;
  int degree_ = 1;
  FieldPtr base_;
  Poly modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

// Returns GF(q^delta). Without a modulus the lexicographically smallest
// monic irreducible polynomial is used (ordering: compare the integer
// encodings sum_t c_t |base|^t of the non-leading coefficients).
// When delta == 1 and q = p^m with m > 1 the optional modulus defines GF(q)
// over GF(p); when delta > 1 it defines GF(q^delta) over GF(q).
// Fields are memoized, so equal arguments yield the same object.
// Throws InvalidArgument for non-prime-power q, delta < 1 or a reducible /
// malformed modulus.
FieldPtr MakeField(std::uint64_t q, int delta,
                   std::optional<Poly> modulus = std::nullopt);

// Prime-power decomposition; nullopt when q is not a prime power.
struct PrimePower {
  std::uint64_t prime;
  int exponent;
};
std::optional<PrimePower> FactorPrimePower(std::uint64_t q);

// Smallest prime power >= n.
std::uint64_t SmallestPrimePowerAtLeast(std::uint64_t n);

// Trial factorization: true iff `poly` (monic, degree >= 1) has no monic
// factor of degree 1..deg/2 over `base`.
bool IsIrreducible(const Field& base, std::span<const Value> poly);

Poly SmallestIrreducible(const Field& base, int degree);

// Injective ring homomorphism GF(q^a) -> GF(q^b) for a | b over the same
// GF(q). The image of the generator is the smallest-valued root of the
// source modulus in the target.
class Embedding {
 public:
  // Throws InvalidArgument when the fields do not share GF(q) or a does not
  // divide b.
  Embedding(FieldPtr from, FieldPtr to);

  const FieldPtr& from() const { return from_; }
  const FieldPtr& to() const { return to_; }

  Value Embed(Value x) const;
  // Inverse on the image; throws InvalidArgument for values outside it.
  Value Project(Value y) const;
  bool InImage(Value y) const;

 private:
  FieldPtr from_;
  FieldPtr to_;
  FieldPtr gf_q_;
  bool identity_ = false;
  std::vector<Value> basis_;  // images of 1, r, r^2, ...
  // Projection: rows of `pivot_rows_` select coordinates of y over GF(q);
  // `pivot_inverse_` maps them to the source digits.
  std::vector<std::size_t> pivot_rows_;
  std::vector<Value> pivot_inverse_;  // a x a, row-major
};

}  // namespace pircache::gf

#endif  // PIRCACHE_FIELD_H_
