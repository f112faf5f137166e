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

// Linear block codes over GF(q): generalized Reed-Solomon codes and generic
// codes given by a generator matrix. Coordinates are 0-based throughout.

#ifndef PIRCACHE_LINEAR_CODE_H_
#define PIRCACHE_LINEAR_CODE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pircache/matrix.h"

namespace pircache::codes {

using gf::FieldPtr;
using gf::Matrix;
using gf::Value;

struct GrsParams {
  std::vector<Value> v;      // weighting vector, nonzero entries
  std::vector<Value> kappa;  // evaluation points, nonzero and distinct
};

class LinearCode {
 public:
  // H is derived from the null space of G. Throws InvalidArgument when G is
  // rank deficient.
  static LinearCode FromGenerator(Matrix g);

  // Rows v_j * kappa_j^r for r = 0..k-1. Throws InvalidArgument for
  // repeated or zero kappa, zero v, k > n or n > q - 1.
  static LinearCode Grs(FieldPtr field, std::size_t n, std::size_t k,
                        std::vector<Value> v, std::vector<Value> kappa);
  // v = all-ones, kappa = (1, 2, ..., n) in integer encoding.
  static LinearCode DefaultGrs(FieldPtr field, std::size_t n, std::size_t k);

  static LinearCode Repetition(FieldPtr field, std::size_t n);
  // Systematic (n, n-1) code with all-ones parity column.
  static LinearCode SingleParityCheck(FieldPtr field, std::size_t n);

  const FieldPtr& field() const { return generator_.field(); }
  std::size_t n() const { return generator_.cols(); }
  std::size_t k() const { return generator_.rows(); }
  const Matrix& generator() const { return generator_; }
  const Matrix& parity_check() const { return parity_check_; }
  bool is_grs() const { return grs_.has_value(); }
  const std::optional<GrsParams>& grs() const { return grs_; }

  // message (length k) times G. Entries may lie in an extension `over`.
  std::vector<Value> Encode(std::span<const Value> message, const gf::Field& over) const;
  std::vector<Value> Encode(std::span<const Value> message) const {
    return Encode(message, *field());
  }
  bool Contains(std::span<const Value> word, const gf::Field& over) const;
  bool Contains(std::span<const Value> word) const { return Contains(word, *field()); }

 private:
  LinearCode(Matrix g, Matrix h, std::optional<GrsParams> grs);

  Matrix generator_;
  Matrix parity_check_;
  std::optional<GrsParams> grs_;
};

// Restriction to `keep` (ordered, size >= k). GRS parameters are restricted
// alongside. Throws InvalidArgument when the dimension would drop.
LinearCode Puncture(const LinearCode& code, std::span<const std::size_t> keep);

// Span of all coordinate-wise products of codewords.
LinearCode Hadamard(const LinearCode& a, const LinearCode& b);

// Span of the union of both codes.
LinearCode SumCode(const LinearCode& a, const LinearCode& b);

// True iff G restricted to I is invertible. Throws when |I| != k.
bool IsInformationSet(const LinearCode& code, std::span<const std::size_t> info_set);

// True iff H restricted to the erased coordinates has full column rank.
// `erased` has length n, nonzero entries mark erasures.
bool Correctable(const LinearCode& code, std::span<const std::uint8_t> erased);

// The unique codeword agreeing with `word` off the erasures. Symbols may lie in
// an extension `over`. Throws InvalidArgument when the pattern is not
// correctable.
std::vector<Value> ErasureDecode(const LinearCode& code, std::span<const Value> word,
                                 std::span<const std::uint8_t> erased,
                                 const gf::Field& over);
inline std::vector<Value> ErasureDecode(const LinearCode& code,
                                        std::span<const Value> word,
                                        std::span<const std::uint8_t> erased) {
  return ErasureDecode(code, word, erased, *code.field());
}

// The message m with (m G)|_I = values, for an information set I.
std::vector<Value> DecodeMessage(const LinearCode& code,
                                 std::span<const std::size_t> info_set,
                                 std::span<const Value> values, const gf::Field& over);

// Minimum distance of the dual code, i.e. the size of the smallest linearly
// dependent set of columns of G (n + 1 when the dual is trivial). GRS codes
// use k + 1; other codes search column subsets and throw InvalidArgument when
// more than 2^22 rank tests would be needed.
std::size_t DualMinDistance(const LinearCode& code);

// Exhaustive: every k-subset of coordinates is an information set.
bool IsMds(const LinearCode& code);

// Calls fn on every size-k subset of {0..n-1} in lexicographic order; stops
// early when fn returns false.
template <typename Fn>
void ForEachSubset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    if (!fn(std::span<const std::size_t>(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace pircache::codes

#endif  // PIRCACHE_LINEAR_CODE_H_
