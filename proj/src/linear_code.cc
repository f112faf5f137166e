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

#include "pircache/linear_code.h"

#include <set>
#include <utility>

#include "pircache/error.h"

namespace pircache::codes {

LinearCode::LinearCode(Matrix g, Matrix h, std::optional<GrsParams> grs)
    : generator_(std::move(g)), parity_check_(std::move(h)), grs_(std::move(grs)) {}

LinearCode LinearCode::FromGenerator(Matrix g) {
  if (g.cols() == 0) throw InvalidArgument("code length must be positive");
  if (gf::Rank(g) != g.rows()) throw InvalidArgument("generator matrix is rank deficient");
  Matrix h = gf::NullSpace(g);
  if (h.rows() == 0) h = Matrix(g.field(), 0, g.cols());
  return LinearCode(std::move(g), std::move(h), std::nullopt);
}

LinearCode LinearCode::Grs(FieldPtr field, std::size_t n, std::size_t k,
                           std::vector<Value> v, std::vector<Value> kappa) {
  if (n == 0 || k == 0 || k > n) throw InvalidArgument("GRS needs 1 <= k <= n");
  if (n > field->order() - 1) {
    throw InvalidArgument("GRS length " + std::to_string(n) + " exceeds q - 1 over " +
                          field->Name());
  }
  if (v.size() != n || kappa.size() != n) throw InvalidArgument("GRS vector length mismatch");
  std::set<Value> seen;
  for (std::size_t j = 0; j < n; ++j) {
    if (v[j] == 0 || !field->Contains(v[j])) throw InvalidArgument("GRS weight must be nonzero");
    if (kappa[j] == 0 || !field->Contains(kappa[j])) {
      throw InvalidArgument("GRS evaluation point must be nonzero");
    }
    if (!seen.insert(kappa[j]).second) throw InvalidArgument("repeated GRS evaluation point");
  }
  Matrix g(field, k, n);
  for (std::size_t j = 0; j < n; ++j) {
    Value power = v[j];
    for (std::size_t r = 0; r < k; ++r) {
      g(r, j) = power;
      power = field->Mul(power, kappa[j]);
    }
  }
  Matrix h = gf::NullSpace(g);
  if (h.rows() == 0) h = Matrix(field, 0, n);
  return LinearCode(std::move(g), std::move(h), GrsParams{std::move(v), std::move(kappa)});
}

LinearCode LinearCode::DefaultGrs(FieldPtr field, std::size_t n, std::size_t k) {
  std::vector<Value> kappa(n);
  for (std::size_t j = 0; j < n; ++j) kappa[j] = j + 1;
  return Grs(std::move(field), n, k, std::vector<Value>(n, 1), std::move(kappa));
}

LinearCode LinearCode::Repetition(FieldPtr field, std::size_t n) {
  Matrix g(field, 1, n);
  for (std::size_t j = 0; j < n; ++j) g(0, j) = 1;
  return FromGenerator(std::move(g));
}

LinearCode LinearCode::SingleParityCheck(FieldPtr field, std::size_t n) {
  if (n < 2) throw InvalidArgument("parity-check code needs n >= 2");
  Matrix g(field, n - 1, n);
  for (std::size_t r = 0; r + 1 < n; ++r) {
    g(r, r) = 1;
    g(r, n - 1) = 1;
  }
  return FromGenerator(std::move(g));
}

std::vector<Value> LinearCode::Encode(std::span<const Value> message,
                                      const gf::Field& over) const {
  if (message.size() != k()) throw InvalidArgument("message length must equal k");
  return generator_.Transpose().Apply(message, over);
}

bool LinearCode::Contains(std::span<const Value> word, const gf::Field& over) const {
  if (word.size() != n()) return false;
  for (Value s : parity_check_.Apply(word, over)) {
    if (s != 0) return false;
  }
  return true;
}

LinearCode Puncture(const LinearCode& code, std::span<const std::size_t> keep) {
  if (keep.size() < code.k()) throw InvalidArgument("puncturing below the dimension");
  std::set<std::size_t> distinct(keep.begin(), keep.end());
  if (distinct.size() != keep.size()) throw InvalidArgument("repeated coordinate");
  Matrix g = code.generator().SelectColumns(keep);
  if (code.is_grs()) {
    GrsParams p;
    for (auto c : keep) {
      p.v.push_back(code.grs()->v[c]);
      p.kappa.push_back(code.grs()->kappa[c]);
    }
    return LinearCode::Grs(code.field(), keep.size(), code.k(), std::move(p.v),
                           std::move(p.kappa));
  }
  if (gf::Rank(g) != code.k()) throw InvalidArgument("puncturing loses dimension");
  return LinearCode::FromGenerator(std::move(g));
}

LinearCode Hadamard(const LinearCode& a, const LinearCode& b) {
  if (a.n() != b.n()) throw InvalidArgument("Hadamard product needs equal lengths");
  if (!a.field()->SameAs(*b.field())) throw InvalidArgument("codes over different fields");
  const auto& f = *a.field();
  Matrix products(a.field(), a.k() * b.k(), a.n());
  for (std::size_t i = 0; i < a.k(); ++i) {
    for (std::size_t j = 0; j < b.k(); ++j) {
      for (std::size_t c = 0; c < a.n(); ++c) {
        products(i * b.k() + j, c) = f.Mul(a.generator()(i, c), b.generator()(j, c));
      }
    }
  }
  Matrix basis = gf::RowBasis(products);
  if (a.is_grs() && b.is_grs() && a.grs()->kappa == b.grs()->kappa) {
    const std::size_t dim = std::min(a.n(), a.k() + b.k() - 1);
    if (basis.rows() != dim) throw VerificationFailure("GRS Hadamard dimension law violated");
    std::vector<Value> v(a.n());
    for (std::size_t c = 0; c < a.n(); ++c) v[c] = f.Mul(a.grs()->v[c], b.grs()->v[c]);
    return LinearCode::Grs(a.field(), a.n(), dim, std::move(v), a.grs()->kappa);
  }
  return LinearCode::FromGenerator(std::move(basis));
}

LinearCode SumCode(const LinearCode& a, const LinearCode& b) {
  if (a.n() != b.n()) throw InvalidArgument("code sum needs equal lengths");
  if (!a.field()->SameAs(*b.field())) throw InvalidArgument("codes over different fields");
  Matrix basis = gf::RowBasis(a.generator().Stack(b.generator()));
  // Nested GRS codes with shared (v, kappa): the sum is the larger one.
  if (a.is_grs() && b.is_grs() && a.grs()->v == b.grs()->v &&
      a.grs()->kappa == b.grs()->kappa) {
    if (basis.rows() != std::max(a.k(), b.k())) {
      throw VerificationFailure("GRS nesting violated");
    }
    return a.k() >= b.k() ? a : b;
  }
  return LinearCode::FromGenerator(std::move(basis));
}

bool IsInformationSet(const LinearCode& code, std::span<const std::size_t> info_set) {
  if (info_set.size() != code.k()) throw InvalidArgument("information set size must equal k");
  return gf::Rank(code.generator().SelectColumns(info_set)) == code.k();
}

bool Correctable(const LinearCode& code, std::span<const std::uint8_t> erased) {
  if (erased.size() != code.n()) throw InvalidArgument("pattern length must equal n");
  std::vector<std::size_t> chi;
  for (std::size_t c = 0; c < erased.size(); ++c) {
    if (erased[c]) chi.push_back(c);
  }
  if (chi.empty()) return true;
  if (code.parity_check().rows() == 0) return false;
  return gf::Rank(code.parity_check().SelectColumns(chi)) == chi.size();
}

std::vector<Value> DecodeMessage(const LinearCode& code,
                                 std::span<const std::size_t> info_set,
                                 std::span<const Value> values, const gf::Field& over) {
  if (info_set.size() != code.k() || values.size() != code.k()) {
    throw InvalidArgument("decoding needs k positions");
  }
  // m G|_I = values, i.e. (G|_I)^T m = values.
  const Matrix sub = code.generator().SelectColumns(info_set).Transpose();
  if (gf::Rank(sub) != code.k()) throw InvalidArgument("positions are not an information set");
  auto m = gf::Solve(sub, values, over);
  if (!m) throw VerificationFailure("inconsistent decoding system");
  return *m;
}

std::vector<Value> ErasureDecode(const LinearCode& code, std::span<const Value> word,
                                 std::span<const std::uint8_t> erased,
                                 const gf::Field& over) {
  if (word.size() != code.n() || erased.size() != code.n()) {
    throw InvalidArgument("word length must equal n");
  }
  if (!Correctable(code, erased)) throw InvalidArgument("uncorrectable erasure pattern");
  std::vector<std::size_t> known;
  for (std::size_t c = 0; c < code.n(); ++c) {
    if (!erased[c]) known.push_back(c);
  }
  // Pick an information set among the unerased coordinates greedily.
  const gf::Echelon e = gf::ReducedRowEchelon(code.generator().SelectColumns(known));
  std::vector<std::size_t> info;
  std::vector<Value> vals;
  for (auto p : e.pivots) {
    info.push_back(known[p]);
    vals.push_back(word[known[p]]);
  }
  const auto m = DecodeMessage(code, info, vals, over);
  auto out = code.Encode(m, over);
  for (auto c : known) {
    if (out[c] != word[c]) throw VerificationFailure("word is not a codeword off the erasures");
  }
  return out;
}

std::size_t DualMinDistance(const LinearCode& code) {
  if (code.is_grs()) return code.k() == code.n() ? code.n() + 1 : code.k() + 1;
  const std::size_t n = code.n();
  if (code.k() == n) return n + 1;
  double work = 0, binom = 1;
  for (std::size_t s = 1; s <= code.k() + 1; ++s) {
    binom = binom * static_cast<double>(n - s + 1) / static_cast<double>(s);
    work += binom;
  }
  if (work > static_cast<double>(1 << 22)) {
    throw InvalidArgument("dual distance search too large for a non-GRS code");
  }
  for (std::size_t s = 1; s <= code.k() + 1; ++s) {
    bool dependent = false;
    ForEachSubset(n, s, [&](std::span<const std::size_t> cols) {
      dependent = gf::Rank(code.generator().SelectColumns(cols)) < s;
      return !dependent;
    });
    if (dependent) return s;
  }
  return code.k() + 1;  // unreachable: any k + 1 columns are dependent
}

bool IsMds(const LinearCode& code) {
  bool ok = true;
  ForEachSubset(code.n(), code.k(), [&](std::span<const std::size_t> cols) {
    ok = IsInformationSet(code, cols);
    return ok;
  });
  return ok;
}

}  // namespace pircache::codes
