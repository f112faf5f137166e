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

// File library, content placement and the MDS-coded SBS caches.
//
// Each file has beta stripes of L bits. A stripe of a file cached with code
// dimension k is zero padded to L' bits (L' is the smallest multiple of
// lcm(k_i) * w above L, w = floor(log2 q)), cut into k packets of L'/k bits
// and every packet becomes one symbol of GF(q^delta) with
// delta = L' / (k * w). Bits inside a packet are read big-endian: the first
// w-bit group is the highest-degree coefficient and the first bit of a group
// is its most significant bit.

#ifndef PIRCACHE_CACHE_H_
#define PIRCACHE_CACHE_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "pircache/field.h"
#include "pircache/linear_code.h"
#include "pircache/rng.h"

namespace pircache {

using Bits = std::vector<std::uint8_t>;  // one 0/1 entry per bit

struct FileLibrary {
  std::size_t beta = 1;  // stripes per file
  std::size_t L = 1;     // bits per stripe
  std::vector<Bits> files;         // each beta * L bits, stripe-major
  std::vector<double> popularity;  // non-increasing, sums to 1

  std::size_t F() const { return files.size(); }
  // Bits of stripe `a` of file `i`.
  std::span<const std::uint8_t> Stripe(std::size_t i, std::size_t a) const {
    return {files[i].data() + a * L, L};
  }
  // Throws InvalidArgument on size or popularity violations.
  void Validate() const;

  static FileLibrary Random(std::size_t F, std::size_t beta, std::size_t L,
                            std::vector<double> popularity, Rng& rng);
};

enum class CodeFamily {
  kGrs,       // default GRS over GF(q): v = 1, kappa = (1, ..., N_sbs)
  kExplicit,  // a generator matrix per cached file
};

struct CachingScheme {
  std::size_t n_sbs = 0;
  double M = 0;        // cache size in files
  std::uint64_t q = 2;
  std::vector<int> k;  // per file; 0 marks an uncached file
  CodeFamily family = CodeFamily::kGrs;
  // Storage codes (N_sbs, k_i) over GF(q), present for cached files.
  std::vector<std::optional<codes::LinearCode>> codes;

  // GRS storage codes for every cached file.
  static CachingScheme Grs(std::size_t n_sbs, double M, std::uint64_t q, std::vector<int> k);
  // One code per file (nullopt for uncached ones).
  static CachingScheme Explicit(std::size_t n_sbs, double M, std::uint64_t q,
                                std::vector<std::optional<codes::LinearCode>> codes);

  std::size_t F() const { return k.size(); }
  bool cached(std::size_t i) const { return k[i] > 0; }
  double mu(std::size_t i) const { return k[i] > 0 ? 1.0 / k[i] : 0.0; }
  std::vector<std::size_t> CachedFiles() const;
  bool AnyCached() const;
  int k_min() const;  // over cached files; 0 when nothing is cached
  int k_max() const;

  // Throws ConstraintViolation naming the violated condition: sum mu_i <= M,
  // k_i <= N_sbs, k_min | k_i, and (for `pir`) k_i != N_sbs.
  void Validate(bool pir) const;
};

struct PackingLayout {
  int w = 1;                 // bits per GF(q) coefficient
  std::size_t L = 0;         // original stripe length
  std::size_t padded_L = 0;  // L'
  std::vector<int> delta;    // per file, 0 for uncached
  int delta_max = 1;

  std::size_t PacketBits(int k) const { return padded_L / static_cast<std::size_t>(k); }
};

PackingLayout ComputeLayout(std::size_t L, std::uint64_t q, std::span<const int> k);

// Bits per GF(q) symbol: floor(log2 q).
int BitsPerSymbol(std::uint64_t q);

// One stripe (L bits) to k symbols over GF(q^delta), delta = L'/(k w).
std::vector<gf::Value> PackStripe(std::span<const std::uint8_t> bits, int k,
                                  std::uint64_t q, std::size_t padded_L);
// Inverse of PackStripe; returns the first L bits.
Bits UnpackStripe(std::span<const gf::Value> symbols, std::uint64_t q,
                  std::size_t padded_L, std::size_t L);

class EncodedCache {
 public:
  // Encodes every stripe of every cached file. Validates the scheme with the
  // given regime and the library against it.
  static EncodedCache Encode(const FileLibrary& library, const CachingScheme& scheme,
                             bool pir = true);

  const CachingScheme& scheme() const { return scheme_; }
  const PackingLayout& layout() const { return layout_; }
  std::size_t F() const { return scheme_.F(); }
  std::size_t beta() const { return beta_; }
  std::size_t n_sbs() const { return scheme_.n_sbs; }

  const gf::FieldPtr& base_field() const { return gf_q_; }
  const gf::FieldPtr& file_field(std::size_t i) const { return file_fields_[i]; }
  const gf::FieldPtr& max_field() const { return gf_max_; }
  // GF(q^delta_i) -> GF(q^delta_max).
  const gf::Embedding& embedding(std::size_t i) const { return *embeddings_[i]; }

  // c^(i)_{a,j} in GF(q^delta_i). Throws for uncached files or bad indices.
  gf::Value Symbol(std::size_t i, std::size_t a, std::size_t j) const;

  // (c^(1)_{1,j}, ..., c^(1)_{beta,j}, c^(2)_{1,j}, ...) embedded into
  // GF(q^delta_max); uncached files contribute zeros. Length beta * F.
  std::vector<gf::Value> Column(std::size_t j) const;

  // Rebuilds a stripe from k_i symbols at storage coordinates `coords`.
  Bits DecodeStripe(std::size_t i, std::span<const std::size_t> coords,
                    std::span<const gf::Value> symbols) const;

  // Symbols of SBS j for file i, stripe a, computed from plaintext. This is
  // how the MBS answers for coordinates no SBS in range holds.
  gf::Value SynthesizeSymbol(const FileLibrary& library, std::size_t i, std::size_t a,
                             std::size_t j) const;

  // Bits stored at one SBS: sum over cached files of beta * L' / k_i.
  std::size_t BitsPerSbs() const;

  // Binary snapshot. The plaintext library is appended when given so that a
  // reader can act as the MBS.
  void Save(std::ostream& out, const FileLibrary* library = nullptr) const;
  struct Loaded;
  static Loaded Load(std::istream& in);

  friend bool operator==(const EncodedCache& a, const EncodedCache& b);

 private:
  EncodedCache() = default;
  void InitFields();

  CachingScheme scheme_;
  PackingLayout layout_;
  std::size_t beta_ = 0;
  gf::FieldPtr gf_q_;
  gf::FieldPtr gf_max_;
  std::vector<gf::FieldPtr> file_fields_;
  std::vector<std::optional<gf::Embedding>> embeddings_;
  // symbols_[i][a * n_sbs + j]
  std::vector<std::vector<gf::Value>> symbols_;
};

struct EncodedCache::Loaded {
  EncodedCache cache;
  std::optional<FileLibrary> library;
};

}  // namespace pircache

#endif  // PIRCACHE_CACHE_H_
