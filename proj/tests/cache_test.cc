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

#include "pircache/cache.h"

#include <sstream>

#include "gtest/gtest.h"
#include "pircache/error.h"

namespace pircache {
namespace {

using gf::Value;

std::vector<double> Uniform(std::size_t F) { return std::vector<double>(F, 1.0 / F); }

TEST(PackTest, FiveBitStripeExamples) {
  const Bits bits{1, 0, 1, 1, 0};
  auto one = PackStripe(bits, 1, 2, 5);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], 0b10110u);  // first bit is the x^4 coefficient
  EXPECT_LT(one[0], 32u);
  auto five = PackStripe(bits, 5, 2, 5);
  EXPECT_EQ(five, (std::vector<Value>{1, 0, 1, 1, 0}));
  EXPECT_EQ(UnpackStripe(one, 2, 5, 5), bits);
  EXPECT_EQ(UnpackStripe(five, 2, 5, 5), bits);
}

TEST(PackTest, ZeroBitsGiveZeroSymbols) {
  const Bits zeros(12, 0);
  for (int k : {1, 2, 3, 6}) {
    for (Value s : PackStripe(zeros, k, 2, 12)) EXPECT_EQ(s, 0u);
  }
}

TEST(PackTest, RoundTripWithPadding) {
  Rng rng = MakeRng(1);
  std::bernoulli_distribution bit(0.5);
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 16u}) {
    for (std::size_t L : {1u, 5u, 13u, 24u}) {
      std::vector<int> ks{1, 2, 4};
      auto layout = ComputeLayout(L, q, ks);
      EXPECT_EQ(layout.padded_L % (4 * layout.w), 0u);
      EXPECT_GE(layout.padded_L, L);
      EXPECT_LT(layout.padded_L, L + 4 * layout.w);
      for (int k : ks) {
        Bits bits(L);
        for (auto& b : bits) b = bit(rng);
        auto syms = PackStripe(bits, k, q, layout.padded_L);
        auto field = gf::MakeField(q, layout.delta[static_cast<std::size_t>(k == 1 ? 0 : k == 2 ? 1 : 2)]);
        for (Value s : syms) EXPECT_TRUE(field->Contains(s));
        EXPECT_EQ(UnpackStripe(syms, q, layout.padded_L, L), bits);
      }
    }
  }
}

TEST(LayoutTest, ExampleDeltas) {
  const std::vector<int> k{1, 5};
  auto layout = ComputeLayout(5, 2, k);
  EXPECT_EQ(layout.padded_L, 5u);
  EXPECT_EQ(layout.delta, (std::vector<int>{5, 1}));
  EXPECT_EQ(layout.delta_max, 5);
}

CachingScheme ExampleScheme() {
  auto gf2 = gf::MakeField(2, 1);
  std::vector<std::optional<codes::LinearCode>> c;
  c.emplace_back(codes::LinearCode::Repetition(gf2, 6));
  c.emplace_back(codes::LinearCode::SingleParityCheck(gf2, 6));
  return CachingScheme::Explicit(6, 1.2, 2, std::move(c));
}

TEST(EncodeTest, ExampleLayout) {
  FileLibrary lib;
  lib.beta = 1;
  lib.L = 5;
  lib.files = {Bits{1, 1, 0, 0, 1}, Bits{1, 0, 1, 1, 1}};
  lib.popularity = {0.5, 0.5};
  auto cache = EncodedCache::Encode(lib, ExampleScheme());
  const Value x1 = 0b11001;
  for (std::size_t j = 0; j < 6; ++j) {
    EXPECT_EQ(cache.Symbol(0, 0, j), x1);
    const Value x2 = j < 5 ? lib.files[1][j] : (1 ^ 0 ^ 1 ^ 1 ^ 1);
    EXPECT_EQ(cache.Symbol(1, 0, j), x2);
    const auto col = cache.Column(j);
    ASSERT_EQ(col.size(), 2u);
    EXPECT_EQ(col[0], x1);
    EXPECT_EQ(col[1], x2);  // GF(2) embeds as constants
  }
  EXPECT_EQ(cache.BitsPerSbs(), 5u + 1u);
}

TEST(EncodeTest, NothingCached) {
  Rng rng = MakeRng(2);
  auto lib = FileLibrary::Random(3, 2, 8, Uniform(3), rng);
  auto cache = EncodedCache::Encode(lib, CachingScheme::Grs(4, 0, 5, {0, 0, 0}));
  EXPECT_EQ(cache.BitsPerSbs(), 0u);
  for (std::size_t j = 0; j < 4; ++j) {
    for (Value v : cache.Column(j)) EXPECT_EQ(v, 0u);
  }
  EXPECT_THROW(cache.Symbol(0, 0, 0), InvalidArgument);
  EXPECT_THROW(cache.Column(4), InvalidArgument);
}

TEST(EncodeTest, AnyKColumnsDecodeEveryStripe) {
  Rng rng = MakeRng(3);
  auto lib = FileLibrary::Random(4, 3, 22, Uniform(4), rng);
  auto scheme = CachingScheme::Grs(6, 2.0, 7, {2, 4, 0, 2});
  auto cache = EncodedCache::Encode(lib, scheme);
  for (auto i : scheme.CachedFiles()) {
    const std::size_t k = static_cast<std::size_t>(scheme.k[i]);
    for (std::size_t a = 0; a < lib.beta; ++a) {
      std::vector<Value> row(6);
      for (std::size_t j = 0; j < 6; ++j) row[j] = cache.Symbol(i, a, j);
      EXPECT_TRUE(scheme.codes[i]->Contains(row, *cache.file_field(i)));
      codes::ForEachSubset(6, k, [&](std::span<const std::size_t> coords) {
        std::vector<Value> vals;
        for (auto c : coords) vals.push_back(row[c]);
        const Bits got = cache.DecodeStripe(i, coords, vals);
        const auto want = lib.Stripe(i, a);
        EXPECT_TRUE(std::equal(got.begin(), got.end(), want.begin(), want.end()));
        return true;
      });
      for (std::size_t j = 0; j < 6; ++j) {
        EXPECT_EQ(cache.SynthesizeSymbol(lib, i, a, j), row[j]);
      }
    }
  }
}

TEST(EncodeTest, ColumnEmbeddingRoundTrip) {
  Rng rng = MakeRng(4);
  auto lib = FileLibrary::Random(3, 2, 12, Uniform(3), rng);
  auto scheme = CachingScheme::Grs(5, 3.0, 8, {1, 2, 4});
  auto cache = EncodedCache::Encode(lib, scheme);
  EXPECT_EQ(cache.layout().delta, (std::vector<int>{4, 2, 1}));
  EXPECT_EQ(cache.max_field()->order(), 4096u);
  for (std::size_t j = 0; j < 5; ++j) {
    const auto col = cache.Column(j);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t a = 0; a < 2; ++a) {
        EXPECT_EQ(cache.embedding(i).Project(col[i * 2 + a]), cache.Symbol(i, a, j));
      }
    }
  }
  // Storage per SBS: beta * L' / k_i bits per file, bounded by M beta L'.
  EXPECT_EQ(cache.BitsPerSbs(), 2 * (12 + 6 + 3));
  EXPECT_LE(cache.BitsPerSbs(), 3.0 * 2 * cache.layout().padded_L);
}

TEST(SchemeTest, ConstraintViolations) {
  EXPECT_THROW(CachingScheme::Grs(6, 1.0, 7, {1, 2}).Validate(true), ConstraintViolation);
  EXPECT_THROW(CachingScheme::Grs(6, 2.0, 7, {2, 3}).Validate(true), ConstraintViolation);
  EXPECT_THROW(CachingScheme::Grs(6, 2.0, 7, {6, 0}).Validate(true), ConstraintViolation);
  EXPECT_NO_THROW(CachingScheme::Grs(6, 2.0, 7, {6, 0}).Validate(false));
  EXPECT_NO_THROW(CachingScheme::Grs(6, 1.0, 7, {2, 2}).Validate(true));
  EXPECT_THROW(CachingScheme::Grs(7, 1.0, 7, {2, 2}), ConstraintViolation);
}

TEST(LibraryTest, Validation) {
  FileLibrary lib;
  lib.beta = 1;
  lib.L = 2;
  lib.files = {Bits{0, 1}, Bits{1, 1}};
  lib.popularity = {0.3, 0.7};
  EXPECT_THROW(lib.Validate(), InvalidArgument);
  lib.popularity = {0.7, 0.3};
  EXPECT_NO_THROW(lib.Validate());
  lib.files[0].push_back(0);
  EXPECT_THROW(lib.Validate(), InvalidArgument);
}

TEST(SnapshotTest, RoundTripIsByteIdentical) {
  Rng rng = MakeRng(5);
  auto lib = FileLibrary::Random(3, 2, 9, {0.5, 0.3, 0.2}, rng);
  for (const auto& scheme : {CachingScheme::Grs(4, 2.0, 5, {1, 2, 0}), ExampleScheme()}) {
    FileLibrary l = lib;
    if (scheme.F() == 2) {
      l = FileLibrary::Random(2, 1, 5, {0.6, 0.4}, rng);
    }
    auto cache = EncodedCache::Encode(l, scheme);
    std::stringstream first;
    cache.Save(first, &l);
    auto loaded = EncodedCache::Load(first);
    EXPECT_TRUE(loaded.cache == cache);
    ASSERT_TRUE(loaded.library);
    EXPECT_EQ(loaded.library->files, l.files);
    std::stringstream second;
    loaded.cache.Save(second, &*loaded.library);
    EXPECT_EQ(first.str(), second.str());
  }
}

TEST(SnapshotTest, RejectsGarbage) {
  std::stringstream junk("NOPE....");
  EXPECT_THROW(EncodedCache::Load(junk), InvalidArgument);
  Rng rng = MakeRng(6);
  auto lib = FileLibrary::Random(2, 1, 4, {0.5, 0.5}, rng);
  auto cache = EncodedCache::Encode(lib, CachingScheme::Grs(3, 1.0, 4, {2, 2}));
  std::stringstream s;
  cache.Save(s);
  std::string bytes = s.str();
  bytes.resize(bytes.size() - 5);
  std::stringstream cut(bytes);
  EXPECT_THROW(EncodedCache::Load(cut), InvalidArgument);
}

}  // namespace
}  // namespace pircache
