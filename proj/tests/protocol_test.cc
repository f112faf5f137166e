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

#include "pircache/protocol.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "pircache/error.h"

namespace pircache::pir {
namespace {

// Rank over Z/p by plain integer elimination.
std::size_t RankModP(std::vector<std::vector<long>> a, long p) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] % p == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    long inv = 1;
    while (a[rank][c] * inv % p != 1) ++inv;
    for (auto& x : a[rank]) x = x * inv % p;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const long f = a[r][c];
      for (std::size_t t = 0; t < cols; ++t) a[r][t] = ((a[r][t] - f * a[rank][t]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// Rows kappa_j^r, r < k, over Z/p with kappa = 1..n.
std::vector<std::vector<long>> PlainGrs(std::size_t n, std::size_t k, long p) {
  std::vector<std::vector<long>> g(k, std::vector<long>(n));
  for (std::size_t j = 0; j < n; ++j) {
    long x = 1;
    for (std::size_t r = 0; r < k; ++r, x = x * static_cast<long>(j + 1) % p) g[r][j] = x;
  }
  return g;
}

CachingScheme ExampleScheme() {
  auto gf2 = gf::MakeField(2, 1);
  std::vector<std::optional<codes::LinearCode>> c;
  c.emplace_back(codes::LinearCode::Repetition(gf2, 6));
  c.emplace_back(codes::LinearCode::SingleParityCheck(gf2, 6));
  return CachingScheme::Explicit(6, 1.2, 2, std::move(c));
}

FileLibrary ExampleLibrary() {
  FileLibrary lib;
  lib.beta = 1;
  lib.L = 5;
  lib.files = {Bits{1, 1, 0, 0, 1}, Bits{1, 0, 1, 1, 1}};
  lib.popularity = {0.5, 0.5};
  return lib;
}

std::vector<std::size_t> Range(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

QueryRandomness Constant(const ProtocolParams& p, Value v) {
  QueryRandomness r;
  r.codewords.assign(p.d, std::vector<std::vector<Value>>(p.columns(), std::vector<Value>(p.n, v)));
  return r;
}

std::vector<std::vector<Value>> AllResponses(const ProtocolParams& p, const QuerySet& qs,
                                             const EncodedCache& cache) {
  std::vector<std::vector<Value>> out;
  for (std::size_t l = 0; l < p.n; ++l) {
    out.push_back(Respond(qs.queries[l], cache.Column(p.coords[l]), *cache.max_field()));
  }
  return out;
}

TEST(PlanTest, WorkedExample) {
  auto p = PlanProtocol(ExampleScheme(), 1, Range(6));
  EXPECT_EQ(p.gamma, 1u);
  EXPECT_EQ(p.beta, 1u);
  EXPECT_EQ(p.d, 5u);
  EXPECT_EQ(p.ctilde->k(), 5u);
  EXPECT_EQ(p.cbar->generator(), codes::LinearCode::Repetition(gf::MakeField(2, 1), 6).generator());
}

TEST(PlanTest, SmallestInstance) {
  auto p = PlanProtocol(CachingScheme::Grs(3, 1.0, 4, {1}), 1, {0, 1});
  EXPECT_EQ(p.gamma, 1u);
  EXPECT_EQ(p.beta, 1u);
  EXPECT_EQ(p.d, 1u);
}

TEST(PlanTest, CollusionTwoMatchesHadamardRank) {
  auto p = PlanProtocol(CachingScheme::Grs(6, 0.5, 7, {2}), 2, Range(5));
  EXPECT_EQ(p.gamma, 2u);
  EXPECT_EQ(p.d, 2u);
  // Oracle: span of all products of rows of GRS(5,2) and GRS(5,2) over Z/7.
  const auto a = PlainGrs(5, 2, 7);
  std::vector<std::vector<long>> prods;
  for (const auto& x : a) {
    for (const auto& y : a) {
      std::vector<long> z(5);
      for (std::size_t j = 0; j < 5; ++j) z[j] = x[j] * y[j] % 7;
      prods.push_back(z);
    }
  }
  EXPECT_EQ(RankModP(prods, 7), 3u);
  EXPECT_EQ(p.ctilde->k(), 3u);
}

TEST(PlanTest, Errors) {
  EXPECT_THROW(PlanProtocol(CachingScheme::Grs(6, 1.0, 7, {2}), 1, {0, 1}), ConstraintViolation);
  EXPECT_THROW(PlanProtocol(CachingScheme::Grs(6, 1.0, 7, {2, 3}), 1, Range(6)),
               ConstraintViolation);
  EXPECT_THROW(PlanProtocol(CachingScheme::Grs(6, 1.0, 7, {2}), 0, Range(4)), InvalidArgument);
  EXPECT_THROW(PlanProtocol(CachingScheme::Grs(6, 1.0, 7, {2}), 1, {0, 0, 1}), InvalidArgument);
  EXPECT_THROW(PlanProtocol(CachingScheme::Grs(6, 1.0, 7, {2}), 1, {0, 1, 9}), InvalidArgument);
  EXPECT_THROW(PlanProtocol(CachingScheme::Grs(6, 1.0, 7, {0}), 1, Range(4)), InvalidArgument);
}

TEST(ErasureTest, WorkedExample) {
  auto p = PlanProtocol(ExampleScheme(), 1, Range(6));
  auto e = BuildErasureMatrix(p);
  ASSERT_EQ(e.rows.size(), 5u);
  for (std::size_t j = 0; j < 5; ++j) {
    std::vector<std::uint8_t> unit(6, 0);
    unit[j] = 1;
    EXPECT_EQ(e.rows[j], unit);
  }
  ASSERT_EQ(e.info_sets.size(), 1u);
  EXPECT_EQ(e.info_sets[0], (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  for (std::size_t l = 0; l < 5; ++l) EXPECT_EQ(e.f_sets[l], (std::vector<std::size_t>{0}));
  EXPECT_TRUE(e.f_sets[5].empty());
}

TEST(ErasureTest, CyclicSupports) {
  auto p = PlanProtocol(CachingScheme::Grs(4, 0.5, 5, {2}), 1, Range(4));
  ASSERT_EQ(p.gamma, 2u);
  ASSERT_EQ(p.d, 2u);
  auto e = BuildErasureMatrix(p);
  EXPECT_EQ(e.Support(0), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(e.Support(1), (std::vector<std::size_t>{1, 2}));
}

TEST(ErasureTest, AllOnesRowGivesSingletons) {
  auto sets = BuildInformationSets({{1, 1, 1}}, 3, 3, 1);
  for (std::size_t m = 0; m < 3; ++m) {
    EXPECT_EQ(sets.info_sets[m], (std::vector<std::size_t>{m}));
    EXPECT_EQ(sets.f_sets[m], (std::vector<std::size_t>{m}));
  }
  EXPECT_THROW(BuildInformationSets({{1, 1, 0}}, 3, 3, 1), InvalidArgument);
}

// The loop guard "while |F_l| <= w(t_l)" taken literally assigns one set too
// many to each coordinate (or runs past the last set).
TEST(ErasureTest, LiteralGuardOvershoots) {
  const std::vector<std::size_t> weight{1, 1, 1, 1, 1, 0};
  std::vector<std::size_t> fill(1, 0);
  bool overshoot = false;
  for (std::size_t l = 0; l < weight.size(); ++l) {
    std::size_t f = 0;
    for (std::size_t m = 0; f <= weight[l]; ++m) {
      if (m >= fill.size()) {
        overshoot = true;
        break;
      }
      if (fill[m] < 5) {
        ++f;
        ++fill[m];
      }
    }
    if (f != weight[l]) overshoot = true;
  }
  EXPECT_TRUE(overshoot);
}

struct RandomInstance {
  CachingScheme scheme;
  int T;
  std::vector<std::size_t> coords;
};

RandomInstance DrawInstance(Rng& rng) {
  static const std::uint64_t kQs[] = {9, 11, 13, 16};
  std::uniform_int_distribution<std::size_t> pick(0, 3);
  const std::uint64_t q = kQs[pick(rng)];
  const std::size_t n_sbs = std::uniform_int_distribution<std::size_t>(3, 8)(rng);
  const int T = std::uniform_int_distribution<int>(1, static_cast<int>(n_sbs) - 2)(rng);
  const int k_min = std::uniform_int_distribution<int>(1, static_cast<int>(n_sbs) - 1 - T)(rng);
  std::vector<int> multiples;
  for (int k = k_min; k + T < static_cast<int>(n_sbs); k += k_min) multiples.push_back(k);
  const std::size_t F = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
  std::vector<int> k(F, 0);
  k[0] = k_min;
  double M = 1.0 / k_min;
  for (std::size_t i = 1; i < F; ++i) {
    const std::size_t c = std::uniform_int_distribution<std::size_t>(0, multiples.size())(rng);
    if (c < multiples.size()) {
      k[i] = multiples[c];
      M += 1.0 / k[i];
    }
  }
  std::shuffle(k.begin(), k.end(), rng);
  const int k_max = *std::max_element(k.begin(), k.end());
  const std::size_t n =
      std::uniform_int_distribution<std::size_t>(static_cast<std::size_t>(k_max + T), n_sbs)(rng);
  auto coords = Range(n_sbs);
  std::shuffle(coords.begin(), coords.end(), rng);
  coords.resize(n);
  std::sort(coords.begin(), coords.end());
  return {CachingScheme::Grs(n_sbs, M, q, k), T, coords};
}

TEST(ErasureTest, RandomInstancesSatisfyConditions) {
  Rng rng = MakeRng(21);
  for (int trial = 0; trial < 60; ++trial) {
    auto inst = DrawInstance(rng);
    auto p = PlanProtocol(inst.scheme, inst.T, inst.coords);
    auto e = BuildErasureMatrix(p);
    EXPECT_EQ(p.gamma, p.n - static_cast<std::size_t>(p.k_max + inst.T - 1));
    std::size_t weight = 0;
    for (std::size_t j = 0; j < e.d; ++j) {
      EXPECT_EQ(e.Support(j).size(), p.gamma);  // C1
      EXPECT_TRUE(codes::Correctable(*p.ctilde, e.rows[j]));  // C2
      weight += e.Support(j).size();
    }
    EXPECT_EQ(weight, p.beta * static_cast<std::size_t>(p.k_max));
    for (std::size_t l = 0; l < p.n; ++l) EXPECT_EQ(e.ColumnWeight(l), e.f_sets[l].size());  // C3
    for (std::size_t i = 0; i < p.F; ++i) {
      if (inst.scheme.k[i]) EXPECT_GE(p.gamma * p.d, p.beta * inst.scheme.k[i]);
    }
    // Information sets: rank of the plain GRS generator on I_m, over the
    // prime field when q is prime, else through the library.
    const auto& field = *p.c_prime_max().field();
    for (const auto& im : e.info_sets) {
      ASSERT_EQ(im.size(), static_cast<std::size_t>(p.k_max));
      if (field.is_prime()) {
        const auto g = PlainGrs(inst.scheme.n_sbs, static_cast<std::size_t>(p.k_max),
                                static_cast<long>(field.order()));
        std::vector<std::vector<long>> sub(g.size());
        for (std::size_t r = 0; r < g.size(); ++r) {
          for (auto l : im) sub[r].push_back(g[r][p.coords[l]]);
        }
        EXPECT_EQ(RankModP(sub, static_cast<long>(field.order())), im.size());
      } else {
        EXPECT_TRUE(codes::IsInformationSet(p.c_prime_max(), im));
      }
    }
  }
}

TEST(QueryTest, WorkedExampleWithAllOnesCodewords) {
  auto p = PlanProtocol(ExampleScheme(), 1, Range(6));
  auto e = BuildErasureMatrix(p);
  auto qs = GenerateQueries(p, e, 0, Constant(p, 1));
  for (std::size_t l = 0; l < 6; ++l) {
    const auto row = qs.queries[l].Row(0);
    const std::vector<Value> want = l == 0 ? std::vector<Value>{0, 1} : std::vector<Value>{1, 1};
    EXPECT_TRUE(std::equal(row.begin(), row.end(), want.begin(), want.end())) << l;
  }
}

TEST(QueryTest, ZeroRandomnessLeavesUnitVectors) {
  auto p = PlanProtocol(CachingScheme::Grs(6, 1.5, 7, {2, 0, 1}), 1, Range(5));
  auto e = BuildErasureMatrix(p);
  auto qs = GenerateQueries(p, e, 2, Constant(p, 0));
  for (std::size_t l = 0; l < p.n; ++l) {
    for (std::size_t j = 0; j < p.d; ++j) {
      for (std::size_t t = 0; t < p.columns(); ++t) {
        const bool one = e.rows[j][l] && t == 2 * p.beta + e.s[j][l];
        EXPECT_EQ(qs.queries[l](j, t), one ? 1u : 0u);
      }
    }
  }
  EXPECT_THROW(GenerateQueries(p, e, 1, Constant(p, 0)), InvalidArgument);
}

TEST(RespondTest, ZeroQueryAndLinearity) {
  auto f = gf::MakeField(2, 5);
  auto gf2 = gf::MakeField(2, 1);
  Rng rng = MakeRng(8);
  std::uniform_int_distribution<Value> sym(0, 31), bit(0, 1);
  gf::Matrix zero(gf2, 3, 4), q(gf2, 3, 4);
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 4; ++c) q(r, c) = bit(rng);
  }
  std::vector<Value> a(4), b(4), ab(4);
  for (std::size_t t = 0; t < 4; ++t) {
    a[t] = sym(rng);
    b[t] = sym(rng);
    ab[t] = f->Add(a[t], b[t]);
  }
  for (Value v : Respond(zero, a, *f)) EXPECT_EQ(v, 0u);
  const auto ra = Respond(q, a, *f), rb = Respond(q, b, *f), rab = Respond(q, ab, *f);
  for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(rab[r], f->Add(ra[r], rb[r]));
  EXPECT_THROW(Respond(q, std::vector<Value>(3), *f), InvalidArgument);
}

TEST(RecoverTest, WorkedExampleDecomposition) {
  auto lib = ExampleLibrary();
  auto scheme = ExampleScheme();
  auto cache = EncodedCache::Encode(lib, scheme);
  auto p = PlanProtocol(scheme, 1, Range(6));
  auto e = BuildErasureMatrix(p);
  auto qs = GenerateQueries(p, e, 0, Constant(p, 1));
  auto responses = AllResponses(p, qs, cache);
  const auto& f = *cache.max_field();
  const Value x1 = 0b11001;
  const std::vector<Value> x2{1, 0, 1, 1, 1, 0};  // systematic parity: 1+0+1+1+1 = 0
  for (std::size_t l = 0; l < 6; ++l) {
    Value want = f.Add(x1, x2[l]);
    if (l == 0) want = f.Add(want, x1);
    EXPECT_EQ(responses[l][0], want) << l;
  }
  const auto& h = p.ctilde->parity_check();
  ASSERT_EQ(h.rows(), 1u);
  for (std::size_t l = 0; l < 6; ++l) EXPECT_EQ(h(0, l), 1u);
  std::vector<Value> rho(6);
  for (std::size_t l = 0; l < 6; ++l) rho[l] = responses[l][0];
  EXPECT_EQ(h.Apply(rho, f)[0], x1);
  auto rec = Recover(p, e, cache, 0, responses);
  EXPECT_EQ(rec.file, lib.files[0]);
  EXPECT_EQ(rec.o[0][0], x1);
  // The second file through the same machinery.
  Rng rng = MakeRng(3);
  auto q2 = GenerateQueries(p, e, 1, rng);
  EXPECT_EQ(Recover(p, e, cache, 1, AllResponses(p, q2, cache)).file, lib.files[1]);
}

TEST(RecoverTest, RepetitionPairReturnsStoredSymbol) {
  Rng rng = MakeRng(4);
  auto lib = FileLibrary::Random(1, 1, 6, {1.0}, rng);
  auto scheme = CachingScheme::Grs(3, 1.0, 4, {1});
  auto cache = EncodedCache::Encode(lib, scheme);
  auto p = PlanProtocol(scheme, 1, {0, 2});
  auto e = BuildErasureMatrix(p);
  auto qs = GenerateQueries(p, e, 0, rng);
  auto rec = Recover(p, e, cache, 0, AllResponses(p, qs, cache));
  EXPECT_EQ(rec.file, lib.files[0]);
  const std::size_t l = e.Support(0)[0];
  EXPECT_EQ(rec.o[0][l], cache.embedding(0).Embed(cache.Symbol(0, 0, p.coords[l])));
}

TEST(RecoverTest, RandomEndToEnd) {
  Rng rng = MakeRng(31);
  int run = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = DrawInstance(rng);
    auto p = PlanProtocol(inst.scheme, inst.T, inst.coords);
    auto e = BuildErasureMatrix(p);
    const std::size_t L = std::uniform_int_distribution<std::size_t>(1, 20)(rng);
    std::vector<double> pop(inst.scheme.F(), 1.0 / static_cast<double>(inst.scheme.F()));
    auto lib = FileLibrary::Random(inst.scheme.F(), p.beta, L, pop, rng);
    std::optional<EncodedCache> encoded;
    try {
      encoded = EncodedCache::Encode(lib, inst.scheme);
    } catch (const ConstraintViolation&) {
      continue;  // extension field beyond 64-bit symbols
    }
    const EncodedCache& cache = *encoded;
    ++run;
    for (auto i : inst.scheme.CachedFiles()) {
      auto qs = GenerateQueries(p, e, i, rng);
      auto responses = AllResponses(p, qs, cache);
      auto rec = Recover(p, e, cache, i, responses);
      ASSERT_EQ(rec.file, lib.files[i]) << "trial " << trial << " file " << i;
      std::size_t bits = 0;
      for (const auto& r : responses) bits += r.size() * static_cast<std::size_t>(
                                                  cache.layout().delta_max * cache.layout().w);
      EXPECT_EQ(bits, DownloadBits(p, cache));
      EXPECT_EQ(DownloadBits(p, cache),
                p.n * p.d * cache.layout().padded_L / static_cast<std::size_t>(p.k_min));
    }
  }
  EXPECT_GE(run, 30);
}

TEST(RecoverTest, CorruptedResponseIsDetected) {
  Rng rng = MakeRng(5);
  auto lib = FileLibrary::Random(2, 2, 8, {0.5, 0.5}, rng);
  auto scheme = CachingScheme::Grs(5, 1.5, 7, {1, 2});
  auto cache = EncodedCache::Encode(lib, scheme);
  auto p = PlanProtocol(scheme, 1, Range(4));
  ASSERT_EQ(p.beta, 2u);
  auto e = BuildErasureMatrix(p);
  for (std::size_t l = 0; l < p.n; ++l) {
    auto qs = GenerateQueries(p, e, 0, rng);
    auto responses = AllResponses(p, qs, cache);
    for (auto& v : responses[l]) v = cache.max_field()->Add(v, 1);
    EXPECT_THROW(Recover(p, e, cache, 0, responses), VerificationFailure) << l;
  }
}

TEST(RecoverTest, TranscriptListsEveryPart) {
  auto lib = ExampleLibrary();
  auto cache = EncodedCache::Encode(lib, ExampleScheme());
  auto p = PlanProtocol(ExampleScheme(), 1, Range(6));
  auto e = BuildErasureMatrix(p);
  auto qs = GenerateQueries(p, e, 0, Constant(p, 1));
  auto responses = AllResponses(p, qs, cache);
  std::ostringstream out;
  WriteTranscript(out, p, e, qs, responses, Recover(p, e, cache, 0, responses));
  const std::string s = out.str();
  EXPECT_EQ(s.rfind("pircache-transcript 1\n", 0), 0u);
  EXPECT_NE(s.find("query 0 0 0 1\n"), std::string::npos);
  EXPECT_NE(s.find("recovered 0 0:25\n"), std::string::npos);
  EXPECT_NE(s.find("bits 11001\n"), std::string::npos);
}

TEST(PrivacyTest, WorkedExampleIsPerfectlyPrivate) {
  auto p = PlanProtocol(ExampleScheme(), 1, Range(6));
  auto e = BuildErasureMatrix(p);
  for (std::size_t l = 0; l < 6; ++l) {
    const std::vector<std::size_t> t{l};
    auto r = VerifyPrivacyExact(p, e, t);
    EXPECT_EQ(r.outcomes, 1024u);
    EXPECT_EQ(r.tv_distance, 0.0) << l;
  }
  EXPECT_EQ(VerifyPrivacyExact(p, e, {}).tv_distance, 0.0);
}

TEST(PrivacyTest, SingleQueryIsUniformOverItsSupport) {
  auto p = PlanProtocol(ExampleScheme(), 1, Range(6));
  auto e = BuildErasureMatrix(p);
  const std::vector<std::size_t> t{2};
  for (std::size_t i = 0; i < 2; ++i) {
    std::map<std::string, int> counts;
    for (std::uint64_t seed = 0; seed < 1024; ++seed) {
      QueryRandomness r;
      r.codewords.resize(p.d);
      std::uint64_t x = seed;
      for (std::size_t j = 0; j < p.d; ++j) {
        for (std::size_t c = 0; c < 2; ++c, x >>= 1) {
          r.codewords[j].push_back(std::vector<Value>(6, x & 1));
        }
      }
      ++counts[ObservedQueries(GenerateQueries(p, e, i, r), t)];
    }
    EXPECT_EQ(counts.size(), 1024u);  // every 5 x 2 binary matrix exactly once
  }
}

TEST(PrivacyTest, UnmaskedQueriesRevealTheFile) {
  auto p = PlanProtocol(ExampleScheme(), 1, Range(6));
  auto e = BuildErasureMatrix(p);
  const std::vector<std::size_t> t{0};
  EXPECT_EQ(VerifyPrivacyExact(p, e, t, MaskMode::kNone).tv_distance, 1.0);
}

TEST(PrivacyTest, SharedMasksLeakAcrossRounds) {
  auto p = PlanProtocol(ExampleScheme(), 1, Range(6));
  auto e = BuildErasureMatrix(p);
  const std::vector<std::size_t> t{0};
  EXPECT_EQ(VerifyPrivacyExact(p, e, t, MaskMode::kShared).tv_distance, 1.0);
}

TEST(PrivacyTest, PairsArePrivateTriplesAreNot) {
  auto gf2 = gf::MakeField(2, 1);
  std::vector<std::optional<codes::LinearCode>> c;
  c.emplace_back(codes::LinearCode::Repetition(gf2, 3));
  c.emplace_back(codes::LinearCode::Repetition(gf2, 3));
  auto scheme = CachingScheme::Explicit(3, 2.0, 2, std::move(c));
  auto p = PlanProtocol(scheme, 2, Range(3), codes::LinearCode::SingleParityCheck(gf2, 3));
  ASSERT_EQ(p.gamma, 1u);
  auto e = BuildErasureMatrix(p);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) {
      const std::vector<std::size_t> t{a, b};
      EXPECT_EQ(VerifyPrivacyExact(p, e, t).tv_distance, 0.0);
    }
  }
  EXPECT_EQ(VerifyPrivacyExact(p, e, Range(3)).tv_distance, 1.0);
}

TEST(PrivacyTest, SampledModeSeparatesLeakFromNoise) {
  auto p = PlanProtocol(CachingScheme::Grs(4, 2.0, 5, {1, 1}), 1, Range(3));
  auto e = BuildErasureMatrix(p);
  Rng rng = MakeRng(9);
  const std::vector<std::size_t> t{1};
  auto good = VerifyPrivacySampled(p, e, t, 4000, rng);
  auto bad = VerifyPrivacySampled(p, e, t, 4000, rng, MaskMode::kNone);
  EXPECT_LT(good.tv_distance, good.noise_floor + 0.1);
  EXPECT_EQ(bad.tv_distance, 1.0);
  EXPECT_THROW(VerifyPrivacyExact(p, e, t, MaskMode::kFresh, 10), InvalidArgument);
}

}  // namespace
}  // namespace pircache::pir
