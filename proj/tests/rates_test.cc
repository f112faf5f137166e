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

#include "pircache/rates.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "pircache/error.h"
#include "pircache/rng.h"

namespace pircache::rates {
namespace {

const std::vector<double> kGrid{0, 0, 0.1736, 0.5113, 0.3151};

std::vector<double> RandomSimplex(std::size_t n, Rng& rng, bool sorted) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = e(rng);
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (auto& x : v) x /= s;
  if (sorted) std::sort(v.rbegin(), v.rend());
  return v;
}

TEST(NoPirTest, Examples) {
  const std::vector<double> p{0.5, 0.3, 0.2};
  EXPECT_NEAR(BackhaulNoPir(p, std::vector<int>{0, 0, 0}, kGrid), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(BackhaulNoPir(std::vector<double>{1.0}, std::vector<int>{1},
                                 std::vector<double>{0.5, 0.5}),
                   0.5);
  // k = 3 with two SBSs in range: one of three packets from the MBS.
  EXPECT_NEAR(BackhaulNoPir(std::vector<double>{1.0}, std::vector<int>{3},
                            std::vector<double>{0, 0, 1}),
              1.0 / 3, 1e-15);
  EXPECT_THROW(BackhaulNoPir(p, std::vector<int>{1, 1}, kGrid), InvalidArgument);
}

TEST(NoPirTest, EquivalentFormOnRandomInputs) {
  Rng rng = MakeRng(1);
  for (int t = 0; t < 10000; ++t) {
    const std::size_t F = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const std::size_t N = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    const auto p = RandomSimplex(F, rng, true);
    const auto gamma = RandomSimplex(N + 1, rng, false);
    std::vector<int> k(F);
    for (auto& x : k) x = std::uniform_int_distribution<int>(0, static_cast<int>(N))(rng);
    ASSERT_NEAR(BackhaulNoPir(p, k, gamma), BackhaulNoPirEquivalent(p, k, gamma), 1e-12);
  }
}

TEST(NoPirTest, Popular) {
  const std::vector<double> p{0.7, 0.3};
  EXPECT_DOUBLE_EQ(BackhaulNoPirPopular(p, 0, kGrid), 1.0);
  EXPECT_DOUBLE_EQ(BackhaulNoPirPopular(p, 1, kGrid), 0.3);
  EXPECT_NEAR(BackhaulNoPirPopular(p, 1, std::vector<double>{0.2, 0.8}), 0.44, 1e-15);
  // Same as the general formula with k = 1 on the popular files.
  EXPECT_NEAR(BackhaulNoPirPopular(p, 1, std::vector<double>{0.2, 0.8}),
              BackhaulNoPir(p, std::vector<int>{1, 0}, std::vector<double>{0.2, 0.8}), 1e-15);
}

TEST(PirTest, Examples) {
  const std::vector<double> p{0.5, 0.3, 0.2};
  EXPECT_DOUBLE_EQ(BackhaulPir(p, std::vector<int>{0, 0, 0}, kGrid, 3, 1), 1.0);
  EXPECT_DOUBLE_EQ(BackhaulPir(p, std::vector<int>{1, 1, 1}, kGrid, 2, 1), 0.0);
  // Popular placement with n = 2, T = 1 and gamma_0 = gamma_1 = 0.
  EXPECT_DOUBLE_EQ(BackhaulPir(p, std::vector<int>{1, 1, 0}, kGrid, 2, 1), 0.2);
  EXPECT_DOUBLE_EQ(BackhaulNoPirPopular(p, 2, kGrid), 0.2);
  // Hand value: k = (1, 2), n = 4, T = 1: Gamma = 2, factor 2 / 2 = 1.
  const double missing = 0.1736 * 2 + 0.5113 * 1;
  EXPECT_NEAR(BackhaulPir(p, std::vector<int>{1, 2, 0}, kGrid, 4, 1), 0.8 * missing + 0.2, 1e-15);
  EXPECT_THROW(BackhaulPir(p, std::vector<int>{2, 0, 0}, kGrid, 2, 1), ConstraintViolation);
}

TEST(PirTest, MonotoneUnderCoverageShift) {
  Rng rng = MakeRng(2);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t N = std::uniform_int_distribution<std::size_t>(2, 9)(rng);
    const auto gamma = RandomSimplex(N + 1, rng, false);
    const auto p = RandomSimplex(4, rng, true);
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    const int T = std::uniform_int_distribution<int>(1, 2)(rng);
    const std::size_t n = static_cast<std::size_t>(k + T) +
                          std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    const std::vector<int> place{k, k, 0, k};
    const std::size_t b = std::uniform_int_distribution<std::size_t>(0, N - 1)(rng);
    auto shifted = gamma;
    const double move = shifted[b] * std::uniform_real_distribution<double>(0, 1)(rng);
    shifted[b] -= move;
    shifted[b + 1] += move;
    ASSERT_LE(BackhaulPir(p, place, shifted, n, T), BackhaulPir(p, place, gamma, n, T) + 1e-12);
  }
}

TEST(SbsRateTest, Examples) {
  const std::vector<int> one{1};
  EXPECT_DOUBLE_EQ(SbsRatePir(one, std::vector<double>{1.0}, 2, 1), 0.0);
  EXPECT_DOUBLE_EQ(SbsRatePir(one, std::vector<double>{0, 0, 0.25, 0.75}, 2, 1), 2.0);
  EXPECT_DOUBLE_EQ(SbsRatePir(std::vector<int>{0, 0}, kGrid, 3, 1), 0.0);
  const auto t = GammaTilde(kGrid, 3);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_DOUBLE_EQ(t[2], 0.1736);
  EXPECT_NEAR(t[3], 0.8264, 1e-15);
  EXPECT_EQ(t[0] + t[1], 0.0);
  // D = factor * sum gamma~_b b.
  EXPECT_NEAR(SbsRatePir(std::vector<int>{1, 1}, kGrid, 3, 1), (0.1736 * 2 + 0.8264 * 3) / 2,
              1e-15);
}

TEST(WeightedTest, Examples) {
  EXPECT_DOUBLE_EQ(WeightedRate(0.3, 0.5, 0), 0.3);
  EXPECT_DOUBLE_EQ(WeightedRate(0.3, 0.5, 1), 0.8);
  const std::vector<double> p{0.6, 0.4};
  for (double theta : {0.0, 0.4, 1.0}) {
    EXPECT_DOUBLE_EQ(Evaluate(p, std::vector<int>{0, 0}, kGrid, 3, 1, theta).C_pir, 1.0);
  }
  EXPECT_THROW(WeightedRate(0, 0, 1.5), InvalidArgument);
}

}  // namespace
}  // namespace pircache::rates
