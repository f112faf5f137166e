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

#include "pircache/topology.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gtest/gtest.h"
#include "pircache/error.h"

namespace pircache::topology {
namespace {

TEST(ZipfTest, Examples) {
  for (double p : Zipf(4, 0)) EXPECT_DOUBLE_EQ(p, 0.25);
  const auto two = Zipf(2, 1);
  EXPECT_NEAR(two[0], 2.0 / 3, 1e-15);
  EXPECT_NEAR(two[1], 1.0 / 3, 1e-15);
  const auto p = Zipf(200, 0.7);
  double norm = 0;
  for (int i = 1; i <= 200; ++i) norm += 1 / std::pow(i, 0.7);
  double sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum += p[i];
    EXPECT_NEAR(p[i], 1 / std::pow(i + 1.0, 0.7) / norm, 1e-15);
    if (i) EXPECT_LE(p[i], p[i - 1]);
  }
  EXPECT_NEAR(sum, 1, 1e-12);
  EXPECT_THROW(Zipf(0, 1), InvalidArgument);
}

// Exact fraction of an infinite lattice cell covered by b discs, by a fine
// midpoint raster over one cell (spacing s, radius r).
std::vector<double> CellFractions(double s, double r, int res) {
  std::vector<double> frac(16, 0);
  const int reach = static_cast<int>(std::ceil(r / s)) + 1;
  for (int a = 0; a < res; ++a) {
    for (int c = 0; c < res; ++c) {
      const double x = (a + 0.5) * s / res, y = (c + 0.5) * s / res;
      int b = 0;
      for (int i = -reach; i <= reach; ++i) {
        for (int j = -reach; j <= reach; ++j) {
          const double dx = x - i * s, dy = y - j * s;
          b += dx * dx + dy * dy <= r * r;
        }
      }
      frac[static_cast<std::size_t>(b)] += 1.0 / (static_cast<double>(res) * res);
    }
  }
  return frac;
}

TEST(GridTest, PaperDeploymentMatchesLatticeGeometry) {
  const GridModel m = PaperGrid();
  EXPECT_EQ(m.SbsCount(), 316u);
  const auto c = GridGamma(m, 200000, 1);
  c.Validate();
  EXPECT_EQ(c.n_max(), 4u);
  const auto exact = CellFractions(60, 60, 1000);
  for (std::size_t b = 0; b < 5; ++b) EXPECT_NEAR(c.gamma[b], exact[b], 0.005) << b;
  const std::vector<double> paper{0, 0, 0.1736, 0.5113, 0.3151};
  for (std::size_t b = 0; b < 5; ++b) EXPECT_NEAR(c.gamma[b], paper[b], 0.01) << b;
}

TEST(GridTest, TrivialCases) {
  GridModel m = PaperGrid();
  m.r = 0;
  EXPECT_DOUBLE_EQ(GridGamma(m, 1000, 2).gamma[0], 1.0);
  m.r = 20;
  m.spacing = 100;
  const auto c = GridGamma(m, 20000, 3);
  EXPECT_LE(c.n_max(), 1u);
  EXPECT_GT(c.gamma[1], 0.0);
}

TEST(GridTest, SeedDeterminism) {
  const GridModel m = PaperGrid();
  EXPECT_EQ(GridGamma(m, 5000, 9).gamma, GridGamma(m, 5000, 9).gamma);
  EXPECT_NE(GridGamma(m, 5000, 9).gamma, GridGamma(m, 5000, 10).gamma);
}

TEST(GridTest, TuneSpacingHitsTarget) {
  GridModel m = PaperGrid();
  m.deploy_radius = 500;
  m.spacing = TuneSpacing(m, 316);
  EXPECT_EQ(m.SbsCount(), 316u);
  EXPECT_NEAR(m.spacing, 49.86, 0.2);
}

TEST(PppTest, Pmf) {
  EXPECT_DOUBLE_EQ(PppGamma({0, 60}).gamma[0], 1.0);
  const PppModel one{1 / (std::numbers::pi * 3600), 60};
  EXPECT_NEAR(one.psi(), 1, 1e-12);
  EXPECT_NEAR(PppGamma(one).gamma[0], std::exp(-1.0), 1e-9);
  const PppModel m{2e-4, 60};
  EXPECT_NEAR(m.psi(), 2e-4 * std::numbers::pi * 3600, 1e-15);
  const auto c = PppGamma(m);
  c.Validate();
  double f = 1;
  for (std::size_t b = 0; b < c.gamma.size(); ++b) {
    if (b) f *= static_cast<double>(b);
    EXPECT_NEAR(c.gamma[b], std::exp(-m.psi()) * std::pow(m.psi(), b) / f, 1e-9);
  }
}

// Empirical in-range counts agree with the coverage distribution within 3
// binomial standard errors.
void ExpectHistogramMatches(const std::vector<std::size_t>& counts, std::size_t n,
                            const std::vector<double>& gamma) {
  for (std::size_t b = 0; b < std::max(counts.size(), gamma.size()); ++b) {
    const double g = b < gamma.size() ? gamma[b] : 0;
    const double h = b < counts.size() ? static_cast<double>(counts[b]) / n : 0;
    const double sigma = std::sqrt(std::max(g * (1 - g), 1e-12) / n);
    EXPECT_LE(std::abs(h - g), 3 * sigma + 1e-9) << "b=" << b;
  }
}

TEST(SampleTest, PppSamplingMatchesPmf) {
  const PppModel m{2e-4, 60};
  Rng rng = MakeRng(4);
  std::vector<std::size_t> counts(64, 0);
  const std::size_t n = 100000;
  for (std::size_t t = 0; t < n; ++t) ++counts[SampleCoverage(m, rng).in_range.size()];
  ExpectHistogramMatches(counts, n, PppGamma(m).gamma);
}

TEST(SampleTest, GridSamplingMatchesExactCell) {
  const GridModel m = PaperGrid();
  const auto sbs = m.Sbs();
  Rng rng = MakeRng(5);
  std::vector<std::size_t> counts(16, 0);
  const std::size_t n = 100000;
  for (std::size_t t = 0; t < n; ++t) ++counts[SampleCoverage(m, sbs, rng).in_range.size()];
  ExpectHistogramMatches(counts, n, CellFractions(60, 60, 1000));
}

TEST(SampleTest, TrivialSets) {
  GridModel m{1e-9, 100, 10, 1, false, 1};
  const auto sbs = m.Sbs();
  ASSERT_EQ(sbs.size(), 1u);
  Rng rng = MakeRng(6);
  EXPECT_EQ(SampleCoverage(m, sbs, rng).in_range, (std::vector<std::size_t>{0}));
  m.r = 0;
  m.D = 50;
  EXPECT_TRUE(SampleCoverage(m, sbs, rng).in_range.empty());
}

TEST(CsvTest, RoundTrip) {
  Coverage c{{0, 0, 0.1736, 0.5113, 0.3151}};
  std::stringstream s;
  WriteGammaCsv(s, c);
  EXPECT_EQ(ReadGammaCsv(s).gamma, c.gamma);
  std::stringstream bad("b,gamma\n0,0.5\n2,0.5\n");
  EXPECT_THROW(ReadGammaCsv(bad), InvalidArgument);
  std::stringstream unnormalized("b,gamma\n0,0.5\n1,0.4\n");
  EXPECT_THROW(ReadGammaCsv(unnormalized), InvalidArgument);
}

}  // namespace
}  // namespace pircache::topology
