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

// In-process network simulation: SBSs answer from their caches, the MBS
// answers from the plaintext library, and every response is accounted for
// bit by bit.

#ifndef PIRCACHE_SIMNET_H_
#define PIRCACHE_SIMNET_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "pircache/cache.h"
#include "pircache/protocol.h"
#include "pircache/rng.h"
#include "pircache/topology.h"

namespace pircache::simnet {

// Where a user's in-range SBS set comes from.
struct CoverageSampler {
  // Either b ~ gamma with a uniform b-subset of the SBSs...
  std::optional<topology::Coverage> gamma;
  // ...or the geometric grid; the SBS count must equal N_sbs.
  std::optional<topology::GridModel> grid;

  static CoverageSampler FromGamma(std::vector<double> gamma);
  static CoverageSampler FromGrid(topology::GridModel grid);
};

struct SessionParams {
  int T = 1;
  std::size_t n = 0;
  pir::MaskMode mask = pir::MaskMode::kFresh;
};

struct Plan {
  pir::ProtocolParams params;
  pir::ErasureMatrix ehat;
};

class Network {
 public:
  // Throws InvalidArgument when the sampler disagrees with the cache.
  // `cbar` replaces the default randomness code of every session.
  Network(FileLibrary library, EncodedCache cache, CoverageSampler coverage,
          std::optional<codes::LinearCode> cbar = std::nullopt);

  const FileLibrary& library() const { return library_; }
  const EncodedCache& cache() const { return cache_; }
  const CoverageSampler& coverage() const { return coverage_; }
  const std::vector<topology::Point>& sbs_positions() const { return positions_; }
  std::size_t n_sbs() const { return cache_.n_sbs(); }

  // Ascending SBS indices within range of a fresh user.
  std::vector<std::size_t> SampleInRange(Rng& rng) const;

  // Column of storage coordinate j as served by the SBS (from its cache) or
  // by the MBS (encoded on the fly from the library).
  std::vector<gf::Value> SbsColumn(std::size_t j) const { return cache_.Column(j); }
  std::vector<gf::Value> MbsColumn(std::size_t j) const;

  // Plans are memoized per coordinate set; not thread-safe.
  const Plan& GetPlan(int T, const std::vector<std::size_t>& coords) const;

 private:
  FileLibrary library_;
  EncodedCache cache_;
  CoverageSampler coverage_;
  std::vector<topology::Point> positions_;
  std::optional<codes::LinearCode> cbar_;
  mutable std::map<std::pair<int, std::vector<std::size_t>>, Plan> plans_;
};

struct RetrievalTranscript {
  std::size_t file = 0;
  bool cached = false;
  std::vector<std::size_t> in_range;     // b SBS indices
  std::vector<std::size_t> coords;       // storage coordinates used, ascending
  std::vector<std::uint8_t> from_sbs;    // per coordinate: answered by an SBS
  std::size_t target = 0;                // file the queries point at
  pir::QuerySet queries;                 // empty when nothing is cached
  std::vector<std::vector<gf::Value>> responses;  // empty for unsent queries
  std::size_t bits_from_mbs = 0;
  std::size_t bits_from_sbs = 0;
  Bits recovered;
  bool success = false;

  std::size_t b() const { return in_range.size(); }
};

// Storage coordinates for a session: the first min(b, n) in-range SBSs plus
// the lowest coordinates no SBS in range holds, sorted.
std::vector<std::size_t> ChooseCoordinates(std::span<const std::size_t> in_range,
                                           std::size_t n, std::size_t n_sbs);

// One request for `file`. `in_range` overrides the sampled coverage.
// Uncached files send dummy queries for a uniformly drawn cached file to the
// in-range SBSs and fetch the file from the MBS.
RetrievalTranscript RunRetrieval(const Network& net, const SessionParams& params,
                                 std::size_t file, Rng& rng,
                                 std::optional<std::vector<std::size_t>> in_range = {});

struct ClosedFormBits {
  std::size_t mbs = 0;
  std::size_t sbs = 0;
};

// MBS: (n - b)^+ d L'/k_min for cached files, beta L' otherwise.
// SBS: min(b, n) d L'/k_min whenever anything is cached.
ClosedFormBits ExpectedBits(const Network& net, const SessionParams& params, std::size_t b,
                            bool cached);

struct MonteCarloResult {
  std::size_t trials = 0;
  double R_hat = 0;
  double D_hat = 0;
  double R_se = 0;  // standard error of the mean
  double D_se = 0;
  std::size_t failures = 0;        // recovered file differs
  std::size_t bit_mismatches = 0;  // transcript totals differ from ExpectedBits
};

// Files drawn from the popularity profile; bits normalized by beta L'.
MonteCarloResult MonteCarlo(const Network& net, const SessionParams& params,
                            std::size_t trials, Rng& rng);

struct SpyReport {
  std::size_t sessions = 0;
  std::size_t patterns = 0;      // distinct observations
  double chi_square = 0;
  std::size_t dof = 0;
  double p_value = 1;
  double empirical_tv = 0;       // max over file pairs of observed frequencies
  bool independent(double alpha = 0.01) const { return p_value >= alpha; }
};

// The coalition `spies` (SBS indices) logs what it sees over `sessions`
// requests; a chi-square test checks independence of the observation and
// the requested file. Observations seen fewer than 5 times per file on
// average are pooled into one cell.
SpyReport SpyCoalition(const Network& net, const SessionParams& params,
                       std::span<const std::size_t> spies, std::size_t sessions, Rng& rng);

}  // namespace pircache::simnet

#endif  // PIRCACHE_SIMNET_H_
