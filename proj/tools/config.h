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

// Experiment configuration for the command-line front end. The JSON schema
// is documented in the README.

#ifndef PIRCACHE_TOOLS_CONFIG_H_
#define PIRCACHE_TOOLS_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pircache/cache.h"
#include "pircache/topology.h"

namespace pircache::tools {

struct LibraryConfig {
  std::size_t F = 0;
  std::size_t L = 8;
  std::optional<std::size_t> beta;  // default: the protocol's Gamma
  double alpha = 0.7;
  std::vector<double> p;            // explicit popularity, overrides alpha
  std::vector<Bits> files;          // explicit contents
};

struct TopologyConfig {
  std::vector<double> gamma;  // literal
  std::optional<topology::GridModel> grid;
  std::optional<std::size_t> grid_count;  // tune the spacing to this many SBSs
  std::size_t grid_samples = 1000000;
  std::optional<topology::PppModel> ppp;
};

struct SchemeConfig {
  std::size_t n_sbs = 0;
  double M = 0;
  std::uint64_t q = 0;     // default: smallest prime power above n_sbs
  std::vector<int> k;
  std::vector<std::string> codes;  // "grs", "repetition", "spc" per file
};

struct ProtocolConfig {
  int T = 1;
  std::optional<std::size_t> n;
  double theta = 0;
};

struct OptimizeConfig {
  std::vector<int> T{1};
  std::vector<double> theta{0};
  std::optional<std::size_t> n_sbs;
  std::size_t n_cap = 0;
  bool nopir = false;
  bool popular = true;
};

struct SweepConfig {
  std::string axis = "M";  // "M" or "lambda"
  double from = 1;
  double to = 1;
  double step = 1;
  std::vector<double> M;   // cache sizes for a lambda sweep
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  LibraryConfig library;
  TopologyConfig topology;
  std::optional<SchemeConfig> scheme;
  ProtocolConfig protocol;
  OptimizeConfig optimize;
  std::optional<SweepConfig> sweep;
};

// Throws InvalidArgument on schema errors.
ExperimentConfig ParseConfig(const nlohmann::json& j);
ExperimentConfig LoadConfig(const std::string& path);

// Popularity vector of the library section.
std::vector<double> Popularity(const ExperimentConfig& cfg);
// gamma from exactly one topology source; the grid is sampled with `seed`.
std::vector<double> ResolveGamma(const ExperimentConfig& cfg);
CachingScheme BuildScheme(const ExperimentConfig& cfg);
// n for the protocol section: explicit, or k_max + T - 1 + beta.
std::size_t ProtocolN(const ExperimentConfig& cfg, const CachingScheme& scheme);
// beta defaults to Gamma = n - T + 1 - k_max when n is explicit, else 1.
std::size_t LibraryBeta(const ExperimentConfig& cfg, const CachingScheme& scheme);
FileLibrary BuildLibrary(const ExperimentConfig& cfg, const CachingScheme& scheme);

// Smallest prime power >= x.
std::uint64_t NextPrimePower(std::uint64_t x);

}  // namespace pircache::tools

#endif  // PIRCACHE_TOOLS_CONFIG_H_
