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

// Popularity and coverage models: Zipf popularity, regular-grid and
// Poisson SBS deployments, and the distribution gamma_b of the number of
// SBSs in range of a user.

#ifndef PIRCACHE_TOPOLOGY_H_
#define PIRCACHE_TOPOLOGY_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pircache/rng.h"

namespace pircache::topology {

// p_i proportional to i^-alpha, i = 1..F.
std::vector<double> Zipf(std::size_t F, double alpha);

struct Coverage {
  std::vector<double> gamma;  // gamma[b], b = 0..N

  std::size_t n_max() const;  // largest b with gamma_b > 0
  // Throws InvalidArgument unless gamma is a probability vector (1e-9).
  void Validate() const;
};

struct Point {
  double x = 0;
  double y = 0;
};

// Square lattice of SBSs. Users are uniform in the disc of radius D; SBSs
// sit on the lattice points inside the (possibly larger) deployment disc, so
// users near the edge still see a full neighbourhood. With half_offset the
// lattice points are at ((i + 1/2) s, (j + 1/2) s).
struct GridModel {
  double D = 500;
  double spacing = 60;
  double r = 60;
  double deploy_radius = 600;
  bool half_offset = true;
  double phi = 1;  // user density; cancels in gamma

  std::vector<Point> Sbs() const;  // row-major by (y, x)
  std::size_t SbsCount() const { return Sbs().size(); }
  void Validate() const;
};

// 316 SBSs, 60 m spacing and range, users within 500 m.
GridModel PaperGrid();

// A spacing for which the deployment disc holds exactly `target` lattice
// points, closest to sqrt(pi R^2 / target). Throws InvalidArgument if none.
double TuneSpacing(const GridModel& model, std::size_t target);

// Area fractions by Monte Carlo over uniform user positions.
Coverage GridGamma(const GridModel& model, std::size_t samples, std::uint64_t seed);

struct PppModel {
  double lambda = 0;  // SBS density per m^2
  double r_u = 60;

  double psi() const;
  void Validate() const;
};

// Poisson pmf with mean psi, truncated where the tail drops below 1e-9 and
// renormalized.
Coverage PppGamma(const PppModel& model);

struct CoverageSample {
  Point user;
  std::vector<std::size_t> in_range;  // ascending SBS indices
};

CoverageSample SampleCoverage(const GridModel& model, const std::vector<Point>& sbs, Rng& rng);
// SBSs are drawn fresh for every sample in a square window around the user
// whose margin exceeds r_u; indices refer to that draw.
CoverageSample SampleCoverage(const PppModel& model, Rng& rng);

// CSV with header "b,gamma".
void WriteGammaCsv(std::ostream& out, const Coverage& c);
Coverage ReadGammaCsv(std::istream& in);

}  // namespace pircache::topology

#endif  // PIRCACHE_TOPOLOGY_H_
