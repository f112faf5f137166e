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

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "pircache/error.h"

namespace pircache::topology {
namespace {

// Lattice coordinate of index i.
double LatticeAt(const GridModel& m, long i) {
  return (static_cast<double>(i) + (m.half_offset ? 0.5 : 0.0)) * m.spacing;
}

long LatticeFloor(const GridModel& m, double x) {
  return static_cast<long>(std::floor(x / m.spacing - (m.half_offset ? 0.5 : 0.0)));
}

Point UniformInDisc(double radius, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double rad = radius * std::sqrt(u(rng));
  const double th = 2 * std::numbers::pi * u(rng);
  return {rad * std::cos(th), rad * std::sin(th)};
}

std::size_t CountInDisc(const GridModel& m) {
  const long reach = static_cast<long>(m.deploy_radius / m.spacing) + 2;
  std::size_t count = 0;
  for (long j = -reach; j <= reach; ++j) {
    for (long i = -reach; i <= reach; ++i) {
      const double x = LatticeAt(m, i), y = LatticeAt(m, j);
      if (x * x + y * y <= m.deploy_radius * m.deploy_radius) ++count;
    }
  }
  return count;
}

// Number of lattice points inside the deployment disc within r of p.
std::size_t InRangeCount(const GridModel& m, Point p) {
  std::size_t c = 0;
  const double r2 = m.r * m.r, dep2 = m.deploy_radius * m.deploy_radius;
  for (long j = LatticeFloor(m, p.y - m.r); j <= LatticeFloor(m, p.y + m.r) + 1; ++j) {
    const double y = LatticeAt(m, j);
    for (long i = LatticeFloor(m, p.x - m.r); i <= LatticeFloor(m, p.x + m.r) + 1; ++i) {
      const double x = LatticeAt(m, i);
      if (x * x + y * y > dep2) continue;
      if ((x - p.x) * (x - p.x) + (y - p.y) * (y - p.y) <= r2) ++c;
    }
  }
  return c;
}

}  // namespace

std::vector<double> Zipf(std::size_t F, double alpha) {
  if (F == 0) throw InvalidArgument("F must be positive");
  if (!(alpha >= 0)) throw InvalidArgument("alpha must be non-negative");
  std::vector<double> p(F);
  double sum = 0;
  for (std::size_t i = 0; i < F; ++i) sum += p[i] = std::pow(static_cast<double>(i + 1), -alpha);
  for (auto& x : p) x /= sum;
  return p;
}

std::size_t Coverage::n_max() const {
  std::size_t b = 0;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (gamma[i] > 0) b = i;
  }
  return b;
}

void Coverage::Validate() const {
  if (gamma.empty()) throw InvalidArgument("empty coverage distribution");
  double sum = 0;
  for (double g : gamma) {
    if (!(g >= 0)) throw InvalidArgument("coverage probabilities must be non-negative");
    sum += g;
  }
  if (std::abs(sum - 1) > 1e-9) throw InvalidArgument("coverage probabilities must sum to 1");
}

void GridModel::Validate() const {
  if (!(D > 0) || !(spacing > 0) || !(r >= 0) || !(deploy_radius > 0)) {
    throw InvalidArgument("grid needs D > 0, spacing > 0, r >= 0, deploy_radius > 0");
  }
}

std::vector<Point> GridModel::Sbs() const {
  Validate();
  const long reach = static_cast<long>(deploy_radius / spacing) + 2;
  std::vector<Point> out;
  for (long j = -reach; j <= reach; ++j) {
    for (long i = -reach; i <= reach; ++i) {
      const Point p{LatticeAt(*this, i), LatticeAt(*this, j)};
      if (p.x * p.x + p.y * p.y <= deploy_radius * deploy_radius) out.push_back(p);
    }
  }
  return out;
}

GridModel PaperGrid() { return GridModel{}; }

double TuneSpacing(const GridModel& model, std::size_t target) {
  model.Validate();
  if (target == 0) throw InvalidArgument("target SBS count must be positive");
  const double guess =
      std::sqrt(std::numbers::pi * model.deploy_radius * model.deploy_radius / target);
  GridModel m = model;
  // Scan outward from the area-based guess in 0.01% steps.
  for (int step = 0; step <= 3000; ++step) {
    for (int sign : {1, -1}) {
      m.spacing = guess * (1 + sign * 1e-4 * step);
      if (CountInDisc(m) == target) return m.spacing;
    }
  }
  throw InvalidArgument("no spacing gives " + std::to_string(target) + " SBSs");
}

Coverage GridGamma(const GridModel& model, std::size_t samples, std::uint64_t seed) {
  model.Validate();
  if (samples == 0) throw InvalidArgument("need at least one sample");
  Rng rng = MakeRng(seed);
  std::vector<std::size_t> counts;
  for (std::size_t t = 0; t < samples; ++t) {
    const std::size_t b = InRangeCount(model, UniformInDisc(model.D, rng));
    if (b >= counts.size()) counts.resize(b + 1, 0);
    ++counts[b];
  }
  Coverage c;
  for (auto n : counts) c.gamma.push_back(static_cast<double>(n) / static_cast<double>(samples));
  return c;
}

double PppModel::psi() const { return lambda * std::numbers::pi * r_u * r_u; }

void PppModel::Validate() const {
  if (!(lambda >= 0) || !(r_u >= 0)) throw InvalidArgument("PPP needs lambda >= 0 and r_u >= 0");
}

Coverage PppGamma(const PppModel& model) {
  model.Validate();
  const double psi = model.psi();
  Coverage c;
  double term = std::exp(-psi), mass = 0;
  for (std::size_t b = 0;; ++b) {
    if (b > 0) term *= psi / static_cast<double>(b);
    c.gamma.push_back(term);
    mass += term;
    if (static_cast<double>(b) >= psi && 1 - mass < 1e-9) break;
  }
  for (auto& g : c.gamma) g /= mass;
  return c;
}

CoverageSample SampleCoverage(const GridModel& model, const std::vector<Point>& sbs, Rng& rng) {
  CoverageSample s;
  s.user = UniformInDisc(model.D, rng);
  const double r2 = model.r * model.r;
  for (std::size_t k = 0; k < sbs.size(); ++k) {
    const double dx = sbs[k].x - s.user.x, dy = sbs[k].y - s.user.y;
    if (dx * dx + dy * dy <= r2) s.in_range.push_back(k);
  }
  return s;
}

CoverageSample SampleCoverage(const PppModel& model, Rng& rng) {
  model.Validate();
  CoverageSample s;
  const double half = 2 * model.r_u + 1;
  std::poisson_distribution<std::size_t> count(model.lambda * 4 * half * half);
  std::uniform_real_distribution<double> coord(-half, half);
  const std::size_t n = count(rng);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = coord(rng), y = coord(rng);
    if (x * x + y * y <= model.r_u * model.r_u) s.in_range.push_back(k);
  }
  return s;
}

void WriteGammaCsv(std::ostream& out, const Coverage& c) {
  out << "b,gamma\n";
  out.precision(17);
  for (std::size_t b = 0; b < c.gamma.size(); ++b) out << b << ',' << c.gamma[b] << '\n';
}

Coverage ReadGammaCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("b,gamma", 0) != 0) {
    throw InvalidArgument("gamma CSV must start with the header b,gamma");
  }
  Coverage c;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::size_t b;
    char comma;
    double g;
    if (!(row >> b >> comma >> g) || comma != ',' || b != c.gamma.size()) {
      throw InvalidArgument("malformed gamma CSV row: " + line);
    }
    c.gamma.push_back(g);
  }
  c.Validate();
  return c;
}

}  // namespace pircache::topology
