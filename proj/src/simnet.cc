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

#include "pircache/simnet.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include <boost/math/distributions/chi_squared.hpp>

#include "pircache/error.h"

namespace pircache::simnet {

CoverageSampler CoverageSampler::FromGamma(std::vector<double> gamma) {
  CoverageSampler s;
  s.gamma = topology::Coverage{std::move(gamma)};
  s.gamma->Validate();
  return s;
}

CoverageSampler CoverageSampler::FromGrid(topology::GridModel grid) {
  grid.Validate();
  CoverageSampler s;
  s.grid = grid;
  return s;
}

Network::Network(FileLibrary library, EncodedCache cache, CoverageSampler coverage,
                 std::optional<codes::LinearCode> cbar)
    : library_(std::move(library)),
      cache_(std::move(cache)),
      coverage_(std::move(coverage)),
      cbar_(std::move(cbar)) {
  library_.Validate();
  if (library_.F() != cache_.F() || library_.beta != cache_.beta() ||
      library_.L != cache_.layout().L) {
    throw InvalidArgument("library does not match the encoded cache");
  }
  if (coverage_.gamma.has_value() == coverage_.grid.has_value()) {
    throw InvalidArgument("give exactly one coverage source");
  }
  if (coverage_.gamma) {
    coverage_.gamma->Validate();
    if (coverage_.gamma->n_max() > n_sbs()) {
      throw InvalidArgument("gamma puts mass on more SBSs than the network has");
    }
  } else {
    positions_ = coverage_.grid->Sbs();
    if (positions_.size() != n_sbs()) {
      throw InvalidArgument("grid holds " + std::to_string(positions_.size()) +
                            " SBSs but the cache has " + std::to_string(n_sbs()));
    }
  }
}

std::vector<std::size_t> Network::SampleInRange(Rng& rng) const {
  if (coverage_.grid) return topology::SampleCoverage(*coverage_.grid, positions_, rng).in_range;
  const auto& g = coverage_.gamma->gamma;
  std::discrete_distribution<std::size_t> pick(g.begin(), g.end());
  const std::size_t b = pick(rng);
  // Floyd's sampling of a uniform b-subset.
  std::vector<std::size_t> out;
  for (std::size_t j = n_sbs() - b; j < n_sbs(); ++j) {
    const std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(rng);
    out.push_back(std::find(out.begin(), out.end(), t) == out.end() ? t : j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<gf::Value> Network::MbsColumn(std::size_t j) const {
  if (j >= n_sbs()) throw InvalidArgument("unknown SBS index " + std::to_string(j));
  const std::size_t beta = cache_.beta();
  std::vector<gf::Value> col(beta * cache_.F(), 0);
  for (auto i : cache_.scheme().CachedFiles()) {
    for (std::size_t a = 0; a < beta; ++a) {
      col[i * beta + a] = cache_.embedding(i).Embed(cache_.SynthesizeSymbol(library_, i, a, j));
    }
  }
  return col;
}

const Plan& Network::GetPlan(int T, const std::vector<std::size_t>& coords) const {
  auto key = std::make_pair(T, coords);
  auto it = plans_.find(key);
  if (it == plans_.end()) {
    Plan plan{pir::PlanProtocol(cache_.scheme(), T, coords, cbar_), {}};
    plan.ehat = pir::BuildErasureMatrix(plan.params);
    it = plans_.emplace(std::move(key), std::move(plan)).first;
  }
  return it->second;
}

std::vector<std::size_t> ChooseCoordinates(std::span<const std::size_t> in_range, std::size_t n,
                                           std::size_t n_sbs) {
  if (n > n_sbs) throw ConstraintViolation("n exceeds N_sbs");
  std::vector<std::size_t> coords(in_range.begin(),
                                  in_range.begin() + static_cast<std::ptrdiff_t>(
                                                         std::min(n, in_range.size())));
  std::sort(coords.begin(), coords.end());
  std::vector<std::size_t> extra;
  for (std::size_t j = 0; coords.size() + extra.size() < n; ++j) {
    if (!std::binary_search(in_range.begin(), in_range.end(), j)) extra.push_back(j);
  }
  coords.insert(coords.end(), extra.begin(), extra.end());
  std::sort(coords.begin(), coords.end());
  return coords;
}

namespace {

std::size_t SymbolBits(const EncodedCache& cache) {
  const auto& layout = cache.layout();
  return static_cast<std::size_t>(layout.delta_max) * static_cast<std::size_t>(layout.w);
}

std::size_t FileBits(const EncodedCache& cache) {
  return cache.beta() * cache.layout().padded_L;
}

}  // namespace

RetrievalTranscript RunRetrieval(const Network& net, const SessionParams& params,
                                 std::size_t file, Rng& rng,
                                 std::optional<std::vector<std::size_t>> in_range) {
  const auto& cache = net.cache();
  if (file >= cache.F()) throw InvalidArgument("file index out of range");
  RetrievalTranscript tr;
  tr.file = file;
  tr.cached = cache.scheme().cached(file);
  tr.in_range = in_range ? std::move(*in_range) : net.SampleInRange(rng);
  std::sort(tr.in_range.begin(), tr.in_range.end());
  for (auto j : tr.in_range) {
    if (j >= net.n_sbs()) throw InvalidArgument("in-range SBS index out of range");
  }
  const auto cached_files = cache.scheme().CachedFiles();
  if (cached_files.empty()) {
    // Nothing to hide from the SBSs: the MBS serves the request.
    tr.bits_from_mbs = FileBits(cache);
    tr.recovered = net.library().files[file];
    tr.success = true;
    return tr;
  }

  tr.coords = ChooseCoordinates(tr.in_range, params.n, net.n_sbs());
  const std::size_t used = std::min(params.n, tr.b());
  for (auto c : tr.coords) {
    const auto it = std::find(tr.in_range.begin(), tr.in_range.end(), c);
    tr.from_sbs.push_back(it != tr.in_range.end() &&
                          static_cast<std::size_t>(it - tr.in_range.begin()) < used);
  }
  const Plan& plan = net.GetPlan(params.T, tr.coords);
  tr.target = tr.cached ? file
                        : cached_files[std::uniform_int_distribution<std::size_t>(
                              0, cached_files.size() - 1)(rng)];
  tr.queries = pir::GenerateQueries(plan.params, plan.ehat, tr.target, rng, params.mask);

  const gf::Field& over = *cache.max_field();
  const std::size_t symbol_bits = SymbolBits(cache);
  tr.responses.resize(params.n);
  for (std::size_t l = 0; l < params.n; ++l) {
    if (tr.from_sbs[l]) {
      tr.responses[l] = pir::Respond(tr.queries.queries[l], net.SbsColumn(tr.coords[l]), over);
      tr.bits_from_sbs += tr.responses[l].size() * symbol_bits;
    } else if (tr.cached) {
      tr.responses[l] = pir::Respond(tr.queries.queries[l], net.MbsColumn(tr.coords[l]), over);
      tr.bits_from_mbs += tr.responses[l].size() * symbol_bits;
    }
  }
  if (!tr.cached) {
    tr.bits_from_mbs += FileBits(cache);
    tr.recovered = net.library().files[file];
    tr.success = true;
    return tr;
  }
  try {
    tr.recovered = pir::Recover(plan.params, plan.ehat, cache, file, tr.responses).file;
    tr.success = tr.recovered == net.library().files[file];
  } catch (const VerificationFailure&) {
    tr.success = false;
  }
  return tr;
}

ClosedFormBits ExpectedBits(const Network& net, const SessionParams& params, std::size_t b,
                            bool cached) {
  const auto& cache = net.cache();
  ClosedFormBits out;
  if (!cache.scheme().AnyCached()) {
    out.mbs = FileBits(cache);
    return out;
  }
  const std::size_t per = static_cast<std::size_t>(cache.scheme().k_max()) *
                          cache.layout().padded_L /
                          static_cast<std::size_t>(cache.scheme().k_min());
  out.sbs = std::min(b, params.n) * per;
  out.mbs = cached ? (params.n - std::min(b, params.n)) * per : FileBits(cache);
  return out;
}

MonteCarloResult MonteCarlo(const Network& net, const SessionParams& params,
                            std::size_t trials, Rng& rng) {
  if (trials == 0) throw InvalidArgument("trials must be positive");
  const auto& p = net.library().popularity;
  std::discrete_distribution<std::size_t> pick(p.begin(), p.end());
  const double norm = static_cast<double>(FileBits(net.cache()));
  MonteCarloResult out;
  out.trials = trials;
  double r_sum = 0, r_sq = 0, d_sum = 0, d_sq = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto tr = RunRetrieval(net, params, pick(rng), rng);
    if (!tr.success) ++out.failures;
    const auto want = ExpectedBits(net, params, tr.b(), tr.cached);
    if (want.mbs != tr.bits_from_mbs || want.sbs != tr.bits_from_sbs) ++out.bit_mismatches;
    const double r = static_cast<double>(tr.bits_from_mbs) / norm;
    const double d = static_cast<double>(tr.bits_from_sbs) / norm;
    r_sum += r;
    r_sq += r * r;
    d_sum += d;
    d_sq += d * d;
  }
  const double n = static_cast<double>(trials);
  out.R_hat = r_sum / n;
  out.D_hat = d_sum / n;
  if (trials > 1) {
    out.R_se = std::sqrt(std::max(0.0, (r_sq - n * out.R_hat * out.R_hat) / (n - 1)) / n);
    out.D_se = std::sqrt(std::max(0.0, (d_sq - n * out.D_hat * out.D_hat) / (n - 1)) / n);
  }
  return out;
}

SpyReport SpyCoalition(const Network& net, const SessionParams& params,
                       std::span<const std::size_t> spies, std::size_t sessions, Rng& rng) {
  if (spies.size() > static_cast<std::size_t>(params.T)) {
    throw InvalidArgument("coalition larger than T");
  }
  for (auto s : spies) {
    if (s >= net.n_sbs()) throw InvalidArgument("spy index out of range");
  }
  const auto& p = net.library().popularity;
  const std::size_t F = p.size();
  std::discrete_distribution<std::size_t> pick(p.begin(), p.end());
  std::unordered_map<std::string, std::vector<std::size_t>> table;
  std::vector<std::size_t> file_totals(F, 0);
  for (std::size_t t = 0; t < sessions; ++t) {
    const std::size_t file = pick(rng);
    const auto tr = RunRetrieval(net, params, file, rng);
    std::string key;
    for (auto s : spies) {
      const auto it = std::find(tr.coords.begin(), tr.coords.end(), s);
      const std::size_t l = static_cast<std::size_t>(it - tr.coords.begin());
      if (it == tr.coords.end() || !tr.from_sbs[l]) {
        key.push_back('-');
        continue;
      }
      key.push_back('+');
      key += pir::ObservedQueries(tr.queries, std::span<const std::size_t>(&l, 1));
    }
    auto& row = table[key];
    row.resize(F, 0);
    ++row[file];
    ++file_totals[file];
  }

  SpyReport out;
  out.sessions = sessions;
  out.patterns = table.size();
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < F; ++i) {
    if (file_totals[i]) cols.push_back(i);
  }
  // Pool sparse observations.
  std::vector<std::vector<double>> rows;
  std::vector<double> pooled(cols.size(), 0);
  for (const auto& [key, counts] : table) {
    std::vector<double> r;
    double total = 0;
    for (auto c : cols) {
      r.push_back(static_cast<double>(counts[c]));
      total += r.back();
    }
    if (total < 5.0 * static_cast<double>(cols.size())) {
      for (std::size_t c = 0; c < cols.size(); ++c) pooled[c] += r[c];
    } else {
      rows.push_back(std::move(r));
    }
  }
  double pooled_total = 0;
  for (double v : pooled) pooled_total += v;
  if (pooled_total > 0) rows.push_back(pooled);

  for (std::size_t a = 0; a < cols.size(); ++a) {
    for (std::size_t b = a + 1; b < cols.size(); ++b) {
      double tv = 0;
      for (const auto& [key, counts] : table) {
        tv += std::abs(static_cast<double>(counts[cols[a]]) /
                           static_cast<double>(file_totals[cols[a]]) -
                       static_cast<double>(counts[cols[b]]) /
                           static_cast<double>(file_totals[cols[b]]));
      }
      out.empirical_tv = std::max(out.empirical_tv, tv / 2);
    }
  }

  if (rows.size() < 2 || cols.size() < 2) return out;
  const double n = static_cast<double>(sessions);
  for (const auto& r : rows) {
    double rt = 0;
    for (double v : r) rt += v;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const double expected = rt * static_cast<double>(file_totals[cols[c]]) / n;
      out.chi_square += (r[c] - expected) * (r[c] - expected) / expected;
    }
  }
  out.dof = (rows.size() - 1) * (cols.size() - 1);
  boost::math::chi_squared dist(static_cast<double>(out.dof));
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.chi_square));
  return out;
}

}  // namespace pircache::simnet
