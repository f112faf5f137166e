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

#include "pircache/optimizer.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>

#include "pircache/error.h"
#include "pircache/rates.h"

namespace pircache::optimizer {
namespace {

std::size_t NMax(std::span<const double> gamma) {
  std::size_t b = 0;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (gamma[i] > 0) b = i;
  }
  return b;
}

std::vector<double> Cumulative(std::span<const double> p) {
  std::vector<double> cum(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) cum[i + 1] = cum[i] + p[i];
  return cum;
}

std::size_t FilesFor(double M, int k, std::size_t F) {
  const double files = std::floor(M * k + 1e-9);
  return files >= static_cast<double>(F) ? F : static_cast<std::size_t>(std::max(0.0, files));
}

bool Better(const Evaluation& a, const Optimum& b) {
  if (a.C < b.C - rates::kSlack) return true;
  if (a.C > b.C + rates::kSlack) return false;
  return a.n < b.n || (a.n == b.n && a.k < b.k);
}

}  // namespace

std::vector<int> Optimum::Placement(std::size_t F) const {
  std::vector<int> k_i(F, 0);
  if (caching) std::fill(k_i.begin(), k_i.begin() + static_cast<std::ptrdiff_t>(files), k);
  return k_i;
}

Optimum OptimizePir(std::span<const double> p, std::span<const double> gamma, double M,
                    const PirSearch& search) {
  if (search.T < 1) throw InvalidArgument("T must be at least 1");
  if (search.n_sbs < 2) throw InvalidArgument("need at least two SBSs");
  if (M < 0) throw InvalidArgument("cache size must be non-negative");
  rates::WeightedRate(0, 0, search.theta);
  const auto cum = Cumulative(p);
  const std::size_t n_max = NMax(gamma);
  // Sentinel: the no-caching point, which any strict improvement replaces.
  Optimum best;
  best.n = std::numeric_limits<std::size_t>::max();
  bool feasible = false;
  for (int k = 1; static_cast<std::size_t>(k + search.T) <= search.n_sbs; ++k) {
    const std::size_t files = FilesFor(M, k, p.size());
    std::size_t cap = search.n_cap ? search.n_cap : n_max + static_cast<std::size_t>(k + search.T);
    cap = std::min(cap, search.n_sbs);
    for (std::size_t n = static_cast<std::size_t>(k + search.T); n <= cap; ++n) {
      feasible = true;
      if (files == 0) continue;
      Evaluation e;
      e.k = k;
      e.n = n;
      e.files = files;
      const double gamma_count = static_cast<double>(n) - search.T + 1 - k;
      e.R = std::max(0.0, cum[files] * rates::MissingResponders(gamma, n) / gamma_count +
                              (1 - cum[files]));
      e.D = rates::Responders(gamma, n) / gamma_count;
      e.C = e.R + search.theta * e.D;
      if (search.keep_table) best.table.push_back(e);
      if (e.C < 1 - rates::kSlack && Better(e, best)) {
        best.caching = true;
        best.k = e.k;
        best.n = e.n;
        best.files = e.files;
        best.R = e.R;
        best.D = e.D;
        best.C = e.C;
      }
    }
  }
  if (!feasible) throw ConstraintViolation("no feasible (mu, n): need n_sbs >= T + 1");
  if (!best.caching) best.n = 0;
  return best;
}

Optimum PopularPir(std::span<const double> p, std::span<const double> gamma, std::size_t M,
                   int T, std::size_t n_cap) {
  if (T < 1) throw InvalidArgument("T must be at least 1");
  if (n_cap < static_cast<std::size_t>(T + 1)) throw ConstraintViolation("need n_cap >= T + 1");
  const std::size_t files = std::min(M, p.size());
  Optimum best;
  if (files == 0) return best;
  const auto cum = Cumulative(p);
  best.caching = true;
  best.k = 1;
  best.files = files;
  best.C = std::numeric_limits<double>::infinity();
  for (std::size_t n = static_cast<std::size_t>(T + 1); n <= n_cap; ++n) {
    const double g = static_cast<double>(n) - T;
    const double R =
        std::max(0.0, cum[files] * rates::MissingResponders(gamma, n) / g + (1 - cum[files]));
    if (R < best.C - rates::kSlack) {
      best.n = n;
      best.R = best.C = R;
      best.D = rates::Responders(gamma, n) / g;
    }
  }
  return best;
}

NoPirOptimum OptimizeNoPir(std::span<const double> p, std::span<const double> gamma, double M,
                           const NoPirSearch& search) {
  if (M < 0) throw InvalidArgument("cache size must be non-negative");
  std::vector<int> ks = search.k_set;
  if (ks.empty()) {
    // 1..2 N_max, shortened until the budget grid fits the DP limits.
    const double F1 = static_cast<double>(p.size() + 1);
    const double M1 = std::min(M, static_cast<double>(p.size())) + 1;
    long l = 1;
    for (int k = 1; k <= static_cast<int>(2 * NMax(gamma)); ++k) {
      const long next = std::lcm(l, static_cast<long>(k));
      if (static_cast<double>(next) * M1 * F1 > 4e8 || next > (1L << 24)) break;
      l = next;
      ks.push_back(k);
    }
    if (search.n_sbs) ks.push_back(static_cast<int>(search.n_sbs));
    if (ks.empty()) ks.push_back(1);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.front() < 1) throw InvalidArgument("code dimensions must be positive");
  const std::size_t F = p.size();
  // Per-unit-popularity cost of caching with dimension k.
  auto cost = [&](int k) {
    double s = 0;
    for (std::size_t b = 0; b < gamma.size(); ++b) {
      s += gamma[b] * std::max(0.0, 1.0 - static_cast<double>(b) / k);
    }
    return s;
  };
  const int k_tail = ks.back();
  ks.pop_back();
  long units = 1;
  for (int k : ks) {
    units = std::lcm(units, static_cast<long>(k));
    if (units > (1L << 24)) throw InvalidArgument("budget discretization overflows");
  }
  const double budget_units = std::floor(M * static_cast<double>(units) + 1e-9);
  const double cap_units = static_cast<double>(F) * static_cast<double>(units);
  const std::size_t U = static_cast<std::size_t>(std::min(budget_units, cap_units));
  if (ks.size() > 255 || static_cast<double>(U + 1) * static_cast<double>(F + 1) > 4e8) {
    throw InvalidArgument("budget discretization is too fine for dynamic programming");
  }
  const double inf = std::numeric_limits<double>::infinity();
  const double tail_cost = cost(k_tail);
  const auto cum = Cumulative(p);
  // row[u]: least cost of caching the files seen so far with dimensions
  // from ks using at most u budget units; choice[i][u] is the index into ks
  // picked for file i - 1.
  std::vector<double> row(U + 1, 0.0), next(U + 1);
  std::vector<std::vector<std::uint8_t>> choice(F + 1, std::vector<std::uint8_t>(U + 1, 0));
  NoPirOptimum best;
  best.R = inf;
  std::size_t best_i = 0, best_s = 0, best_u = 0;
  for (std::size_t i = 0;; ++i) {
    // Close the prefix after i files: s files with k_tail, the rest uncached.
    for (std::size_t u = 0; u <= U; ++u) {
      if (row[u] == inf) continue;
      const double left = (M * static_cast<double>(units) - static_cast<double>(u)) * k_tail /
                          static_cast<double>(units);
      const std::size_t s = std::min<std::size_t>(
          F - i, static_cast<std::size_t>(std::max(0.0, std::floor(left + 1e-9))));
      const double v = row[u] + (cum[i + s] - cum[i]) * tail_cost + (1 - cum[i + s]);
      if (v < best.R - rates::kSlack) {
        best.R = v;
        best_i = i;
        best_s = s;
        best_u = u;
      }
    }
    if (i == F) break;
    std::fill(next.begin(), next.end(), inf);
    for (std::size_t c = 0; c < ks.size(); ++c) {
      const std::size_t w = static_cast<std::size_t>(units / ks[c]);
      const double add = p[i] * cost(ks[c]);
      for (std::size_t u = w; u <= U; ++u) {
        const double v = row[u - w] + add;
        if (v < next[u]) {
          next[u] = v;
          choice[i + 1][u] = static_cast<std::uint8_t>(c);
        }
      }
    }
    row.swap(next);
  }
  best.k.assign(F, 0);
  for (std::size_t t = best_i, u = best_u; t > 0; --t) {
    const int k = ks[choice[t][u]];
    best.k[t - 1] = k;
    u -= static_cast<std::size_t>(units / k);
  }
  for (std::size_t t = best_i; t < best_i + best_s; ++t) best.k[t] = k_tail;
  best.R = std::max(0.0, best.R);
  return best;
}

std::vector<SweepRow> Sweep(std::span<const double> axis, std::span<const double> p,
                            const std::function<SweepPoint(double)>& inputs,
                            const PirSearch& search) {
  std::vector<SweepRow> rows;
  for (double x : axis) {
    const SweepPoint pt = inputs(x);
    SweepRow row;
    row.axis = x;
    row.best = OptimizePir(p, pt.gamma, pt.M, search);
    const auto files = static_cast<std::size_t>(std::floor(pt.M + 1e-9));
    row.R_nopir_popular = rates::BackhaulNoPirPopular(p, files, pt.gamma);
    const std::size_t cap =
        search.n_cap ? search.n_cap
                     : std::min(search.n_sbs, NMax(pt.gamma) + static_cast<std::size_t>(search.T) + 1);
    row.R_pir_popular = PopularPir(p, pt.gamma, files, search.T, cap).R;
    rows.push_back(std::move(row));
  }
  return rows;
}

void WriteSweepCsv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "axis,mu_star,k_star,n_star,R_PIR,D_PIR,C_PIR,R_noPIR_popular,R_PIR_popular\n";
  out.precision(12);
  for (const auto& r : rows) {
    out << r.axis << ',' << r.best.mu() << ',' << r.best.k << ',' << r.best.n << ',' << r.best.R
        << ',' << r.best.D << ',' << r.best.C << ',' << r.R_nopir_popular << ','
        << r.R_pir_popular << '\n';
  }
}

}  // namespace pircache::optimizer
