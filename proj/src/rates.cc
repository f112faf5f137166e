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
#include <string>

#include "pircache/error.h"

namespace pircache::rates {
namespace {

void CheckPlacement(std::span<const double> p, std::span<const int> k) {
  if (p.size() != k.size()) throw InvalidArgument("popularity and placement lengths differ");
  for (int x : k) {
    if (x < 0) throw InvalidArgument("code dimensions must be non-negative");
  }
}

bool AnyCached(std::span<const int> k) {
  return std::any_of(k.begin(), k.end(), [](int x) { return x > 0; });
}

}  // namespace

double BackhaulNoPir(std::span<const double> p, std::span<const int> k,
                     std::span<const double> gamma) {
  CheckPlacement(p, k);
  double r = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (k[i] == 0) {
      r += p[i];
      continue;
    }
    double s = 0;
    for (std::size_t b = 0; b < gamma.size(); ++b) {
      s += gamma[b] * std::max(0.0, k[i] - static_cast<double>(b)) / k[i];
    }
    r += p[i] * s;
  }
  return r;
}

double BackhaulNoPirEquivalent(std::span<const double> p, std::span<const int> k,
                               std::span<const double> gamma) {
  CheckPlacement(p, k);
  double r = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double mu = k[i] ? 1.0 / k[i] : 0.0;
    for (std::size_t b = 0; b < gamma.size(); ++b) {
      r += p[i] * gamma[b] * (1 - std::min(1.0, static_cast<double>(b) * mu));
    }
  }
  return r;
}

double BackhaulNoPirPopular(std::span<const double> p, std::size_t M,
                            std::span<const double> gamma) {
  const double g0 = gamma.empty() ? 1.0 : gamma[0];
  double r = 0;
  for (std::size_t i = 0; i < p.size(); ++i) r += i < M ? g0 * p[i] : p[i];
  return r;
}

std::vector<double> GammaTilde(std::span<const double> gamma, std::size_t n) {
  std::vector<double> t(n + 1, 0.0);
  for (std::size_t b = 0; b < gamma.size(); ++b) t[std::min(b, n)] += gamma[b];
  return t;
}

double MissingResponders(std::span<const double> gamma, std::size_t n) {
  double s = 0;
  for (std::size_t b = 0; b < std::min(gamma.size(), n); ++b) {
    s += gamma[b] * static_cast<double>(n - b);
  }
  return s;
}

double Responders(std::span<const double> gamma, std::size_t n) {
  double s = 0;
  for (std::size_t b = 0; b < gamma.size(); ++b) s += gamma[b] * static_cast<double>(std::min(b, n));
  return s;
}

double PirFactor(int k_min, int k_max, std::size_t n, int T) {
  if (k_min <= 0 || k_max < k_min) throw InvalidArgument("need 0 < k_min <= k_max");
  const long gamma = static_cast<long>(n) - T + 1 - k_max;
  if (gamma <= 0) {
    throw ConstraintViolation("mu_min (n - T + 1) - 1 must be positive (n = " + std::to_string(n) +
                              ", T = " + std::to_string(T) + ", k_max = " + std::to_string(k_max) +
                              ")");
  }
  return static_cast<double>(k_max) / (static_cast<double>(k_min) * static_cast<double>(gamma));
}

double BackhaulPir(std::span<const double> p, std::span<const int> k,
                   std::span<const double> gamma, std::size_t n, int T) {
  CheckPlacement(p, k);
  double cached = 0, uncached = 0;
  int k_min = 0, k_max = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (k[i] == 0) {
      uncached += p[i];
      continue;
    }
    cached += p[i];
    k_min = k_min ? std::min(k_min, k[i]) : k[i];
    k_max = std::max(k_max, k[i]);
  }
  if (k_max == 0) return uncached;
  return PirFactor(k_min, k_max, n, T) * cached * MissingResponders(gamma, n) + uncached;
}

double SbsRatePir(std::span<const int> k, std::span<const double> gamma, std::size_t n, int T) {
  if (!AnyCached(k)) return 0;
  int k_min = 0, k_max = 0;
  for (int x : k) {
    if (x == 0) continue;
    k_min = k_min ? std::min(k_min, x) : x;
    k_max = std::max(k_max, x);
  }
  return PirFactor(k_min, k_max, n, T) * Responders(gamma, n);
}

double WeightedRate(double R, double D, double theta) {
  if (!(theta >= 0 && theta <= 1)) throw InvalidArgument("theta must lie in [0, 1]");
  return R + theta * D;
}

RateReport Evaluate(std::span<const double> p, std::span<const int> k,
                    std::span<const double> gamma, std::size_t n, int T, double theta) {
  RateReport r;
  r.R_nopir = BackhaulNoPir(p, k, gamma);
  r.R_pir = BackhaulPir(p, k, gamma, n, T);
  r.D_pir = SbsRatePir(k, gamma, n, T);
  r.C_pir = WeightedRate(r.R_pir, r.D_pir, theta);
  return r;
}

}  // namespace pircache::rates
