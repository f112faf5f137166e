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

// Closed-form backhaul and SBS rates, normalized by the file size.
//
// Placements are given as code dimensions k_i (mu_i = 1/k_i, 0 = not
// cached), so cached and uncached files are told apart without comparing
// floating-point fractions.

#ifndef PIRCACHE_RATES_H_
#define PIRCACHE_RATES_H_

#include <cstddef>
#include <span>
#include <vector>

namespace pircache::rates {

// Comparison slack for rate values.
inline constexpr double kSlack = 1e-12;

// No PIR: sum_i p_i sum_b gamma_b max(0, 1/mu_i - b) mu_i for cached files
// plus the popularity of uncached ones.
double BackhaulNoPir(std::span<const double> p, std::span<const int> k,
                     std::span<const double> gamma);
// The same rate as sum_i p_i sum_b gamma_b (1 - min(1, b mu_i)).
double BackhaulNoPirEquivalent(std::span<const double> p, std::span<const int> k,
                               std::span<const double> gamma);
// The M most popular files cached whole in every SBS.
double BackhaulNoPirPopular(std::span<const double> p, std::size_t M,
                            std::span<const double> gamma);

// gamma~ with the mass of b >= n collected at b = n (length n + 1).
std::vector<double> GammaTilde(std::span<const double> gamma, std::size_t n);

// sum_b gamma_b max(0, n - b): expected number of MBS-served coordinates.
double MissingResponders(std::span<const double> gamma, std::size_t n);
// sum_b gamma~_b b: expected number of SBS responders.
double Responders(std::span<const double> gamma, std::size_t n);

// mu_max / (mu_min (n - T + 1) - 1) = k_max / (k_min Gamma). Throws
// ConstraintViolation unless Gamma = n - T + 1 - k_max is positive.
double PirFactor(int k_min, int k_max, std::size_t n, int T);

// PIR backhaul rate with GRS codes.
double BackhaulPir(std::span<const double> p, std::span<const int> k,
                   std::span<const double> gamma, std::size_t n, int T);
// Rate from the SBSs; every request (cached or not) contacts the SBSs in
// range, so it does not depend on p. Zero when nothing is cached.
double SbsRatePir(std::span<const int> k, std::span<const double> gamma, std::size_t n, int T);

// R + theta D, theta in [0, 1].
double WeightedRate(double R, double D, double theta);

struct RateReport {
  double R_nopir = 1;
  double R_pir = 1;
  double D_pir = 0;
  double C_pir = 1;
};

RateReport Evaluate(std::span<const double> p, std::span<const int> k,
                    std::span<const double> gamma, std::size_t n, int T, double theta);

}  // namespace pircache::rates

#endif  // PIRCACHE_RATES_H_
