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

// Content placement and protocol parameter search.

#ifndef PIRCACHE_OPTIMIZER_H_
#define PIRCACHE_OPTIMIZER_H_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace pircache::optimizer {

struct Evaluation {
  int k = 0;  // 1 / mu
  std::size_t n = 0;
  std::size_t files = 0;  // files cached
  double R = 1;
  double D = 0;
  double C = 1;
};

struct Optimum {
  bool caching = false;  // false: no caching (R = C = 1, D = 0)
  int k = 0;
  std::size_t n = 0;
  std::size_t files = 0;
  double R = 1;
  double D = 0;
  double C = 1;
  std::vector<Evaluation> table;  // every scanned point, when requested

  double mu() const { return caching ? 1.0 / k : 0.0; }
  // Placement vector of the optimum over F files (k_i, 0 = not cached).
  std::vector<int> Placement(std::size_t F) const;
};

struct PirSearch {
  int T = 1;
  std::size_t n_sbs = 0;
  double theta = 0;
  // Largest n scanned; 0 selects max{b : gamma_b > 0} + k + T for each k,
  // capped at n_sbs. Beyond that bound the objective is monotone in n.
  std::size_t n_cap = 0;
  bool keep_table = false;
};

// Uniform placement scan over mu = 1/k and n in {k + T, ..., n_cap}
// minimizing R + theta D with floor(M k) most popular files cached.
// Ties go to smaller n, then larger mu; caching is reported only when it
// beats the no-caching value 1.
Optimum OptimizePir(std::span<const double> p, std::span<const double> gamma, double M,
                    const PirSearch& search);

// The M most popular files cached whole; minimum over n in {T + 1, ...}.
// `n` of the result is the minimizer; caching is false only when M < 1.
Optimum PopularPir(std::span<const double> p, std::span<const double> gamma, std::size_t M,
                   int T, std::size_t n_cap);

struct NoPirSearch {
  // Candidate code dimensions; empty selects {1, ..., 2 N_max} and n_sbs,
  // dropping the top of the range when its lcm would make the budget grid
  // exceed about 4e8 cells.
  std::vector<int> k_set;
  std::size_t n_sbs = 0;
};

struct NoPirOptimum {
  double R = 1;
  std::vector<int> k;  // per file, 0 = not cached
};

// Per-file placement by dynamic programming over the cache budget in units
// of 1 / lcm(k_set without its largest element). The largest candidate is
// assigned to a contiguous block after the others, which is optimal since
// more popular files never get a smaller mu. Throws InvalidArgument when
// the budget does not fit the discretization.
NoPirOptimum OptimizeNoPir(std::span<const double> p, std::span<const double> gamma, double M,
                           const NoPirSearch& search);

struct SweepRow {
  double axis = 0;
  Optimum best;
  double R_nopir_popular = 1;
  double R_pir_popular = 1;
};

// One optimum per axis value; `inputs` maps the axis value to
// (gamma, M). Rows are independent.
struct SweepPoint {
  std::vector<double> gamma;
  double M = 0;
};
std::vector<SweepRow> Sweep(std::span<const double> axis, std::span<const double> p,
                            const std::function<SweepPoint(double)>& inputs,
                            const PirSearch& search);

// CSV: axis,mu_star,k_star,n_star,R_PIR,D_PIR,C_PIR,R_noPIR_popular,R_PIR_popular
void WriteSweepCsv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace pircache::optimizer

#endif  // PIRCACHE_OPTIMIZER_H_
