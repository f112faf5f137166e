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

// Private retrieval of one cached file from n storage-code coordinates
// against T colluding SBSs.
//
// Index conventions are 0-based throughout: protocol coordinate l in
// [0, n) refers to storage coordinate coords[l]; round j in [0, d); stripe m
// in [0, beta); file i in [0, F). The unit vector for stripe m of file i sits
// at column i * beta + m of a query matrix.

#ifndef PIRCACHE_PROTOCOL_H_
#define PIRCACHE_PROTOCOL_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pircache/cache.h"
#include "pircache/linear_code.h"
#include "pircache/matrix.h"
#include "pircache/rng.h"

namespace pircache::pir {

using codes::LinearCode;
using gf::Matrix;
using gf::Value;

struct ProtocolParams {
  std::size_t n = 0;
  int T = 1;
  int k_max = 0;
  int k_min = 0;
  std::size_t d = 0;      // subqueries per query, always k_max
  std::size_t gamma = 0;  // symbols recovered per round
  std::size_t beta = 0;   // stripes per file, equal to gamma
  std::size_t F = 0;
  std::vector<std::size_t> coords;
  std::vector<std::optional<LinearCode>> c_prime;  // punctured storage codes
  std::size_t max_file = 0;                        // a file with k_i = k_max
  std::optional<LinearCode> cbar;                  // (n, T) randomness code
  std::optional<LinearCode> ctilde;                // retrieval code

  std::size_t columns() const { return beta * F; }
  const LinearCode& c_prime_max() const { return *c_prime[max_file]; }
};

// Builds the parameters for contacting `coords`. Without `cbar` the
// randomness code is the (n, T) GRS code on the evaluation points of the
// punctured storage codes (all-ones weights), or the repetition code when
// T = 1 and the storage codes are not GRS.
//
// Throws ConstraintViolation when n < k_max + T or the retrieval code has
// rate 1, and for scheme violations; InvalidArgument for malformed input.
ProtocolParams PlanProtocol(const CachingScheme& scheme, int T,
                            std::vector<std::size_t> coords,
                            std::optional<LinearCode> cbar = std::nullopt);

struct ErasureMatrix {
  std::size_t d = 0;
  std::size_t n = 0;
  std::vector<std::vector<std::uint8_t>> rows;   // d x n, 0/1
  std::vector<std::vector<std::size_t>> info_sets;  // I_m, ascending
  std::vector<std::vector<std::size_t>> f_sets;     // F_l, ascending
  // s[j][l]: stripe read by round j at coordinate l, or kNone off support.
  std::vector<std::vector<std::size_t>> s;

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::vector<std::size_t> Support(std::size_t j) const;
  std::size_t ColumnWeight(std::size_t l) const;
};

// Rows with cyclic supports {j, ..., j + gamma - 1 mod n}, information sets
// from BuildInformationSets and ascending stripe assignment. Verifies C1-C3.
ErasureMatrix BuildErasureMatrix(const ProtocolParams& params);

struct InformationSets {
  std::vector<std::vector<std::size_t>> info_sets;
  std::vector<std::vector<std::size_t>> f_sets;
};

// Greedy construction: every coordinate l joins the first |t_l| sets that
// still have room, scanning from the first set.
InformationSets BuildInformationSets(const std::vector<std::vector<std::uint8_t>>& ehat,
                                     std::size_t beta, std::size_t n, std::size_t k_max);

// Throws VerificationFailure naming the first violated condition.
void CheckErasureMatrix(const ProtocolParams& params, const ErasureMatrix& e);

enum class MaskMode {
  kFresh,   // independent randomness codewords for every round
  kShared,  // one set of beta * F codewords reused by all d rounds
  kNone,    // no masking at all; queries reveal the file index
};

// codewords[j][t] is the randomness codeword (length n, over GF(q)) masking
// column t of every round-j subquery.
struct QueryRandomness {
  std::vector<std::vector<std::vector<Value>>> codewords;
};

QueryRandomness DrawRandomness(const ProtocolParams& params, MaskMode mode, Rng& rng);
// Number of distinct randomness draws, or nullopt beyond 2^62.
std::optional<std::uint64_t> RandomnessSpaceSize(const ProtocolParams& params,
                                                 MaskMode mode);

struct QuerySet {
  std::size_t file = 0;
  std::vector<Matrix> queries;  // one d x (beta F) matrix per coordinate
  QueryRandomness randomness;
};

QuerySet GenerateQueries(const ProtocolParams& params, const ErasureMatrix& e,
                         std::size_t file,
                         QueryRandomness randomness);
QuerySet GenerateQueries(const ProtocolParams& params, const ErasureMatrix& e,
                         std::size_t file, Rng& rng,
                         MaskMode mode = MaskMode::kFresh);

// r = Q column over `over`. Throws InvalidArgument on a length mismatch.
std::vector<Value> Respond(const Matrix& query, std::span<const Value> column,
                           const gf::Field& over);

struct Recovery {
  Bits file;  // beta * L bits
  // o[j][l]: symbol recovered in round j at coordinate l (GF(q^delta_max)),
  // zero off the support of row j.
  std::vector<std::vector<Value>> o;
};

// responses[l] is the response of coordinate l. Throws VerificationFailure
// when a round's linear system is inconsistent.
Recovery Recover(const ProtocolParams& params, const ErasureMatrix& e,
                 const EncodedCache& cache, std::size_t file,
                 const std::vector<std::vector<Value>>& responses);

// Bits downloaded: n * d subresponses of one GF(q^delta_max) symbol each.
std::size_t DownloadBits(const ProtocolParams& params, const EncodedCache& cache);

struct PrivacyReport {
  bool exact = false;
  std::size_t outcomes = 0;  // enumerated or sampled draws per file
  double tv_distance = 0;    // max over file pairs
  double noise_floor = 0;    // statistical mode: same-file split distance
};

// Total variation distance between the joint distributions of the queries
// seen by `colluders` (protocol coordinates) for different cached files.
// Exact mode enumerates every randomness draw and throws InvalidArgument if
// there are more than `max_outcomes`.
PrivacyReport VerifyPrivacyExact(const ProtocolParams& params, const ErasureMatrix& e,
                                 std::span<const std::size_t> colluders,
                                 MaskMode mode = MaskMode::kFresh,
                                 std::uint64_t max_outcomes = 1u << 22);
PrivacyReport VerifyPrivacySampled(const ProtocolParams& params, const ErasureMatrix& e,
                                     std::span<const std::size_t> colluders,
                                   std::size_t samples, Rng& rng,
                                   MaskMode mode = MaskMode::kFresh);

// Serializes the queries seen by `colluders` into a byte string; equal
// strings mean equal observations.
std::string ObservedQueries(const QuerySet& queries, std::span<const std::size_t> colluders);

// Plain-text transcript; format documented in the README.
void WriteTranscript(std::ostream& out, const ProtocolParams& params, const ErasureMatrix& e,
                     const QuerySet& queries, const std::vector<std::vector<Value>>& responses,
                     const Recovery& recovery);

}  // namespace pircache::pir

#endif  // PIRCACHE_PROTOCOL_H_
