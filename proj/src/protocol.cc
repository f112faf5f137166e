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

#include "pircache/protocol.h"

#include <algorithm>
#include <map>
#include <ranges>
#include <ostream>
#include <set>
#include <string>

#include "pircache/error.h"

namespace pircache::pir {
namespace {

std::string Str(std::size_t x) { return std::to_string(x); }

// q^e, or nullopt past 2^62.
std::optional<std::uint64_t> CheckedPow(std::uint64_t q, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t t = 0; t < e; ++t) {
    if (r > (std::uint64_t{1} << 62) / q) return std::nullopt;
    r *= q;
  }
  return r;
}

std::size_t RandomnessSets(const ProtocolParams& params, MaskMode mode) {
  return mode == MaskMode::kFresh ? params.d : 1;
}

// The index-th randomness draw in a fixed enumeration order: base-q digits
// of `index` are the message symbols, codeword by codeword.
QueryRandomness RandomnessFromIndex(const ProtocolParams& params, MaskMode mode,
                                    std::uint64_t index) {
  const LinearCode& cbar = *params.cbar;
  const std::uint64_t q = cbar.field()->order();
  const std::size_t sets = RandomnessSets(params, mode);
  QueryRandomness r;
  r.codewords.resize(params.d);
  std::vector<Value> msg(cbar.k());
  for (std::size_t j = 0; j < sets; ++j) {
    for (std::size_t t = 0; t < params.columns(); ++t) {
      for (auto& v : msg) {
        v = mode == MaskMode::kNone ? 0 : index % q;
        index /= q;
      }
      r.codewords[j].push_back(cbar.Encode(msg));
    }
  }
  for (std::size_t j = sets; j < params.d; ++j) r.codewords[j] = r.codewords[0];
  return r;
}

// Both count maps must sum to `total`.
double TotalVariation(const std::map<std::string, std::uint64_t>& a,
                      const std::map<std::string, std::uint64_t>& b, std::uint64_t total) {
  std::uint64_t sum = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      sum += ia->second;
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      sum += ib->second;
      ++ib;
    } else {
      sum += ia->second > ib->second ? ia->second - ib->second : ib->second - ia->second;
      ++ia;
      ++ib;
    }
  }
  return static_cast<double>(sum) / (2.0 * static_cast<double>(total));
}

void CheckColluders(const ProtocolParams& params, std::span<const std::size_t> colluders) {
  std::set<std::size_t> seen;
  for (auto l : colluders) {
    if (l >= params.n || !seen.insert(l).second) {
      throw InvalidArgument("colluders must be distinct protocol coordinates");
    }
  }
}

std::vector<std::size_t> CachedIndices(const ProtocolParams& params) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < params.F; ++i) {
    if (params.c_prime[i]) out.push_back(i);
  }
  return out;
}

}  // namespace

ProtocolParams PlanProtocol(const CachingScheme& scheme, int T, std::vector<std::size_t> coords,
                            std::optional<LinearCode> cbar) {
  scheme.Validate(true);
  if (T < 1) throw InvalidArgument("T must be at least 1");
  if (!scheme.AnyCached()) throw InvalidArgument("no file is cached");
  std::set<std::size_t> distinct(coords.begin(), coords.end());
  if (distinct.size() != coords.size()) throw InvalidArgument("repeated coordinate");
  for (auto c : coords) {
    if (c >= scheme.n_sbs) throw InvalidArgument("coordinate " + Str(c) + " out of range");
  }
  ProtocolParams p;
  p.n = coords.size();
  p.T = T;
  p.k_max = scheme.k_max();
  p.k_min = scheme.k_min();
  p.F = scheme.F();
  if (p.n < static_cast<std::size_t>(p.k_max + T)) {
    throw ConstraintViolation("n = " + Str(p.n) + " < k_max + T = " + Str(p.k_max + T) +
                              ": no symbols per round");
  }
  p.coords = std::move(coords);
  p.c_prime.resize(p.F);
  bool have_max = false;
  for (std::size_t i = 0; i < p.F; ++i) {
    if (!scheme.cached(i)) continue;
    p.c_prime[i] = codes::Puncture(*scheme.codes[i], p.coords);
    if (!have_max && scheme.k[i] == p.k_max) {
      p.max_file = i;
      have_max = true;
    }
  }
  const LinearCode& cmax = p.c_prime_max();
  const auto& gf_q = cmax.field();
  if (cbar) {
    if (cbar->n() != p.n || cbar->k() != static_cast<std::size_t>(T) ||
        !cbar->field()->SameAs(*gf_q)) {
      throw InvalidArgument("randomness code must be (n, T) over GF(q)");
    }
  } else if (cmax.is_grs()) {
    cbar = LinearCode::Grs(gf_q, p.n, static_cast<std::size_t>(T),
                           std::vector<Value>(p.n, 1), cmax.grs()->kappa);
  } else if (T == 1) {
    cbar = LinearCode::Repetition(gf_q, p.n);
  } else {
    cbar = LinearCode::DefaultGrs(gf_q, p.n, static_cast<std::size_t>(T));
  }
  p.cbar = std::move(cbar);

  std::optional<LinearCode> sum;
  for (const auto& c : p.c_prime) {
    if (!c) continue;
    sum = sum ? codes::SumCode(*sum, *c) : *c;
  }
  p.ctilde = codes::Hadamard(*sum, *p.cbar);
  const std::size_t kt = p.ctilde->k();
  if (kt >= p.n) throw ConstraintViolation("retrieval code has rate 1");
  if (kt != static_cast<std::size_t>(p.k_max + T - 1)) {
    throw ConstraintViolation("retrieval code has dimension " + Str(kt) +
                              ", expected k_max + T - 1 = " + Str(p.k_max + T - 1));
  }
  p.gamma = p.n - kt;
  p.beta = p.gamma;
  p.d = static_cast<std::size_t>(p.k_max);
  return p;
}

std::vector<std::size_t> ErasureMatrix::Support(std::size_t j) const {
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < n; ++l) {
    if (rows[j][l]) out.push_back(l);
  }
  return out;
}

std::size_t ErasureMatrix::ColumnWeight(std::size_t l) const {
  std::size_t w = 0;
  for (const auto& row : rows) w += row[l];
  return w;
}

InformationSets BuildInformationSets(const std::vector<std::vector<std::uint8_t>>& ehat,
                                     std::size_t beta, std::size_t n, std::size_t k_max) {
  std::vector<std::size_t> weight(n, 0);
  std::size_t total = 0;
  for (const auto& row : ehat) {
    if (row.size() != n) throw InvalidArgument("erasure matrix rows must have length n");
    for (std::size_t l = 0; l < n; ++l) {
      weight[l] += row[l] != 0;
      total += row[l] != 0;
    }
  }
  if (total != beta * k_max) {
    throw InvalidArgument("erasure matrix weight " + Str(total) + " != beta * k_max = " +
                          Str(beta * k_max));
  }
  InformationSets out;
  out.info_sets.assign(beta, {});
  out.f_sets.assign(n, {});
  for (std::size_t l = 0; l < n; ++l) {
    auto& f = out.f_sets[l];
    std::size_t m = 0;
    while (f.size() < weight[l]) {
      if (m >= beta) throw VerificationFailure("no room left for coordinate " + Str(l));
      if (out.info_sets[m].size() < k_max) {
        f.push_back(m);
        out.info_sets[m].push_back(l);
      }
      ++m;
    }
  }
  for (std::size_t m = 0; m < beta; ++m) {
    if (out.info_sets[m].size() != k_max) {
      throw VerificationFailure("information set " + Str(m) + " is incomplete");
    }
  }
  return out;
}

ErasureMatrix BuildErasureMatrix(const ProtocolParams& params) {
  ErasureMatrix e;
  e.d = params.d;
  e.n = params.n;
  e.rows.assign(e.d, std::vector<std::uint8_t>(e.n, 0));
  for (std::size_t j = 0; j < e.d; ++j) {
    for (std::size_t t = 0; t < params.gamma; ++t) e.rows[j][(j + t) % e.n] = 1;
  }
  auto sets = BuildInformationSets(e.rows, params.beta, e.n,
                                   static_cast<std::size_t>(params.k_max));
  e.info_sets = std::move(sets.info_sets);
  e.f_sets = std::move(sets.f_sets);
  e.s.assign(e.d, std::vector<std::size_t>(e.n, ErasureMatrix::kNone));
  for (std::size_t l = 0; l < e.n; ++l) {
    std::size_t next = 0;
    for (std::size_t j = 0; j < e.d; ++j) {
      if (e.rows[j][l]) e.s[j][l] = e.f_sets[l][next++];
    }
  }
  CheckErasureMatrix(params, e);
  return e;
}

void CheckErasureMatrix(const ProtocolParams& params, const ErasureMatrix& e) {
  if (e.rows.size() != params.d || e.n != params.n) {
    throw VerificationFailure("erasure matrix has the wrong shape");
  }
  for (std::size_t j = 0; j < e.d; ++j) {
    if (e.Support(j).size() != params.gamma) {
      throw VerificationFailure("C1: row " + Str(j) + " does not have gamma ones");
    }
    if (!codes::Correctable(*params.ctilde, e.rows[j])) {
      throw VerificationFailure("C2: row " + Str(j) + " is not correctable");
    }
  }
  for (std::size_t l = 0; l < e.n; ++l) {
    if (e.ColumnWeight(l) != e.f_sets[l].size()) {
      throw VerificationFailure("C3: column " + Str(l) + " weight differs from |F_l|");
    }
  }
  if (e.info_sets.size() != params.beta) throw VerificationFailure("need beta information sets");
  for (std::size_t m = 0; m < params.beta; ++m) {
    const auto& im = e.info_sets[m];
    if (im.size() != static_cast<std::size_t>(params.k_max) ||
        !codes::IsInformationSet(params.c_prime_max(), im)) {
      throw VerificationFailure("I_" + Str(m) + " is not an information set");
    }
    // Stripe m must be read exactly on I_m.
    std::vector<std::size_t> read;
    for (std::size_t l = 0; l < e.n; ++l) {
      for (std::size_t j = 0; j < e.d; ++j) {
        if (e.s[j][l] == m) read.push_back(l);
      }
    }
    if (read != im) throw VerificationFailure("stripe " + Str(m) + " is not read on I_m");
  }
  for (std::size_t l = 0; l < e.n; ++l) {
    std::set<std::size_t> used;
    for (std::size_t j = 0; j < e.d; ++j) {
      const std::size_t s = e.s[j][l];
      if ((s != ErasureMatrix::kNone) != (e.rows[j][l] != 0)) {
        throw VerificationFailure("stripe index off the row support");
      }
      if (s == ErasureMatrix::kNone) continue;
      if (!std::binary_search(e.f_sets[l].begin(), e.f_sets[l].end(), s) ||
          !used.insert(s).second) {
        throw VerificationFailure("stripe indices at coordinate " + Str(l) +
                                  " are not distinct members of F_l");
      }
    }
  }
}

QueryRandomness DrawRandomness(const ProtocolParams& params, MaskMode mode, Rng& rng) {
  const LinearCode& cbar = *params.cbar;
  std::uniform_int_distribution<Value> symbol(0, cbar.field()->order() - 1);
  const std::size_t sets = RandomnessSets(params, mode);
  QueryRandomness r;
  r.codewords.resize(params.d);
  std::vector<Value> msg(cbar.k());
  for (std::size_t j = 0; j < sets; ++j) {
    for (std::size_t t = 0; t < params.columns(); ++t) {
      for (auto& v : msg) v = mode == MaskMode::kNone ? 0 : symbol(rng);
      r.codewords[j].push_back(cbar.Encode(msg));
    }
  }
  for (std::size_t j = sets; j < params.d; ++j) r.codewords[j] = r.codewords[0];
  return r;
}

std::optional<std::uint64_t> RandomnessSpaceSize(const ProtocolParams& params, MaskMode mode) {
  if (mode == MaskMode::kNone) return 1;
  return CheckedPow(params.cbar->field()->order(),
                    params.cbar->k() * params.columns() * RandomnessSets(params, mode));
}

QuerySet GenerateQueries(const ProtocolParams& params, const ErasureMatrix& e, std::size_t file,
                         QueryRandomness randomness) {
  if (file >= params.F || !params.c_prime[file]) {
    throw InvalidArgument("file " + Str(file) + " is not cached");
  }
  if (randomness.codewords.size() != params.d) throw InvalidArgument("need d randomness sets");
  for (const auto& set : randomness.codewords) {
    if (set.size() != params.columns()) throw InvalidArgument("need beta * F codewords per set");
    for (const auto& c : set) {
      if (c.size() != params.n) throw InvalidArgument("randomness codeword length must be n");
    }
  }
  const auto& gf_q = params.cbar->field();
  QuerySet out;
  out.file = file;
  for (std::size_t l = 0; l < params.n; ++l) {
    Matrix q(gf_q, params.d, params.columns());
    for (std::size_t j = 0; j < params.d; ++j) {
      for (std::size_t t = 0; t < params.columns(); ++t) q(j, t) = randomness.codewords[j][t][l];
      const std::size_t s = e.s[j][l];
      if (s != ErasureMatrix::kNone) {
        Value& entry = q(j, file * params.beta + s);
        entry = gf_q->Add(entry, 1);
      }
    }
    out.queries.push_back(std::move(q));
  }
  out.randomness = std::move(randomness);
  return out;
}

QuerySet GenerateQueries(const ProtocolParams& params, const ErasureMatrix& e, std::size_t file,
                         Rng& rng, MaskMode mode) {
  return GenerateQueries(params, e, file, DrawRandomness(params, mode, rng));
}

std::vector<Value> Respond(const Matrix& query, std::span<const Value> column,
                           const gf::Field& over) {
  if (query.cols() != column.size()) {
    throw InvalidArgument("query has " + Str(query.cols()) + " columns, cache column has " +
                          Str(column.size()) + " symbols");
  }
  return query.Apply(column, over);
}

Recovery Recover(const ProtocolParams& params, const ErasureMatrix& e,
                 const EncodedCache& cache, std::size_t file,
                 const std::vector<std::vector<Value>>& responses) {
  if (file >= params.F || !params.c_prime[file]) {
    throw InvalidArgument("file " + Str(file) + " is not cached");
  }
  if (cache.beta() != params.beta || cache.F() != params.F) {
    throw InvalidArgument("cache layout does not match the protocol (beta must equal gamma)");
  }
  if (responses.size() != params.n) throw InvalidArgument("need one response per coordinate");
  for (const auto& r : responses) {
    if (r.size() != params.d) throw InvalidArgument("each response needs d subresponses");
  }
  const gf::Field& fmax = *cache.max_field();
  const Matrix& h = params.ctilde->parity_check();
  Recovery out;
  out.o.assign(params.d, std::vector<Value>(params.n, 0));
  for (std::size_t j = 0; j < params.d; ++j) {
    std::vector<Value> rho(params.n);
    for (std::size_t l = 0; l < params.n; ++l) rho[l] = responses[l][j];
    const auto syndrome = h.Apply(rho, fmax);
    const auto support = e.Support(j);
    auto sol = gf::Solve(h.SelectColumns(support), syndrome, fmax);
    if (!sol) throw VerificationFailure("round " + Str(j) + ": inconsistent responses");
    for (std::size_t t = 0; t < support.size(); ++t) out.o[j][support[t]] = (*sol)[t];
  }

  const LinearCode& code = *params.c_prime[file];
  const std::size_t k = code.k();
  const auto& emb = cache.embedding(file);
  const auto& field = *cache.file_field(file);
  const std::size_t L = cache.layout().L;
  out.file.assign(params.beta * L, 0);
  for (std::size_t m = 0; m < params.beta; ++m) {
    // Symbols of stripe m on I_m, in the file's own field.
    std::map<std::size_t, Value> got;
    for (std::size_t j = 0; j < params.d; ++j) {
      for (std::size_t l = 0; l < params.n; ++l) {
        if (e.s[j][l] != m) continue;
        if (!emb.InImage(out.o[j][l])) {
          throw VerificationFailure("recovered symbol lies outside the file's field");
        }
        got[l] = emb.Project(out.o[j][l]);
      }
    }
    const auto& im = e.info_sets[m];
    std::vector<std::size_t> chosen;
    codes::ForEachSubset(im.size(), k, [&](std::span<const std::size_t> idx) {
      std::vector<std::size_t> cand;
      for (auto t : idx) cand.push_back(im[t]);
      if (!codes::IsInformationSet(code, cand)) return true;
      chosen = std::move(cand);
      return false;
    });
    if (chosen.empty()) throw VerificationFailure("I_" + Str(m) + " holds no information set");
    std::vector<std::size_t> storage;
    std::vector<Value> symbols;
    for (auto l : chosen) {
      storage.push_back(params.coords[l]);
      symbols.push_back(got.at(l));
    }
    Bits bits;
    try {
      bits = cache.DecodeStripe(file, storage, symbols);
    } catch (const InvalidArgument& err) {
      throw VerificationFailure("stripe " + Str(m) + " does not decode: " + err.what());
    }
    // Every other symbol read for this stripe must agree with the decoded one.
    const auto msg = PackStripe(bits, static_cast<int>(k), cache.scheme().q,
                                cache.layout().padded_L);
    const auto word = code.Encode(msg, field);
    for (const auto& [l, v] : got) {
      if (word[l] != v) throw VerificationFailure("stripe " + Str(m) + " is inconsistent");
    }
    std::copy(bits.begin(), bits.end(), out.file.begin() + static_cast<std::ptrdiff_t>(m * L));
  }
  return out;
}

std::size_t DownloadBits(const ProtocolParams& params, const EncodedCache& cache) {
  return params.n * params.d * (cache.layout().padded_L / static_cast<std::size_t>(params.k_min));
}

std::string ObservedQueries(const QuerySet& queries, std::span<const std::size_t> colluders) {
  std::string key;
  for (auto l : colluders) {
    const Matrix& q = queries.queries.at(l);
    for (std::size_t r = 0; r < q.rows(); ++r) {
      for (Value v : q.Row(r)) {
        for (int b = 0; b < 8; ++b) key.push_back(static_cast<char>(v >> (8 * b)));
      }
    }
  }
  return key;
}

PrivacyReport VerifyPrivacyExact(const ProtocolParams& params, const ErasureMatrix& e,
                                 std::span<const std::size_t> colluders, MaskMode mode,
                                 std::uint64_t max_outcomes) {
  CheckColluders(params, colluders);
  const auto size = RandomnessSpaceSize(params, mode);
  if (!size || *size > max_outcomes) {
    throw InvalidArgument("randomness space too large for exact enumeration");
  }
  PrivacyReport report;
  report.exact = true;
  report.outcomes = static_cast<std::size_t>(*size);
  std::vector<std::map<std::string, std::uint64_t>> dist;
  for (auto i : CachedIndices(params)) {
    auto& d = dist.emplace_back();
    for (std::uint64_t idx = 0; idx < *size; ++idx) {
      auto qs = GenerateQueries(params, e, i, RandomnessFromIndex(params, mode, idx));
      ++d[ObservedQueries(qs, colluders)];
    }
  }
  for (std::size_t a = 0; a < dist.size(); ++a) {
    for (std::size_t b = a + 1; b < dist.size(); ++b) {
      report.tv_distance = std::max(report.tv_distance, TotalVariation(dist[a], dist[b], *size));
    }
  }
  return report;
}

PrivacyReport VerifyPrivacySampled(const ProtocolParams& params, const ErasureMatrix& e,
                                   std::span<const std::size_t> colluders, std::size_t samples,
                                   Rng& rng, MaskMode mode) {
  CheckColluders(params, colluders);
  if (samples == 0) throw InvalidArgument("need at least one sample");
  auto sample = [&](std::size_t i) {
    std::map<std::string, std::uint64_t> d;
    for (std::size_t t = 0; t < samples; ++t) {
      ++d[ObservedQueries(GenerateQueries(params, e, i, rng, mode), colluders)];
    }
    return d;
  };
  PrivacyReport report;
  report.outcomes = samples;
  const auto cached = CachedIndices(params);
  std::vector<std::map<std::string, std::uint64_t>> dist;
  for (auto i : cached) dist.push_back(sample(i));
  for (std::size_t a = 0; a < dist.size(); ++a) {
    for (std::size_t b = a + 1; b < dist.size(); ++b) {
      report.tv_distance = std::max(report.tv_distance, TotalVariation(dist[a], dist[b], samples));
    }
  }
  report.noise_floor = TotalVariation(dist.front(), sample(cached.front()), samples);
  return report;
}

void WriteTranscript(std::ostream& out, const ProtocolParams& params, const ErasureMatrix& e,
                     const QuerySet& queries, const std::vector<std::vector<Value>>& responses,
                     const Recovery& recovery) {
  auto list = [&](const auto& xs) {
    for (const auto& x : xs) out << ' ' << x;
    out << '\n';
  };
  out << "pircache-transcript 1\n";
  out << "params n=" << params.n << " T=" << params.T << " d=" << params.d
      << " gamma=" << params.gamma << " beta=" << params.beta << " F=" << params.F
      << " k_max=" << params.k_max << " k_min=" << params.k_min << '\n';
  out << "coords";
  list(params.coords);
  out << "file " << queries.file << '\n';
  for (std::size_t j = 0; j < e.d; ++j) {
    out << "ehat " << j;
    list(e.rows[j] | std::views::transform([](std::uint8_t b) { return int{b}; }));
  }
  for (std::size_t m = 0; m < e.info_sets.size(); ++m) {
    out << "info_set " << m;
    list(e.info_sets[m]);
  }
  for (std::size_t l = 0; l < params.n; ++l) {
    const Matrix& q = queries.queries[l];
    for (std::size_t j = 0; j < q.rows(); ++j) {
      out << "query " << l << ' ' << j;
      list(q.Row(j));
    }
  }
  for (std::size_t l = 0; l < responses.size(); ++l) {
    out << "response " << l;
    list(responses[l]);
  }
  for (std::size_t j = 0; j < recovery.o.size(); ++j) {
    out << "recovered " << j;
    for (auto l : e.Support(j)) out << ' ' << l << ':' << recovery.o[j][l];
    out << '\n';
  }
  out << "bits ";
  for (auto b : recovery.file) out << int{b};
  out << '\n';
}

}  // namespace pircache::pir
