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

#include "pircache/cache.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "pircache/error.h"

namespace pircache {

using gf::Value;

// --- FileLibrary -------------------------------------------------------------

void FileLibrary::Validate() const {
  if (beta == 0 || L == 0) throw InvalidArgument("beta and L must be positive");
  if (popularity.size() != files.size()) {
    throw InvalidArgument("popularity vector length must equal F");
  }
  double sum = 0;
  for (std::size_t i = 0; i < popularity.size(); ++i) {
    if (popularity[i] < 0) throw InvalidArgument("negative popularity");
    if (i > 0 && popularity[i] > popularity[i - 1] + 1e-15) {
      throw InvalidArgument("popularity must be non-increasing");
    }
    sum += popularity[i];
  }
  if (!files.empty() && std::abs(sum - 1.0) > 1e-12) {
    throw InvalidArgument("popularity must sum to 1");
  }
  for (const auto& f : files) {
    if (f.size() != beta * L) throw InvalidArgument("every file must have beta * L bits");
    for (auto b : f) {
      if (b > 1) throw InvalidArgument("bits must be 0 or 1");
    }
  }
}

FileLibrary FileLibrary::Random(std::size_t F, std::size_t beta, std::size_t L,
                                std::vector<double> popularity, Rng& rng) {
  FileLibrary lib;
  lib.beta = beta;
  lib.L = L;
  lib.popularity = std::move(popularity);
  std::bernoulli_distribution bit(0.5);
  lib.files.assign(F, Bits(beta * L));
  for (auto& f : lib.files) {
    for (auto& b : f) b = bit(rng);
  }
  lib.Validate();
  return lib;
}

// --- CachingScheme -----------------------------------------------------------

CachingScheme CachingScheme::Grs(std::size_t n_sbs, double M, std::uint64_t q,
                                 std::vector<int> k) {
  CachingScheme s;
  s.n_sbs = n_sbs;
  s.M = M;
  s.q = q;
  s.k = std::move(k);
  s.family = CodeFamily::kGrs;
  auto field = gf::MakeField(q, 1);
  s.codes.resize(s.k.size());
  for (std::size_t i = 0; i < s.k.size(); ++i) {
    if (s.k[i] < 0 || static_cast<std::size_t>(s.k[i]) > n_sbs) {
      throw ConstraintViolation("k_" + std::to_string(i + 1) + " must lie in [0, N_sbs]");
    }
    if (s.k[i] > 0) {
      if (n_sbs > field->order() - 1) {
        throw ConstraintViolation("GRS storage codes need N_sbs <= q - 1");
      }
      s.codes[i] = codes::LinearCode::DefaultGrs(field, n_sbs, static_cast<std::size_t>(s.k[i]));
    }
  }
  return s;
}

CachingScheme CachingScheme::Explicit(std::size_t n_sbs, double M, std::uint64_t q,
                                      std::vector<std::optional<codes::LinearCode>> codes) {
  CachingScheme s;
  s.n_sbs = n_sbs;
  s.M = M;
  s.q = q;
  s.family = CodeFamily::kExplicit;
  auto field = gf::MakeField(q, 1);
  for (auto& c : codes) {
    if (c) {
      if (!c->field()->SameAs(*field)) throw InvalidArgument("storage code over wrong field");
      if (c->n() != n_sbs) throw InvalidArgument("storage code length must equal N_sbs");
    }
    s.k.push_back(c ? static_cast<int>(c->k()) : 0);
  }
  s.codes = std::move(codes);
  return s;
}

std::vector<std::size_t> CachingScheme::CachedFiles() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] > 0) out.push_back(i);
  }
  return out;
}

bool CachingScheme::AnyCached() const {
  return std::any_of(k.begin(), k.end(), [](int x) { return x > 0; });
}

int CachingScheme::k_min() const {
  int best = 0;
  for (int x : k) {
    if (x > 0 && (best == 0 || x < best)) best = x;
  }
  return best;
}

int CachingScheme::k_max() const {
  int best = 0;
  for (int x : k) best = std::max(best, x);
  return best;
}

void CachingScheme::Validate(bool pir) const {
  if (n_sbs < 1) throw InvalidArgument("N_sbs must be positive");
  if (M < 0) throw InvalidArgument("M must be non-negative");
  if (codes.size() != k.size()) throw InvalidArgument("one code slot per file required");
  double used = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const std::string name = "k_" + std::to_string(i + 1);
    if (k[i] < 0 || static_cast<std::size_t>(k[i]) > n_sbs) {
      throw ConstraintViolation(name + " <= N_sbs violated");
    }
    if (k[i] == 0) continue;
    used += 1.0 / k[i];
    if (pir && static_cast<std::size_t>(k[i]) == n_sbs) {
      throw ConstraintViolation("mu_" + std::to_string(i + 1) +
                                " = 1/N_sbs is not allowed with PIR (needs redundancy)");
    }
    if (!codes[i] || codes[i]->k() != static_cast<std::size_t>(k[i]) ||
        codes[i]->n() != n_sbs) {
      throw InvalidArgument("storage code of file " + std::to_string(i + 1) +
                            " does not match (N_sbs, k_i)");
    }
  }
  if (used > M + 1e-12) {
    std::ostringstream os;
    os << "sum_i mu_i <= M violated: " << used << " > " << M;
    throw ConstraintViolation(os.str());
  }
  const int kmin = k_min();
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] > 0 && k[i] % kmin != 0) {
      throw ConstraintViolation("k_min | k_" + std::to_string(i + 1) + " violated (" +
                                std::to_string(kmin) + " does not divide " +
                                std::to_string(k[i]) + ")");
    }
  }
}

// --- Packing -----------------------------------------------------------------

int BitsPerSymbol(std::uint64_t q) {
  if (q < 2) throw InvalidArgument("q must be at least 2");
  int w = 0;
  while ((std::uint64_t{1} << (w + 1)) <= q) ++w;
  return w;
}

PackingLayout ComputeLayout(std::size_t L, std::uint64_t q, std::span<const int> k) {
  if (L == 0) throw InvalidArgument("stripe length must be positive");
  PackingLayout layout;
  layout.w = BitsPerSymbol(q);
  layout.L = L;
  std::size_t l = 1;
  int kmin = 0;
  for (int x : k) {
    if (x <= 0) continue;
    l = std::lcm(l, static_cast<std::size_t>(x));
    kmin = kmin == 0 ? x : std::min(kmin, x);
  }
  const std::size_t unit = l * static_cast<std::size_t>(layout.w);
  layout.padded_L = (L + unit - 1) / unit * unit;
  layout.delta.assign(k.size(), 0);
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] > 0) layout.delta[i] = static_cast<int>(layout.padded_L / (k[i] * layout.w));
  }
  layout.delta_max =
      kmin == 0 ? 1 : static_cast<int>(layout.padded_L / (kmin * layout.w));
  return layout;
}

std::vector<Value> PackStripe(std::span<const std::uint8_t> bits, int k, std::uint64_t q,
                              std::size_t padded_L) {
  const int w = BitsPerSymbol(q);
  const std::size_t packet = padded_L / static_cast<std::size_t>(k);
  const std::size_t delta = packet / static_cast<std::size_t>(w);
  if (packet * k != padded_L || delta * w != packet || bits.size() > padded_L) {
    throw InvalidArgument("stripe length is not a multiple of k * log2(q)");
  }
  std::vector<Value> out(static_cast<std::size_t>(k), 0);
  std::size_t pos = 0;
  for (auto& sym : out) {
    // Highest-degree coefficient first.
    for (std::size_t g = 0; g < delta; ++g) {
      Value coeff = 0;
      for (int b = 0; b < w; ++b, ++pos) coeff = (coeff << 1) | (pos < bits.size() ? bits[pos] : 0);
      sym = sym * q + coeff;
    }
  }
  return out;
}

Bits UnpackStripe(std::span<const Value> symbols, std::uint64_t q, std::size_t padded_L,
                  std::size_t L) {
  const int w = BitsPerSymbol(q);
  const std::size_t packet = padded_L / symbols.size();
  const std::size_t delta = packet / static_cast<std::size_t>(w);
  Bits bits;
  bits.reserve(padded_L);
  std::vector<Value> coeffs(delta);
  for (Value sym : symbols) {
    for (std::size_t g = delta; g-- > 0;) {
      coeffs[g] = sym % q;
      sym /= q;
    }
    if (sym != 0) throw InvalidArgument("symbol exceeds the packet size");
    for (Value c : coeffs) {
      if (c >> w) throw InvalidArgument("coefficient exceeds w bits");
      for (int b = w - 1; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>(c >> b & 1));
    }
  }
  bits.resize(L);
  return bits;
}

// --- EncodedCache ------------------------------------------------------------

void EncodedCache::InitFields() {
  double order_bits = 0;
  for (int t = 0; t < layout_.delta_max; ++t) order_bits += std::log2(static_cast<double>(scheme_.q));
  if (order_bits > 62) {
    throw ConstraintViolation("GF(" + std::to_string(scheme_.q) + "^" +
                              std::to_string(layout_.delta_max) +
                              ") is too large; the lcm of the code dimensions must be smaller");
  }
  gf_q_ = gf::MakeField(scheme_.q, 1);
  gf_max_ = gf::MakeField(scheme_.q, layout_.delta_max);
  file_fields_.assign(scheme_.F(), nullptr);
  embeddings_.clear();
  embeddings_.resize(scheme_.F());
  for (std::size_t i = 0; i < scheme_.F(); ++i) {
    if (!scheme_.cached(i)) continue;
    file_fields_[i] = gf::MakeField(scheme_.q, layout_.delta[i]);
    embeddings_[i].emplace(file_fields_[i], gf_max_);
  }
}

EncodedCache EncodedCache::Encode(const FileLibrary& library, const CachingScheme& scheme,
                                  bool pir) {
  library.Validate();
  scheme.Validate(pir);
  if (library.F() != scheme.F()) throw InvalidArgument("library and scheme disagree on F");
  EncodedCache c;
  c.scheme_ = scheme;
  c.beta_ = library.beta;
  c.layout_ = ComputeLayout(library.L, scheme.q, scheme.k);
  c.InitFields();
  c.symbols_.assign(scheme.F(), {});
  for (std::size_t i = 0; i < scheme.F(); ++i) {
    if (!scheme.cached(i)) continue;
    auto& out = c.symbols_[i];
    out.resize(c.beta_ * scheme.n_sbs);
    const auto& code = *scheme.codes[i];
    for (std::size_t a = 0; a < c.beta_; ++a) {
      const auto msg = PackStripe(library.Stripe(i, a), scheme.k[i], scheme.q,
                                  c.layout_.padded_L);
      const auto cw = code.Encode(msg, *c.file_fields_[i]);
      std::copy(cw.begin(), cw.end(), out.begin() + static_cast<std::ptrdiff_t>(a * scheme.n_sbs));
    }
  }
  return c;
}

Value EncodedCache::Symbol(std::size_t i, std::size_t a, std::size_t j) const {
  if (i >= F() || !scheme_.cached(i)) throw InvalidArgument("file is not cached");
  if (a >= beta_ || j >= n_sbs()) throw InvalidArgument("stripe or SBS index out of range");
  return symbols_[i][a * n_sbs() + j];
}

std::vector<Value> EncodedCache::Column(std::size_t j) const {
  if (j >= n_sbs()) throw InvalidArgument("unknown SBS index " + std::to_string(j));
  std::vector<Value> col(beta_ * F(), 0);
  for (std::size_t i = 0; i < F(); ++i) {
    if (!scheme_.cached(i)) continue;
    for (std::size_t a = 0; a < beta_; ++a) {
      col[i * beta_ + a] = embeddings_[i]->Embed(symbols_[i][a * n_sbs() + j]);
    }
  }
  return col;
}

Bits EncodedCache::DecodeStripe(std::size_t i, std::span<const std::size_t> coords,
                                std::span<const Value> symbols) const {
  if (i >= F() || !scheme_.cached(i)) throw InvalidArgument("file is not cached");
  const auto msg = codes::DecodeMessage(*scheme_.codes[i], coords, symbols, *file_fields_[i]);
  return UnpackStripe(msg, scheme_.q, layout_.padded_L, layout_.L);
}

Value EncodedCache::SynthesizeSymbol(const FileLibrary& library, std::size_t i, std::size_t a,
                                     std::size_t j) const {
  if (i >= F() || !scheme_.cached(i)) throw InvalidArgument("file is not cached");
  if (a >= beta_ || j >= n_sbs()) throw InvalidArgument("stripe or SBS index out of range");
  const auto msg = PackStripe(library.Stripe(i, a), scheme_.k[i], scheme_.q, layout_.padded_L);
  const auto& g = scheme_.codes[i]->generator();
  const gf::Field& f = *file_fields_[i];
  Value acc = 0;
  for (std::size_t r = 0; r < msg.size(); ++r) acc = f.Add(acc, f.Mul(msg[r], g(r, j)));
  return acc;
}

std::size_t EncodedCache::BitsPerSbs() const {
  std::size_t bits = 0;
  for (auto i : scheme_.CachedFiles()) bits += beta_ * layout_.PacketBits(scheme_.k[i]);
  return bits;
}

bool operator==(const EncodedCache& a, const EncodedCache& b) {
  if (a.scheme_.n_sbs != b.scheme_.n_sbs || a.scheme_.q != b.scheme_.q ||
      a.scheme_.k != b.scheme_.k || a.scheme_.M != b.scheme_.M || a.beta_ != b.beta_ ||
      a.layout_.L != b.layout_.L || a.layout_.padded_L != b.layout_.padded_L ||
      a.symbols_ != b.symbols_) {
    return false;
  }
  for (std::size_t i = 0; i < a.scheme_.F(); ++i) {
    if (a.scheme_.cached(i) &&
        !(a.scheme_.codes[i]->generator() == b.scheme_.codes[i]->generator())) {
      return false;
    }
  }
  return true;
}

// --- Snapshot ----------------------------------------------------------------
//
// Little-endian container:
//   "PIRC" u32 version=1
//   u64 q, u32 delta_max, u32 F, u32 beta, u32 N_sbs, u64 L, u64 L', f64 M,
//   u8 family (0 GRS, 1 explicit)
//   F x { i32 k_i; explicit family and k_i > 0: k_i * N_sbs u64 generator }
//   body, file-major: cached files only, beta x N_sbs u64 symbols each
//   u8 has_library; if 1: F x f64 popularity, then F files packed 8 bits/byte
//   (MSB first), ceil(beta L / 8) bytes each

namespace {

constexpr char kMagic[4] = {'P', 'I', 'R', 'C'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void Put(std::ostream& out, T v) {
  unsigned char buf[sizeof(T)];
  std::uint64_t raw = 0;
  if constexpr (std::is_same_v<T, double>) {
    std::memcpy(&raw, &v, sizeof(double));
  } else {
    raw = static_cast<std::uint64_t>(v);
  }
  for (std::size_t b = 0; b < sizeof(T); ++b) buf[b] = static_cast<unsigned char>(raw >> (8 * b));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T Get(std::istream& in) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) {
    throw InvalidArgument("truncated cache snapshot");
  }
  std::uint64_t raw = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) raw |= std::uint64_t{buf[b]} << (8 * b);
  if constexpr (std::is_same_v<T, double>) {
    double d;
    std::memcpy(&d, &raw, sizeof(double));
    return d;
  } else {
    return static_cast<T>(raw);
  }
}

}  // namespace

void EncodedCache::Save(std::ostream& out, const FileLibrary* library) const {
  out.write(kMagic, 4);
  Put<std::uint32_t>(out, kVersion);
  Put<std::uint64_t>(out, scheme_.q);
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(layout_.delta_max));
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(F()));
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(beta_));
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(n_sbs()));
  Put<std::uint64_t>(out, layout_.L);
  Put<std::uint64_t>(out, layout_.padded_L);
  Put<double>(out, scheme_.M);
  Put<std::uint8_t>(out, scheme_.family == CodeFamily::kGrs ? 0 : 1);
  for (std::size_t i = 0; i < F(); ++i) {
    Put<std::int32_t>(out, scheme_.k[i]);
    if (scheme_.family == CodeFamily::kExplicit && scheme_.cached(i)) {
      const auto& g = scheme_.codes[i]->generator();
      for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) Put<std::uint64_t>(out, g(r, c));
      }
    }
  }
  for (std::size_t i = 0; i < F(); ++i) {
    for (Value v : symbols_[i]) Put<std::uint64_t>(out, v);
  }
  Put<std::uint8_t>(out, library ? 1 : 0);
  if (library) {
    if (library->F() != F() || library->beta != beta_ || library->L != layout_.L) {
      throw InvalidArgument("library does not match the cache");
    }
    for (double p : library->popularity) Put<double>(out, p);
    for (const auto& f : library->files) {
      for (std::size_t pos = 0; pos < f.size(); pos += 8) {
        std::uint8_t byte = 0;
        for (std::size_t b = 0; b < 8; ++b) {
          byte = static_cast<std::uint8_t>(byte << 1 | (pos + b < f.size() ? f[pos + b] : 0));
        }
        Put<std::uint8_t>(out, byte);
      }
    }
  }
  if (!out) throw InvalidArgument("failed to write cache snapshot");
}

EncodedCache::Loaded EncodedCache::Load(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw InvalidArgument("not a cache snapshot");
  }
  if (Get<std::uint32_t>(in) != kVersion) throw InvalidArgument("unsupported snapshot version");
  const auto q = Get<std::uint64_t>(in);
  const auto delta_max = Get<std::uint32_t>(in);
  const auto F = Get<std::uint32_t>(in);
  const auto beta = Get<std::uint32_t>(in);
  const auto n_sbs = Get<std::uint32_t>(in);
  const auto L = Get<std::uint64_t>(in);
  const auto padded_L = Get<std::uint64_t>(in);
  const auto M = Get<double>(in);
  const auto family = Get<std::uint8_t>(in);
  if (F > (1u << 20) || n_sbs > (1u << 16) || beta > (1u << 20) || family > 1) {
    throw InvalidArgument("implausible snapshot header");
  }
  std::vector<int> k(F);
  std::vector<std::optional<codes::LinearCode>> codes(F);
  auto gf_q = gf::MakeField(q, 1);
  for (std::size_t i = 0; i < F; ++i) {
    k[i] = Get<std::int32_t>(in);
    if (k[i] < 0 || static_cast<std::uint32_t>(k[i]) > n_sbs) {
      throw InvalidArgument("snapshot k_i out of range");
    }
    if (family == 1 && k[i] > 0) {
      gf::Matrix g(gf_q, static_cast<std::size_t>(k[i]), n_sbs);
      for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) g(r, c) = Get<std::uint64_t>(in);
      }
      codes[i] = codes::LinearCode::FromGenerator(std::move(g));
    }
  }
  EncodedCache c;
  c.scheme_ = family == 0 ? CachingScheme::Grs(n_sbs, M, q, k)
                          : CachingScheme::Explicit(n_sbs, M, q, std::move(codes));
  c.scheme_.Validate(false);
  c.beta_ = beta;
  c.layout_ = ComputeLayout(L, q, c.scheme_.k);
  if (c.layout_.padded_L != padded_L || c.layout_.delta_max != static_cast<int>(delta_max)) {
    throw InvalidArgument("snapshot layout is inconsistent");
  }
  c.InitFields();
  c.symbols_.assign(F, {});
  for (std::size_t i = 0; i < F; ++i) {
    if (!c.scheme_.cached(i)) continue;
    c.symbols_[i].resize(static_cast<std::size_t>(beta) * n_sbs);
    for (auto& v : c.symbols_[i]) {
      v = Get<std::uint64_t>(in);
      if (!c.file_fields_[i]->Contains(v)) throw InvalidArgument("snapshot symbol out of field");
    }
  }
  Loaded loaded{std::move(c), std::nullopt};
  if (Get<std::uint8_t>(in) == 1) {
    FileLibrary lib;
    lib.beta = beta;
    lib.L = L;
    lib.popularity.resize(F);
    for (auto& p : lib.popularity) p = Get<double>(in);
    lib.files.assign(F, Bits(static_cast<std::size_t>(beta) * L));
    for (auto& f : lib.files) {
      for (std::size_t pos = 0; pos < f.size(); pos += 8) {
        const auto byte = Get<std::uint8_t>(in);
        for (std::size_t b = 0; b < 8 && pos + b < f.size(); ++b) f[pos + b] = byte >> (7 - b) & 1;
      }
    }
    lib.Validate();
    loaded.library = std::move(lib);
  }
  return loaded;
}

}  // namespace pircache
