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

#include "pircache/field.h"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "pircache/error.h"
#include "pircache/rng.h"

namespace pircache::gf {
namespace {

bool IsPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> PrimeFactors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Checked integer power; nullopt on overflow of 64 bits.
std::optional<Value> CheckedPow(Value base, int e) {
  Value r = 1;
  for (int i = 0; i < e; ++i) {
    if (base != 0 && r > std::numeric_limits<Value>::max() / base) {
      return std::nullopt;
    }
    r *= base;
  }
  return r;
}

void Trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b, over f.
Poly PolyMod(const Field& f, Poly a, std::span<const Value> b) {
  const std::size_t db = b.size() - 1;
  Trim(a);
  while (a.size() > db) {
    const Value lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t t = 0; t <= db; ++t) {
      a[shift + t] = f.Sub(a[shift + t], f.Mul(lead, b[t]));
    }
    Trim(a);
  }
  return a;
}

Value EvalPoly(const Field& f, std::span<const Value> poly, Value x) {
  Value acc = 0;
  for (std::size_t t = poly.size(); t-- > 0;) acc = f.Add(f.Mul(acc, x), poly[t]);
  return acc;
}

// Monic polynomial of the given degree whose lower coefficients are the
// base-|f| digits of `index`.
Poly MonicFromIndex(const Field& f, int degree, Value index) {
  Poly poly(static_cast<std::size_t>(degree) + 1, 0);
  for (int t = 0; t < degree; ++t) {
    poly[static_cast<std::size_t>(t)] = index % f.order();
    index /= f.order();
  }
  poly[static_cast<std::size_t>(degree)] = 1;
  return poly;
}

Poly MakeMonic(const Field& f, Poly a) {
  Trim(a);
  if (a.empty() || a.back() == 1) return a;
  const Value inv = f.Inv(a.back());
  for (auto& c : a) c = f.Mul(c, inv);
  return a;
}

Poly PolySub(const Field& f, Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t t = 0; t < b.size(); ++t) a[t] = f.Sub(a[t], b[t]);
  Trim(a);
  return a;
}

Poly PolyMulMod(const Field& f, const Poly& a, const Poly& b, const Poly& m) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = f.Add(prod[i + j], f.Mul(a[i], b[j]));
    }
  }
  return PolyMod(f, std::move(prod), m);
}

Poly PolyPowMod(const Field& f, Poly base, std::uint64_t e, const Poly& m) {
  Poly result{1};
  result = PolyMod(f, std::move(result), m);
  base = PolyMod(f, std::move(base), m);
  while (e > 0) {
    if (e & 1) result = PolyMulMod(f, result, base, m);
    e >>= 1;
    if (e > 0) base = PolyMulMod(f, base, base, m);
  }
  return result;
}

// Exact quotient a / b for monic b.
Poly PolyDiv(const Field& f, Poly a, const Poly& b) {
  Trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() <= db) return {};
  Poly quot(a.size() - db, 0);
  while (a.size() > db) {
    const Value lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    quot[shift] = lead;
    for (std::size_t t = 0; t <= db; ++t) a[shift + t] = f.Sub(a[shift + t], f.Mul(lead, b[t]));
    Trim(a);
  }
  return quot;
}

Poly PolyGcd(const Field& f, Poly a, Poly b) {
  a = MakeMonic(f, std::move(a));
  b = MakeMonic(f, std::move(b));
  while (!b.empty()) {
    Poly r = MakeMonic(f, PolyMod(f, std::move(a), b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Roots of a monic polynomial that splits into distinct linear factors over
// f, by equal-degree splitting with deterministic trial elements.
void SplitRoots(const Field& f, const Poly& g, std::vector<Value>& roots) {
  const std::size_t deg = g.size() - 1;
  if (deg == 0) return;
  if (deg == 1) {
    roots.push_back(f.Neg(g[0]));
    return;
  }
  const Value n = f.order();
  int m = 0;  // n = 2^m in characteristic two
  for (Value t = n; t > 1; t >>= 1) ++m;
  // Pseudo-random trial elements: low-degree ones have degenerate traces
  // under sparse moduli.
  for (std::uint64_t trial = 0; trial < 4096; ++trial) {
    const Value c = 1 + MixSeed(trial) % (n - 1);
    Poly h;
    if (f.characteristic() == 2) {
      Poly y{0, c};  // c x
      Poly acc = PolyMod(f, y, g);
      Poly term = acc;
      for (int t = 1; t < m; ++t) {
        term = PolyMulMod(f, term, term, g);
        for (std::size_t s = 0; s < term.size(); ++s) {
          if (acc.size() <= s) acc.resize(s + 1, 0);
          acc[s] = f.Add(acc[s], term[s]);
        }
        Trim(acc);
      }
      h = acc;
    } else {
      h = PolySub(f, PolyPowMod(f, Poly{c, 1}, (n - 1) / 2, g), Poly{1});
    }
    Poly d = PolyGcd(f, g, h);
    if (d.size() > 1 && d.size() < g.size()) {
      SplitRoots(f, d, roots);
      SplitRoots(f, PolyDiv(f, g, d), roots);
      return;
    }
  }
  throw InvalidArgument("polynomial does not split over " + f.Name());
}

}  // namespace

FieldPtr Field::Prime(std::uint64_t p) {
  if (!IsPrime(p) || p >= (std::uint64_t{1} << 32)) {
    throw InvalidArgument("field characteristic must be a prime below 2^32");
  }
  std::shared_ptr<Field> f(new Field());
  f->p_ = p;
  f->order_ = p;
  f->q_ = p;
  f->delta_ = 1;
  f->degree_ = 1;
  return f;
}

FieldPtr Field::Extension(FieldPtr base, Poly modulus, std::uint64_t q,
                          int delta) {
  if (!base) throw InvalidArgument("extension needs a base field");
  if (modulus.size() < 2 || modulus.back() != 1) {
    throw InvalidArgument("extension modulus must be monic of degree >= 1");
  }
  for (Value c : modulus) {
    if (!base->Contains(c)) {
      throw InvalidArgument("modulus coefficient outside the base field");
    }
  }
  const int degree = static_cast<int>(modulus.size()) - 1;
  auto order = CheckedPow(base->order(), degree);
  if (!order || *order > (Value{1} << 62)) {
    throw InvalidArgument("field order exceeds the supported range");
  }
  if (!IsIrreducible(*base, modulus)) {
    throw InvalidArgument("modulus is reducible over " + base->Name());
  }
  std::shared_ptr<Field> f(new Field());
  f->p_ = base->p_;
  f->order_ = *order;
  f->q_ = q;
  f->delta_ = delta;
  f->degree_ = degree;
  f->base_ = std::move(base);
  f->modulus_ = std::move(modulus);
  if (f->order_ <= kMaxTableOrder) f->BuildTables();
  return f;
}

FieldPtr Field::BaseQ() const {
  if (delta_ == 1) return shared_from_this();
  return base_;
}

Value Field::Add(Value a, Value b) const {
  if (p_ == 2) return a ^ b;
  if (is_prime()) {
    const Value s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Value out = 0, scale = 1;
  while (a != 0 || b != 0) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

Value Field::Neg(Value a) const {
  if (p_ == 2) return a;
  if (is_prime()) return a == 0 ? 0 : p_ - a;
  Value out = 0, scale = 1;
  while (a != 0) {
    out += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return out;
}

Value Field::Sub(Value a, Value b) const { return Add(a, Neg(b)); }

Value Field::Mul(Value a, Value b) const {
  if (a == 0 || b == 0) return 0;
  if (is_prime()) return (a * b) % p_;
  if (!exp_.empty()) {
    const Value n = order_ - 1;
    Value s = Value{log_[a]} + log_[b];
    if (s >= n) s -= n;
    return exp_[s];
  }
  return MulSlow(a, b);
}

Value Field::MulSlow(Value a, Value b) const {
  const Poly da = Digits(a);
  const Poly db = Digits(b);
  Poly prod(da.size() + db.size() - 1, 0);
  for (std::size_t i = 0; i < da.size(); ++i) {
    if (da[i] == 0) continue;
    for (std::size_t j = 0; j < db.size(); ++j) {
      prod[i + j] = base_->Add(prod[i + j], base_->Mul(da[i], db[j]));
    }
  }
  return FromDigits(PolyMod(*base_, std::move(prod), modulus_));
}

Value Field::Inv(Value a) const {
  if (a == 0) throw InvalidArgument("inverse of zero");
  if (!exp_.empty()) {
    const Value n = order_ - 1;
    return exp_[(n - log_[a]) % n];
  }
  return Pow(a, order_ - 2);
}

Value Field::Pow(Value a, std::uint64_t e) const {
  Value result = 1;
  while (e > 0) {
    if (e & 1) result = Mul(result, a);
    a = Mul(a, a);
    e >>= 1;
  }
  return result;
}

Poly Field::Digits(Value a) const {
  if (is_prime()) return Poly{a};
  Poly out(static_cast<std::size_t>(degree_));
  const Value base_order = base_->order();
  for (auto& d : out) {
    d = a % base_order;
    a /= base_order;
  }
  return out;
}

Value Field::FromDigits(std::span<const Value> digits) const {
  if (is_prime()) return digits.empty() ? 0 : digits[0];
  const Value base_order = base_->order();
  Value out = 0;
  for (std::size_t t = digits.size(); t-- > 0;) out = out * base_order + digits[t];
  return out;
}

void Field::BuildTables() {
  const Value n = order_ - 1;
  const auto factors = PrimeFactors(n);
  Value generator = 0;
  for (Value g = 2; g < order_ && generator == 0; ++g) {
    bool primitive = true;
    for (auto r : factors) {
      Value x = 1, base = g;
      for (std::uint64_t e = n / r; e > 0; e >>= 1) {
        if (e & 1) x = MulSlow(x, base);
        base = MulSlow(base, base);
      }
      if (x == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) generator = g;
  }
  if (order_ == 2) generator = 1;
  exp_.assign(static_cast<std::size_t>(n), 0);
  log_.assign(static_cast<std::size_t>(order_), 0);
  Value x = 1;
  for (Value i = 0; i < n; ++i) {
    exp_[i] = static_cast<std::uint32_t>(x);
    log_[x] = static_cast<std::uint32_t>(i);
    x = MulSlow(x, generator);
  }
}

bool Field::SameAs(const Field& other) const {
  if (this == &other) return true;
  if (p_ != other.p_ || order_ != other.order_ || degree_ != other.degree_ ||
      modulus_ != other.modulus_ || is_prime() != other.is_prime()) {
    return false;
  }
  return is_prime() || base_->SameAs(*other.base_);
}

std::string Field::Name() const {
  std::ostringstream os;
  os << "GF(" << q_;
  if (delta_ > 1) os << "^" << delta_;
  os << ")";
  return os.str();
}

std::string Field::Format(Value a) const {
  if (is_prime()) return std::to_string(a);
  std::ostringstream os;
  const Poly d = Digits(a);
  bool first = true;
  for (std::size_t t = d.size(); t-- > 0;) {
    if (d[t] == 0) continue;
    if (!first) os << "+";
    first = false;
    const bool unit = d[t] == 1;
    if (!unit || t == 0) os << (base_->is_prime() ? std::to_string(d[t])
                                                  : "(" + base_->Format(d[t]) + ")");
    if (t >= 1) os << "x";
    if (t >= 2) os << "^" << t;
  }
  return first ? "0" : os.str();
}

std::optional<PrimePower> FactorPrimePower(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  const auto factors = PrimeFactors(q);
  if (factors.size() != 1) return std::nullopt;
  int e = 0;
  for (std::uint64_t x = q; x > 1; x /= factors[0]) ++e;
  return PrimePower{factors[0], e};
}

std::uint64_t SmallestPrimePowerAtLeast(std::uint64_t n) {
  for (std::uint64_t q = std::max<std::uint64_t>(n, 2);; ++q) {
    if (FactorPrimePower(q)) return q;
  }
}

bool IsIrreducible(const Field& base, std::span<const Value> poly) {
  if (poly.size() < 2 || poly.back() != 1) return false;
  const int degree = static_cast<int>(poly.size()) - 1;
  if (degree == 1) return true;
  if (poly[0] == 0) return false;
  // Ben-Or: f is irreducible iff gcd(f, x^(Q^i) - x) = 1 for i <= deg/2.
  const Poly f(poly.begin(), poly.end());
  const Poly x{0, 1};
  Poly h = PolyMod(base, x, f);
  for (int i = 1; i <= degree / 2; ++i) {
    h = PolyPowMod(base, h, base.order(), f);
    const Poly g = PolyGcd(base, f, PolySub(base, h, x));
    if (g.size() != 1) return false;
  }
  return true;
}

Poly SmallestIrreducible(const Field& base, int degree) {
  if (degree < 1) throw InvalidArgument("degree must be positive");
  const auto count = CheckedPow(base.order(), degree);
  if (!count) throw InvalidArgument("irreducible search space too large");
  for (Value idx = 0; idx < *count; ++idx) {
    Poly candidate = MonicFromIndex(base, degree, idx);
    if (IsIrreducible(base, candidate)) return candidate;
  }
  throw InvalidArgument("no irreducible polynomial found");
}

FieldPtr MakeField(std::uint64_t q, int delta, std::optional<Poly> modulus) {
  using Key = std::tuple<std::uint64_t, int, Poly>;
  static std::mutex mu;
  static std::map<Key, FieldPtr> cache;

  const auto pp = FactorPrimePower(q);
  if (!pp) throw InvalidArgument("q = " + std::to_string(q) + " is not a prime power");
  if (delta < 1) throw InvalidArgument("extension degree must be >= 1");

  const Key key{q, delta, modulus.value_or(Poly{})};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  FieldPtr prime = Field::Prime(pp->prime);
  FieldPtr gf_q = prime;
  if (pp->exponent > 1) {
    Poly base_mod = (delta == 1 && modulus) ? *modulus
                                            : SmallestIrreducible(*prime, pp->exponent);
    if (static_cast<int>(base_mod.size()) - 1 != pp->exponent) {
      throw InvalidArgument("modulus degree does not match q");
    }
    gf_q = Field::Extension(prime, std::move(base_mod), q, 1);
  }
  FieldPtr result = gf_q;
  if (delta > 1) {
    Poly ext_mod = modulus ? *modulus : SmallestIrreducible(*gf_q, delta);
    if (static_cast<int>(ext_mod.size()) - 1 != delta) {
      throw InvalidArgument("modulus degree does not match delta");
    }
    result = Field::Extension(gf_q, std::move(ext_mod), q, delta);
  } else if (pp->exponent == 1 && modulus && !modulus->empty()) {
    throw InvalidArgument("prime fields take no modulus");
  }

  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(result)).first->second;
}

// --- Embedding ---------------------------------------------------------------

Embedding::Embedding(FieldPtr from, FieldPtr to)
    : from_(std::move(from)), to_(std::move(to)) {
  gf_q_ = from_->BaseQ();
  if (!gf_q_->SameAs(*to_->BaseQ())) {
    throw InvalidArgument("embedding requires a shared base field GF(q)");
  }
  const int a = from_->delta();
  const int b = to_->delta();
  if (b % a != 0) {
    throw InvalidArgument("cannot embed GF(q^" + std::to_string(a) + ") into GF(q^" +
                          std::to_string(b) + ")");
  }
  if (a == 1 || from_->SameAs(*to_)) {
    identity_ = true;
    return;
  }
  // The source modulus is irreducible of degree a over GF(q), so it splits
  // into distinct linear factors over GF(q^b).
  std::vector<Value> roots;
  SplitRoots(*to_, from_->modulus(), roots);
  std::optional<Value> root;
  for (Value r : roots) {
    if (EvalPoly(*to_, from_->modulus(), r) == 0 && (!root || r < *root)) root = r;
  }
  if (!root) throw InvalidArgument("no root of the source modulus in target");

  basis_.resize(static_cast<std::size_t>(a));
  Value power = 1;
  for (auto& e : basis_) {
    e = power;
    power = to_->Mul(power, *root);
  }

  // Coordinates of the basis over GF(q): a b x a matrix. Pick a pivot rows
  // and invert that square block.
  const std::size_t rows = static_cast<std::size_t>(b);
  const std::size_t cols = static_cast<std::size_t>(a);
  std::vector<Value> m(rows * cols);
  for (std::size_t c = 0; c < cols; ++c) {
    const Poly d = to_->Digits(basis_[c]);
    for (std::size_t r = 0; r < rows; ++r) m[r * cols + c] = d[r];
  }
  // Gaussian elimination on [M^T] to find independent rows of M.
  std::vector<Value> work = m;
  std::vector<std::size_t> row_ids(rows);
  for (std::size_t r = 0; r < rows; ++r) row_ids[r] = r;
  const Field& k = *gf_q_;
  std::vector<Value> square;
  {
    // Greedy: add rows while they increase rank.
    std::vector<std::vector<Value>> echelon;
    std::vector<std::size_t> lead;
    for (std::size_t r = 0; r < rows && pivot_rows_.size() < cols; ++r) {
      std::vector<Value> v(m.begin() + static_cast<std::ptrdiff_t>(r * cols),
                           m.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
      for (std::size_t e = 0; e < echelon.size(); ++e) {
        const Value factor = v[lead[e]];
        if (factor == 0) continue;
        for (std::size_t c = 0; c < cols; ++c) {
          v[c] = k.Sub(v[c], k.Mul(factor, echelon[e][c]));
        }
      }
      auto it = std::find_if(v.begin(), v.end(), [](Value x) { return x != 0; });
      if (it == v.end()) continue;
      const std::size_t lc = static_cast<std::size_t>(it - v.begin());
      const Value inv = k.Inv(v[lc]);
      for (auto& x : v) x = k.Mul(x, inv);
      for (std::size_t e = 0; e < echelon.size(); ++e) {
        const Value factor = echelon[e][lc];
        if (factor == 0) continue;
        for (std::size_t c = 0; c < cols; ++c) {
          echelon[e][c] = k.Sub(echelon[e][c], k.Mul(factor, v[c]));
        }
      }
      echelon.push_back(std::move(v));
      lead.push_back(lc);
      pivot_rows_.push_back(r);
    }
  }
  if (pivot_rows_.size() != cols) throw InvalidArgument("degenerate embedding basis");
  // Invert the selected a x a block [m[pivot_rows_[i]][c]].
  std::vector<Value> aug(cols * 2 * cols, 0);
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t c = 0; c < cols; ++c) {
      aug[i * 2 * cols + c] = m[pivot_rows_[i] * cols + c];
    }
    aug[i * 2 * cols + cols + i] = 1;
  }
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t piv = c;
    while (aug[piv * 2 * cols + c] == 0) ++piv;
    for (std::size_t x = 0; x < 2 * cols; ++x) {
      std::swap(aug[c * 2 * cols + x], aug[piv * 2 * cols + x]);
    }
    const Value inv = k.Inv(aug[c * 2 * cols + c]);
    for (std::size_t x = 0; x < 2 * cols; ++x) {
      aug[c * 2 * cols + x] = k.Mul(aug[c * 2 * cols + x], inv);
    }
    for (std::size_t r = 0; r < cols; ++r) {
      if (r == c) continue;
      const Value factor = aug[r * 2 * cols + c];
      if (factor == 0) continue;
      for (std::size_t x = 0; x < 2 * cols; ++x) {
        aug[r * 2 * cols + x] =
            k.Sub(aug[r * 2 * cols + x], k.Mul(factor, aug[c * 2 * cols + x]));
      }
    }
  }
  // The block maps source digits x to y[pivot_rows_]: y_p = B x, so
  // x = B^{-1} y_p.
  pivot_inverse_.resize(cols * cols);
  for (std::size_t r = 0; r < cols; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      pivot_inverse_[r * cols + c] = aug[r * 2 * cols + cols + c];
    }
  }
}

Value Embedding::Embed(Value x) const {
  if (!from_->Contains(x)) throw InvalidArgument("value outside source field");
  if (identity_) return x;
  const Poly d = from_->Digits(x);
  Value acc = 0;
  for (std::size_t t = 0; t < d.size(); ++t) {
    if (d[t] != 0) acc = to_->Add(acc, to_->Mul(d[t], basis_[t]));
  }
  return acc;
}

Value Embedding::Project(Value y) const {
  if (!to_->Contains(y)) throw InvalidArgument("value outside target field");
  if (identity_) {
    if (!from_->Contains(y)) throw InvalidArgument("value not in embedded subfield");
    return y;
  }
  const Poly yd = to_->Digits(y);
  const std::size_t a = basis_.size();
  const Field& k = *gf_q_;
  Poly x(a, 0);
  for (std::size_t r = 0; r < a; ++r) {
    Value acc = 0;
    for (std::size_t c = 0; c < a; ++c) {
      acc = k.Add(acc, k.Mul(pivot_inverse_[r * a + c], yd[pivot_rows_[c]]));
    }
    x[r] = acc;
  }
  const Value candidate = from_->FromDigits(x);
  if (Embed(candidate) != y) throw InvalidArgument("value not in embedded subfield");
  return candidate;
}

bool Embedding::InImage(Value y) const {
  try {
    Project(y);
    return true;
  } catch (const InvalidArgument&) {
    return false;
  }
}

}  // namespace pircache::gf
