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

#include "config.h"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "pircache/error.h"
#include "pircache/field.h"
#include "pircache/linear_code.h"

namespace pircache::tools {

using nlohmann::json;

namespace {

const std::vector<std::string> kTopLevel{"seed",     "library",  "topology", "scheme",
                                         "protocol", "optimize", "sweep",    "comment"};

void CheckKeys(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw InvalidArgument(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InvalidArgument("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
T Get(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

template <typename T>
std::vector<T> ScalarOrList(const json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

Bits ParseBits(const json& j) {
  Bits out;
  if (j.is_string()) {
    for (char c : j.get<std::string>()) {
      if (c != '0' && c != '1') throw InvalidArgument("file bits must be 0/1 characters");
      out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
  }
  for (int b : j.get<std::vector<int>>()) {
    if (b != 0 && b != 1) throw InvalidArgument("file bits must be 0 or 1");
    out.push_back(static_cast<std::uint8_t>(b));
  }
  return out;
}

}  // namespace

ExperimentConfig ParseConfig(const json& j) {
  ExperimentConfig cfg;
  try {
    CheckKeys(j, kTopLevel, "config");
    cfg.seed = Get<std::uint64_t>(j, "seed", 1);
    if (j.contains("library")) {
      const auto& l = j.at("library");
      CheckKeys(l, {"F", "L", "beta", "alpha", "p", "files"}, "library");
      cfg.library.L = Get<std::size_t>(l, "L", 8);
      if (l.contains("beta")) cfg.library.beta = l.at("beta").get<std::size_t>();
      cfg.library.alpha = Get<double>(l, "alpha", 0.7);
      if (l.contains("p")) cfg.library.p = l.at("p").get<std::vector<double>>();
      if (l.contains("files")) {
        for (const auto& f : l.at("files")) cfg.library.files.push_back(ParseBits(f));
      }
      cfg.library.F = Get<std::size_t>(
          l, "F", !cfg.library.p.empty() ? cfg.library.p.size() : cfg.library.files.size());
    }
    if (j.contains("topology")) {
      const auto& t = j.at("topology");
      CheckKeys(t, {"gamma", "grid", "ppp"}, "topology");
      if (t.size() != 1) throw InvalidArgument("topology needs exactly one of gamma, grid, ppp");
      if (t.contains("gamma")) cfg.topology.gamma = t.at("gamma").get<std::vector<double>>();
      if (t.contains("grid")) {
        const auto& g = t.at("grid");
        CheckKeys(g, {"D", "spacing", "count", "r", "deploy_radius", "half_offset", "samples"},
                  "topology.grid");
        topology::GridModel m;
        m.D = Get<double>(g, "D", m.D);
        m.spacing = Get<double>(g, "spacing", m.spacing);
        m.r = Get<double>(g, "r", m.r);
        m.deploy_radius = Get<double>(g, "deploy_radius", m.deploy_radius);
        m.half_offset = Get<bool>(g, "half_offset", m.half_offset);
        if (g.contains("count")) cfg.topology.grid_count = g.at("count").get<std::size_t>();
        cfg.topology.grid_samples = Get<std::size_t>(g, "samples", cfg.topology.grid_samples);
        cfg.topology.grid = m;
      }
      if (t.contains("ppp")) {
        const auto& g = t.at("ppp");
        CheckKeys(g, {"lambda", "r_u"}, "topology.ppp");
        topology::PppModel m;
        m.lambda = Get<double>(g, "lambda", 0);
        m.r_u = Get<double>(g, "r_u", 60);
        cfg.topology.ppp = m;
      }
    }
    if (j.contains("scheme")) {
      const auto& s = j.at("scheme");
      CheckKeys(s, {"n_sbs", "M", "q", "k", "codes"}, "scheme");
      SchemeConfig sc;
      sc.n_sbs = s.at("n_sbs").get<std::size_t>();
      sc.k = s.at("k").get<std::vector<int>>();
      double budget = 0;
      for (int k : sc.k) budget += k > 0 ? 1.0 / k : 0;
      sc.M = Get<double>(s, "M", budget);
      sc.q = Get<std::uint64_t>(s, "q", 0);
      if (s.contains("codes")) sc.codes = s.at("codes").get<std::vector<std::string>>();
      cfg.scheme = sc;
    }
    if (j.contains("protocol")) {
      const auto& p = j.at("protocol");
      CheckKeys(p, {"T", "n", "theta"}, "protocol");
      cfg.protocol.T = Get<int>(p, "T", 1);
      if (p.contains("n")) cfg.protocol.n = p.at("n").get<std::size_t>();
      cfg.protocol.theta = Get<double>(p, "theta", 0);
    }
    if (j.contains("optimize")) {
      const auto& o = j.at("optimize");
      CheckKeys(o, {"T", "theta", "n_sbs", "n_cap", "nopir", "popular"}, "optimize");
      if (o.contains("T")) cfg.optimize.T = ScalarOrList<int>(o.at("T"));
      if (o.contains("theta")) cfg.optimize.theta = ScalarOrList<double>(o.at("theta"));
      if (o.contains("n_sbs")) cfg.optimize.n_sbs = o.at("n_sbs").get<std::size_t>();
      cfg.optimize.n_cap = Get<std::size_t>(o, "n_cap", 0);
      cfg.optimize.nopir = Get<bool>(o, "nopir", false);
      cfg.optimize.popular = Get<bool>(o, "popular", true);
    }
    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      CheckKeys(s, {"axis", "from", "to", "step", "M"}, "sweep");
      SweepConfig sw;
      sw.axis = Get<std::string>(s, "axis", "M");
      if (sw.axis != "M" && sw.axis != "lambda") {
        throw InvalidArgument("sweep.axis must be M or lambda");
      }
      sw.from = s.at("from").get<double>();
      sw.to = s.at("to").get<double>();
      sw.step = s.at("step").get<double>();
      if (!(sw.step > 0) || sw.to < sw.from) throw InvalidArgument("bad sweep range");
      if (s.contains("M")) sw.M = ScalarOrList<double>(s.at("M"));
      cfg.sweep = sw;
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("config " + path + ": " + e.what());
  }
  return ParseConfig(j);
}

std::vector<double> Popularity(const ExperimentConfig& cfg) {
  const auto& l = cfg.library;
  if (!l.p.empty()) {
    if (l.p.size() != l.F) throw InvalidArgument("library.p must have F entries");
    return l.p;
  }
  if (l.F == 0) throw InvalidArgument("library.F must be positive");
  return topology::Zipf(l.F, l.alpha);
}

std::vector<double> ResolveGamma(const ExperimentConfig& cfg) {
  const auto& t = cfg.topology;
  if (!t.gamma.empty()) {
    topology::Coverage{t.gamma}.Validate();
    return t.gamma;
  }
  if (t.grid) {
    auto model = *t.grid;
    if (t.grid_count) model.spacing = topology::TuneSpacing(model, *t.grid_count);
    return topology::GridGamma(model, t.grid_samples, cfg.seed).gamma;
  }
  if (t.ppp) return topology::PppGamma(*t.ppp).gamma;
  throw InvalidArgument("config has no topology");
}

std::uint64_t NextPrimePower(std::uint64_t x) {
  for (std::uint64_t q = std::max<std::uint64_t>(x, 2);; ++q) {
    std::uint64_t r = q, p = 2;
    while (p * p <= r && r % p) ++p;
    if (p * p > r) p = r;
    while (r % p == 0) r /= p;
    if (r == 1) return q;
  }
}

CachingScheme BuildScheme(const ExperimentConfig& cfg) {
  if (!cfg.scheme) throw InvalidArgument("config has no scheme section");
  const auto& s = *cfg.scheme;
  const std::uint64_t q = s.q ? s.q : NextPrimePower(s.n_sbs + 1);
  if (s.codes.empty()) return CachingScheme::Grs(s.n_sbs, s.M, q, s.k);
  if (s.codes.size() != s.k.size()) throw InvalidArgument("scheme.codes must have F entries");
  auto field = gf::MakeField(q, 1);
  std::vector<std::optional<codes::LinearCode>> codes(s.k.size());
  for (std::size_t i = 0; i < s.k.size(); ++i) {
    const auto& name = s.codes[i];
    if (s.k[i] == 0) {
      if (name != "none") throw InvalidArgument("uncached files take the code \"none\"");
      continue;
    }
    const auto k = static_cast<std::size_t>(s.k[i]);
    if (name == "grs") {
      codes[i] = codes::LinearCode::DefaultGrs(field, s.n_sbs, k);
    } else if (name == "repetition" && k == 1) {
      codes[i] = codes::LinearCode::Repetition(field, s.n_sbs);
    } else if (name == "spc" && k + 1 == s.n_sbs) {
      codes[i] = codes::LinearCode::SingleParityCheck(field, s.n_sbs);
    } else {
      throw InvalidArgument("code \"" + name + "\" does not fit k = " + std::to_string(k));
    }
  }
  return CachingScheme::Explicit(s.n_sbs, s.M, q, std::move(codes));
}

std::size_t LibraryBeta(const ExperimentConfig& cfg, const CachingScheme& scheme) {
  if (cfg.library.beta) return *cfg.library.beta;
  if (!cfg.protocol.n || !scheme.AnyCached()) return 1;
  const long g = static_cast<long>(*cfg.protocol.n) - cfg.protocol.T + 1 - scheme.k_max();
  if (g <= 0) throw ConstraintViolation("need n >= k_max + T");
  return static_cast<std::size_t>(g);
}

std::size_t ProtocolN(const ExperimentConfig& cfg, const CachingScheme& scheme) {
  if (cfg.protocol.n) return *cfg.protocol.n;
  return static_cast<std::size_t>(scheme.k_max() + cfg.protocol.T - 1) +
         LibraryBeta(cfg, scheme);
}

FileLibrary BuildLibrary(const ExperimentConfig& cfg, const CachingScheme& scheme) {
  const auto p = Popularity(cfg);
  if (p.size() != scheme.F()) throw InvalidArgument("library and scheme disagree on F");
  const std::size_t beta = LibraryBeta(cfg, scheme);
  if (cfg.library.files.empty()) {
    Rng rng = MakeRng(SubstreamSeed(cfg.seed, 1));
    return FileLibrary::Random(p.size(), beta, cfg.library.L, p, rng);
  }
  FileLibrary lib;
  lib.beta = beta;
  lib.L = cfg.library.L;
  lib.files = cfg.library.files;
  lib.popularity = p;
  lib.Validate();
  return lib;
}

}  // namespace pircache::tools
