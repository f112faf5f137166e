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

// pircache: command-line front end.
//
//   pircache encode --config C --out SNAPSHOT
//   pircache retrieve --snapshot S --file I [--b B | --in-range 0,2,5]
//   pircache rates | optimize | sweep --config C (or --preset NAME)
//   pircache verify-privacy --config C [--sabotage]
//   pircache simulate --config C --trials N
//
// Exit codes: 0 success, 2 config error, 3 constraint violation,
// 4 verification failure.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.h"
#include "pircache/cache.h"
#include "pircache/error.h"
#include "pircache/optimizer.h"
#include "pircache/protocol.h"
#include "pircache/rates.h"
#include "pircache/simnet.h"
#include "pircache/topology.h"

#ifndef PIRCACHE_CONFIG_DIR
#define PIRCACHE_CONFIG_DIR "configs"
#endif

namespace pircache::tools {
namespace {

struct Options {
  std::string config;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::size_t trials = 10000;
  std::string snapshot;
  std::size_t file = 0;
  std::optional<std::size_t> b;
  std::vector<std::size_t> in_range;
  std::optional<int> T;
  std::optional<std::size_t> n;
  std::string dump_transcript;
  bool sabotage = false;
};

ExperimentConfig ResolveConfig(const Options& o) {
  if (o.config.empty() == o.preset.empty()) {
    throw InvalidArgument("give exactly one of --config and --preset");
  }
  std::string path = o.config;
  if (!o.preset.empty()) {
    path = "configs/" + o.preset + ".json";
    if (!std::filesystem::exists(path)) {
      path = std::string(PIRCACHE_CONFIG_DIR) + "/" + o.preset + ".json";
    }
    if (!std::filesystem::exists(path)) throw InvalidArgument("unknown preset " + o.preset);
  }
  auto cfg = LoadConfig(path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.T) cfg.protocol.T = *o.T;
  if (o.n) cfg.protocol.n = *o.n;
  return cfg;
}

// Writes to --out when given, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw InvalidArgument("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string JoinBits(const Bits& bits) {
  std::string s;
  for (auto b : bits) s.push_back(static_cast<char>('0' + b));
  return s;
}

int CmdEncode(const Options& o) {
  const auto cfg = ResolveConfig(o);
  const auto scheme = BuildScheme(cfg);
  const auto lib = BuildLibrary(cfg, scheme);
  const auto cache = EncodedCache::Encode(lib, scheme);
  if (o.out.empty()) throw InvalidArgument("encode needs --out");
  {
    std::ofstream snap(o.out, std::ios::binary);
    if (!snap) throw InvalidArgument("cannot write " + o.out);
    cache.Save(snap, &lib);
  }
  const auto& layout = cache.layout();
  std::cout << "n_sbs=" << scheme.n_sbs << " F=" << scheme.F() << " q=" << scheme.q
            << " beta=" << cache.beta() << " L=" << layout.L << " padded_L=" << layout.padded_L
            << " delta_max=" << layout.delta_max << " bits_per_sbs=" << cache.BitsPerSbs()
            << '\n';
  for (std::size_t j = 0; j < scheme.n_sbs; ++j) {
    std::cout << "sbs " << j << ':';
    for (auto v : cache.Column(j)) std::cout << ' ' << v;
    std::cout << '\n';
  }
  return 0;
}

int CmdRetrieve(const Options& o) {
  if (o.snapshot.empty()) throw InvalidArgument("retrieve needs --snapshot");
  std::ifstream in(o.snapshot, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open snapshot " + o.snapshot);
  auto loaded = EncodedCache::Load(in);
  if (!loaded.library) throw InvalidArgument("snapshot carries no library; the MBS needs it");
  const auto& scheme = loaded.cache.scheme();
  if (!scheme.AnyCached()) throw ConstraintViolation("nothing is cached");
  const int T = o.T.value_or(1);
  const std::size_t n = o.n.value_or(static_cast<std::size_t>(scheme.k_max() + T - 1) +
                                     loaded.cache.beta());
  const std::size_t n_sbs = scheme.n_sbs;
  const std::uint64_t seed = o.seed.value_or(1);
  Rng rng = MakeRng(seed);

  std::vector<std::size_t> in_range = o.in_range;
  if (in_range.empty()) {
    const std::size_t b = o.b.value_or(n_sbs);
    if (b > n_sbs) throw InvalidArgument("--b exceeds the number of SBSs");
    std::vector<std::size_t> all(n_sbs);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    in_range.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(b));
  }
  std::vector<double> gamma(n_sbs + 1, 0);
  gamma[in_range.size()] = 1;
  simnet::Network net(*loaded.library, loaded.cache, simnet::CoverageSampler::FromGamma(gamma));
  const simnet::SessionParams params{T, n, pir::MaskMode::kFresh};
  if (o.file >= scheme.F()) throw InvalidArgument("--file out of range");
  if (!scheme.cached(o.file)) throw ConstraintViolation("file " + std::to_string(o.file) +
                                                        " is not cached; the MBS serves it");
  auto tr = simnet::RunRetrieval(net, params, o.file, rng, in_range);
  const auto& plan = net.GetPlan(T, tr.coords);
  if (o.sabotage) {
    // A misbehaving SBS flips the low bit of its first subresponse.
    for (std::size_t l = 0; l < n; ++l) {
      if (!tr.responses[l].empty()) {
        tr.responses[l][0] ^= 1;
        break;
      }
    }
  }
  const auto recovery = pir::Recover(plan.params, plan.ehat, net.cache(), o.file, tr.responses);
  const bool match = recovery.file == net.library().files[o.file];

  {
    Output dump(o.dump_transcript.empty() ? o.out : o.dump_transcript);
    pir::WriteTranscript(dump.stream(), plan.params, plan.ehat, tr.queries, tr.responses,
                         recovery);
  }
  std::ostream& log = (o.dump_transcript.empty() && o.out.empty()) ? std::cerr : std::cout;
  log << "in_range";
  for (auto j : tr.in_range) log << ' ' << j;
  log << "\ncoords";
  for (auto j : tr.coords) log << ' ' << j;
  log << "\nbits_from_mbs " << tr.bits_from_mbs << "\nbits_from_sbs " << tr.bits_from_sbs
      << "\nrecovered " << JoinBits(recovery.file) << "\nmatch " << (match ? 1 : 0) << '\n';
  if (!match) throw VerificationFailure("recovered file differs from the original");
  return 0;
}

int CmdRates(const Options& o) {
  const auto cfg = ResolveConfig(o);
  const auto scheme = BuildScheme(cfg);
  const auto p = Popularity(cfg);
  if (p.size() != scheme.F()) throw InvalidArgument("library and scheme disagree on F");
  const auto gamma = ResolveGamma(cfg);
  const std::size_t n = ProtocolN(cfg, scheme);
  scheme.Validate(true);
  const auto r = rates::Evaluate(p, scheme.k, gamma, n, cfg.protocol.T, cfg.protocol.theta);
  Output out(o.out);
  auto& s = out.stream();
  s.precision(12);
  s << "T,n,theta,M,R_noPIR,R_PIR,D_PIR,C_PIR\n"
    << cfg.protocol.T << ',' << n << ',' << cfg.protocol.theta << ',' << scheme.M << ','
    << r.R_nopir << ',' << r.R_pir << ',' << r.D_pir << ',' << r.C_pir << '\n';
  return 0;
}

constexpr const char* kTableHeader =
    "axis,value,T,theta,M,mu_star,k_star,n_star,R_PIR,D_PIR,C_PIR,n_popular,R_PIR_popular,"
    "R_noPIR,R_noPIR_popular\n";

std::size_t NSbs(const ExperimentConfig& cfg) {
  if (cfg.optimize.n_sbs) return *cfg.optimize.n_sbs;
  if (cfg.topology.grid) {
    auto model = *cfg.topology.grid;
    if (cfg.topology.grid_count) return *cfg.topology.grid_count;
    return model.SbsCount();
  }
  if (cfg.scheme) return cfg.scheme->n_sbs;
  throw InvalidArgument("set optimize.n_sbs for this topology");
}

// Rows for one (axis value, gamma, M) point over every T and theta.
void WriteRows(std::ostream& s, const ExperimentConfig& cfg, const std::string& axis,
               double value, const std::vector<double>& p, const std::vector<double>& gamma,
               double M) {
  const std::size_t n_sbs = NSbs(cfg);
  std::string nopir = "";
  if (cfg.optimize.nopir) {
    optimizer::NoPirSearch ns;
    ns.n_sbs = n_sbs;
    std::ostringstream v;
    v.precision(12);
    v << optimizer::OptimizeNoPir(p, gamma, M, ns).R;
    nopir = v.str();
  }
  const auto files = static_cast<std::size_t>(std::floor(M + 1e-9));
  const double nopir_pop = rates::BackhaulNoPirPopular(p, files, gamma);
  std::size_t n_max = 0;
  for (std::size_t b = 0; b < gamma.size(); ++b) {
    if (gamma[b] > 0) n_max = b;
  }
  for (int T : cfg.optimize.T) {
    for (double theta : cfg.optimize.theta) {
      optimizer::PirSearch search;
      search.T = T;
      search.n_sbs = n_sbs;
      search.theta = theta;
      search.n_cap = cfg.optimize.n_cap;
      const auto best = optimizer::OptimizePir(p, gamma, M, search);
      s << axis << ',' << value << ',' << T << ',' << theta << ',' << M << ',' << best.mu()
        << ',' << best.k << ',' << best.n << ',' << best.R << ',' << best.D << ',' << best.C
        << ',';
      if (cfg.optimize.popular && files > 0) {
        const std::size_t cap = cfg.optimize.n_cap
                                    ? cfg.optimize.n_cap
                                    : std::min(n_sbs, n_max + static_cast<std::size_t>(T) + 1);
        const auto pop = optimizer::PopularPir(p, gamma, files, T, cap);
        s << pop.n << ',' << pop.R;
      } else {
        s << ',';
      }
      s << ',' << nopir << ',' << nopir_pop << '\n';
    }
  }
}

double CacheSize(const ExperimentConfig& cfg) {
  if (cfg.sweep && !cfg.sweep->M.empty()) return cfg.sweep->M.front();
  if (cfg.scheme) return cfg.scheme->M;
  throw InvalidArgument("no cache size: set scheme.M");
}

int CmdOptimize(const Options& o) {
  const auto cfg = ResolveConfig(o);
  const auto p = Popularity(cfg);
  const auto gamma = ResolveGamma(cfg);
  const double M = CacheSize(cfg);
  Output out(o.out);
  out.stream().precision(12);
  out.stream() << kTableHeader;
  WriteRows(out.stream(), cfg, "M", M, p, gamma, M);
  return 0;
}

int CmdSweep(const Options& o) {
  const auto cfg = ResolveConfig(o);
  if (!cfg.sweep) throw InvalidArgument("config has no sweep section");
  const auto& sw = *cfg.sweep;
  const auto p = Popularity(cfg);
  std::vector<double> axis;
  const auto steps = static_cast<std::size_t>(std::floor((sw.to - sw.from) / sw.step + 1e-9));
  for (std::size_t t = 0; t <= steps; ++t) axis.push_back(sw.from + static_cast<double>(t) * sw.step);
  Output out(o.out);
  auto& s = out.stream();
  s.precision(12);
  s << kTableHeader;
  if (sw.axis == "M") {
    const auto gamma = ResolveGamma(cfg);
    for (double M : axis) WriteRows(s, cfg, "M", M, p, gamma, M);
    return 0;
  }
  if (!cfg.topology.ppp) throw InvalidArgument("a lambda sweep needs a ppp topology");
  const std::vector<double> Ms = sw.M.empty() ? std::vector<double>{CacheSize(cfg)} : sw.M;
  for (double M : Ms) {
    for (double lambda : axis) {
      auto model = *cfg.topology.ppp;
      model.lambda = lambda;
      WriteRows(s, cfg, "lambda", lambda, p, topology::PppGamma(model).gamma, M);
    }
  }
  return 0;
}

void ForEachSubset(std::size_t n, std::size_t k, std::vector<std::size_t>& cur, std::size_t from,
                   const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (cur.size() == k) {
    fn(cur);
    return;
  }
  for (std::size_t l = from; l < n; ++l) {
    cur.push_back(l);
    ForEachSubset(n, k, cur, l + 1, fn);
    cur.pop_back();
  }
}

int CmdVerifyPrivacy(const Options& o) {
  const auto cfg = ResolveConfig(o);
  const auto scheme = BuildScheme(cfg);
  const std::size_t n = ProtocolN(cfg, scheme);
  const int T = cfg.protocol.T;
  std::vector<std::size_t> coords(n);
  std::iota(coords.begin(), coords.end(), 0);
  const auto params = pir::PlanProtocol(scheme, T, coords);
  const auto e = pir::BuildErasureMatrix(params);
  const auto mode = o.sabotage ? pir::MaskMode::kNone : pir::MaskMode::kFresh;
  Output out(o.out);
  auto& s = out.stream();
  s << "coalition,mode,outcomes,tv_distance,noise_floor\n";
  Rng rng = MakeRng(cfg.seed);
  bool pass = true;
  std::vector<std::size_t> cur;
  ForEachSubset(n, static_cast<std::size_t>(T), cur, 0, [&](const std::vector<std::size_t>& c) {
    pir::PrivacyReport r;
    const auto size = pir::RandomnessSpaceSize(params, mode);
    if (size && *size <= (1u << 22)) {
      r = pir::VerifyPrivacyExact(params, e, c, mode);
    } else {
      r = pir::VerifyPrivacySampled(params, e, c, o.trials, rng, mode);
    }
    std::string name;
    for (auto l : c) name += (name.empty() ? "" : ";") + std::to_string(l);
    s << name << ',' << (r.exact ? "exact" : "sampled") << ',' << r.outcomes << ','
      << r.tv_distance << ',' << r.noise_floor << '\n';
    // Sampled mode passes when the distance is within twice the noise floor.
    pass &= r.exact ? r.tv_distance == 0 : r.tv_distance <= 2 * r.noise_floor;
  });
  s << "result," << (pass ? "pass" : "fail") << ",,,\n";
  if (!pass) throw VerificationFailure("queries depend on the requested file");
  return 0;
}

int CmdSimulate(const Options& o) {
  const auto cfg = ResolveConfig(o);
  const auto scheme = BuildScheme(cfg);
  const auto lib = BuildLibrary(cfg, scheme);
  const auto gamma = ResolveGamma(cfg);
  const std::size_t n = ProtocolN(cfg, scheme);
  const int T = cfg.protocol.T;
  auto cache = EncodedCache::Encode(lib, scheme);
  simnet::Network net(lib, std::move(cache), simnet::CoverageSampler::FromGamma(gamma));
  Rng rng = MakeRng(SubstreamSeed(cfg.seed, 2));
  const auto mc = simnet::MonteCarlo(net, {T, n, pir::MaskMode::kFresh}, o.trials, rng);
  const double R = rates::BackhaulPir(lib.popularity, scheme.k, gamma, n, T);
  const double D = rates::SbsRatePir(scheme.k, gamma, n, T);
  Output out(o.out);
  auto& s = out.stream();
  s.precision(12);
  s << "trials,R_hat,R_se,R_analytic,D_hat,D_se,D_analytic,failures,bit_mismatches\n"
    << mc.trials << ',' << mc.R_hat << ',' << mc.R_se << ',' << R << ',' << mc.D_hat << ','
    << mc.D_se << ',' << D << ',' << mc.failures << ',' << mc.bit_mismatches << '\n';
  if (mc.failures || mc.bit_mismatches) {
    throw VerificationFailure("simulated sessions failed or miscounted bits");
  }
  return 0;
}

int Run(int argc, char** argv) {
  CLI::App app{"Private retrieval from MDS-coded small-cell caches"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub, bool config) {
    if (config) {
      sub->add_option("--config", o.config, "experiment config (JSON)");
      sub->add_option("--preset", o.preset, "checked-in config name, e.g. fig3");
    }
    sub->add_option("--seed", o.seed, "rng seed");
    sub->add_option("--out", o.out, "output path (default stdout)");
    sub->add_option("--T", o.T, "colluding SBSs");
    sub->add_option("--n", o.n, "SBSs contacted");
  };
  auto* encode = app.add_subcommand("encode", "encode a library into SBS caches");
  common(encode, true);
  auto* retrieve = app.add_subcommand("retrieve", "privately retrieve one file");
  common(retrieve, false);
  retrieve->add_option("--snapshot", o.snapshot, "cache snapshot from encode")->required();
  retrieve->add_option("--file", o.file, "0-based file index");
  retrieve->add_option("--b", o.b, "SBSs in range (random subset)");
  retrieve->add_option("--in-range", o.in_range, "explicit in-range SBS indices")->delimiter(',');
  retrieve->add_option("--dump-transcript", o.dump_transcript, "transcript path");
  retrieve->add_flag("--sabotage", o.sabotage, "corrupt one SBS response");
  auto* rates_cmd = app.add_subcommand("rates", "closed-form rates of a scheme");
  common(rates_cmd, true);
  auto* optimize = app.add_subcommand("optimize", "optimal placement and n");
  common(optimize, true);
  auto* sweep = app.add_subcommand("sweep", "optimum along M or lambda");
  common(sweep, true);
  auto* privacy = app.add_subcommand("verify-privacy", "query distribution checks");
  common(privacy, true);
  privacy->add_option("--trials", o.trials, "samples when enumeration is too large");
  privacy->add_flag("--sabotage", o.sabotage, "send unmasked queries");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo over the simulated network");
  common(simulate, true);
  simulate->add_option("--trials", o.trials, "sessions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*encode) return CmdEncode(o);
  if (*retrieve) return CmdRetrieve(o);
  if (*rates_cmd) return CmdRates(o);
  if (*optimize) return CmdOptimize(o);
  if (*sweep) return CmdSweep(o);
  if (*privacy) return CmdVerifyPrivacy(o);
  return CmdSimulate(o);
}

}  // namespace
}  // namespace pircache::tools

int main(int argc, char** argv) {
  try {
    return pircache::tools::Run(argc, argv);
  } catch (const pircache::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const pircache::ConstraintViolation& e) {
    std::cerr << "constraint violated: " << e.what() << '\n';
    return 3;
  } catch (const pircache::VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
