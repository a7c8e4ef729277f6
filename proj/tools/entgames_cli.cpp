// Copyright 2026 The entgames Authors
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

// Command-line front end: exact and see-saw values, repeated games,
// correlated-sampling runs and corpus verification.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entgames/classical.hpp"
#include "entgames/embezzlement.hpp"
#include "entgames/game.hpp"
#include "entgames/game_io.hpp"
#include "entgames/norms.hpp"
#include "entgames/parallel.hpp"
#include "entgames/quantum.hpp"
#include "entgames/rounding.hpp"

namespace fs = std::filesystem;
using namespace entgames;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitInternal = 4;

struct Config {
  std::uint64_t seed = 0;
  int dim = 2;
  int restarts = 10;
  int iters = 200;
  double tol = 1e-8;
  double max_copies = 1e4;
  double cap = 1e8;
  std::string out;
};

// stdout unless a path is given.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string join(const std::vector<int>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

std::uint64_t digest(const QuantumStrategy& a, const QuantumStrategy& b, const CVector& psi) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  auto feed = [&h](double x) {
    h = mix64(h ^ static_cast<std::uint64_t>(std::llround(x * 1e6)));
  };
  for (const auto* s : {&a, &b}) {
    for (const Povm& p : s->povms) {
      for (const CMatrix& m : p.outcomes) {
        for (Index i = 0; i < m.size(); ++i) {
          feed(m.data()[i].real());
          feed(m.data()[i].imag());
        }
      }
    }
  }
  for (Index i = 0; i < psi.size(); ++i) feed(std::norm(psi(i)));
  return h;
}

double median(std::vector<double> xs) {
  if (xs.empty()) return std::nan("");
  std::sort(xs.begin(), xs.end());
  std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

SeesawOptions seesaw_options(const Config& c) {
  SeesawOptions o;
  o.restarts = c.restarts;
  o.iters = c.iters;
  o.tol = std::min(c.tol, 1e-9);
  o.seed = c.seed;
  return o;
}

// value ---------------------------------------------------------------------

int cmd_value(const std::string& path, bool classical, int quantum_dim, const Config& c) {
  Game g = read_game(path);
  if (classical) {
    ClassicalOptions o;
    o.cap = c.cap;
    ClassicalResult r = classical_value(g, o);
    std::cout << fixed6(r.value) << " exact\n";
    std::cout << "witness alice=" << join(r.witness.alice) << " bob=" << join(r.witness.bob) << "\n";
    return kExitOk;
  }
  SeesawResult r = seesaw(g, quantum_dim, seesaw_options(c));
  char line[160];
  std::snprintf(line, sizeof line, "%s lower_bound dim=%d restarts=%d best_restart=%d digest=%016" PRIx64,
                fixed6(r.value).c_str(), quantum_dim, c.restarts, r.best_restart,
                digest(r.alice, r.bob, r.state));
  std::cout << line << "\n";
  if (!c.out.empty()) {
    StrategyFile s;
    s.game_path = fs::relative(fs::absolute(path), fs::absolute(c.out).parent_path()).string();
    s.dim = quantum_dim;
    s.bob = r.bob;
    s.alice = r.alice;
    s.state = r.state;
    Sink sink(c.out);
    sink.stream() << strategy_to_json(s).dump(2) << "\n";
  }
  return kExitOk;
}

// repeat --------------------------------------------------------------------

int cmd_repeat(const std::string& path, int k_max, const Config& c) {
  Game g = read_game(path);
  Sink sink(c.out);
  std::ostream& out = sink.stream();
  out << "k,classical_exact,quantum_lower_bound,sqnorm_sq_lower_bound,flags\n";
  int status = kExitOk;
  QuantumStrategy base_a, base_b;
  CVector base_psi;
  Index base_dim = 0;
  for (int k = 1; k <= k_max; ++k) {
    Game gk;
    try {
      gk = tensor_power(g, k);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSizeOverflow) throw;
      out << k << ",,,,size_overflow\n";
      status = kExitCap;
      break;
    }
    std::string flags;
    std::string classical;
    try {
      ClassicalOptions o;
      o.cap = c.cap;
      classical = fixed6(classical_value(gk, o).value);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSearchSpaceTooLarge) throw;
      flags = "classical_cap_exceeded";
      status = kExitCap;
    }

    SeesawResult r = seesaw(gk, c.dim, seesaw_options(c));
    double lower = r.value;
    std::vector<QuantumStrategy> bobs = {r.bob};
    if (k == 1) {
      base_a = r.alice;
      base_b = r.bob;
      base_psi = r.state;
      base_dim = c.dim;
    } else if (std::pow(static_cast<double>(base_dim), k) <= 64.0) {
      // Product of the single-copy witness, valid for any k.
      QuantumStrategy a = base_a, b = base_b;
      CVector psi = base_psi;
      Index d = base_dim;
      for (int i = 1; i < k; ++i) {
        a = tensor_strategy(a, base_a);
        b = tensor_strategy(b, base_b);
        psi = tensor_state(psi, d, base_psi, base_dim);
        d *= base_dim;
      }
      lower = std::max(lower, value(gk, a, b, psi));
      bobs.push_back(b);
    }
    std::string sq;
    if (is_projection(gk)) {
      ProjectionMap pm = projection_map(gk);
      double best = 0.0;
      for (const auto& b : bobs) best = std::max(best, sqnorm_squared(gk, pm, b));
      sq = fixed6(best);
    }
    out << k << "," << classical << "," << fixed6(lower) << "," << sq << "," << flags << "\n";
  }
  return status;
}

// corrsample ----------------------------------------------------------------

int cmd_corrsample(const std::string& psi_spec, const std::string& phi_spec, double delta, int trials,
                   double eta, double min_fidelity, const std::string& transcripts, const Config& c) {
  Index d = 0, d2 = 0;
  CVector psi = parse_state_spec(psi_spec, &d);
  CVector phi = parse_state_spec(phi_spec, &d2);
  if (d != d2) throw Error(ErrorCode::kParseError, "psi and phi must have the same dimension");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be positive");
  SamplingOptions o;
  o.max_copies = c.max_copies;
  o.eta = eta;

  std::vector<SamplingTranscript> runs(trials);
  Rng root(c.seed, 0x636f7272);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    Rng rng = root.split(t);
    runs[t] = correlated_sample(psi, phi, d, delta, rng, o);
  });
  if ((psi - phi).squaredNorm() > delta) {
    std::cerr << "warning: delta is below ||psi - phi||^2 = " << fmt((psi - phi).squaredNorm()) << "\n";
  }

  Sink sink(c.out);
  std::ostream& out = sink.stream();
  out << "trial,success,fidelity,copies,pq_overlap\n";
  std::vector<double> fids, copies, overlaps;
  int successes = 0;
  for (int t = 0; t < trials; ++t) {
    const SamplingTranscript& r = runs[t];
    std::string fid;
    if (r.success) {
      double f = std::norm(r.joint_state->dot(psi));
      fids.push_back(f);
      fid = fmt(f);
      ++successes;
    }
    double ov = pq_overlap(r);
    copies.push_back(static_cast<double>(r.copies_used));
    overlaps.push_back(ov);
    out << t << "," << (r.success ? 1 : 0) << "," << fid << "," << r.copies_used << "," << fmt(ov) << "\n";
  }
  double med = median(fids);
  out << "median," << fmt(static_cast<double>(successes) / trials) << "," << (fids.empty() ? "" : fmt(med))
      << "," << fmt(median(copies)) << "," << fmt(median(overlaps)) << "\n";

  if (!transcripts.empty()) {
    Sink tsink(transcripts);
    for (const auto& r : runs) tsink.stream() << transcript_to_json(r).dump() << "\n";
  }
  if (min_fidelity > 0.0 && (fids.empty() || med < min_fidelity)) {
    std::cerr << "median fidelity below " << min_fidelity << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

// verify --------------------------------------------------------------------

struct VerifyState {
  Json files = Json::array();
  std::vector<std::string> violations;
};

void check_projection_game(const Game& g, const std::string& name, int instances, Rng rng,
                           const Config& c, VerifyState& st, Json& entry) {
  ProjectionMap pm = projection_map(g);
  std::vector<ChainInstance> corpus;
  for (int i = 0; i < instances; ++i) {
    Index d = 1 + i % 3;
    ChainInstance inst;
    inst.label = name + "#random" + std::to_string(i);
    inst.alice = random_strategy(d, g.nU, g.nA, rng);
    inst.bob = random_strategy(d, g.nV, g.nB, rng);
    inst.state = random_state(d * d, rng);
    corpus.push_back(std::move(inst));
  }
  Config small = c;
  small.restarts = std::min(c.restarts, 3);
  SeesawResult best = seesaw(g, 2, seesaw_options(small));
  corpus.push_back({name + "#seesaw", best.alice, best.bob, best.state});
  ChainReport chain = verify_chain(g, pm, corpus, c.tol);
  for (const auto& v : chain.violations) st.violations.push_back(v);
  entry["chain_checks"] = chain.checks.size();

  // Rounding diagnostics on a random fractional strategy.
  FractionalStrategy frac;
  frac.dim = 2;
  for (int v = 0; v < g.nV; ++v) {
    Povm p = random_povm(2, g.nB, rng);
    double scale = rng.uniform(0.3, 1.0);
    std::vector<CMatrix> row;
    for (const CMatrix& x : p.outcomes) row.push_back(scale * x);
    frac.ops.push_back(std::move(row));
  }
  SymmetricState state = random_symmetric_state(2, rng);
  double gap = reproduction_gap(frac, state);
  entry["reproduction_gap"] = gap;
  if (gap > c.tol) st.violations.push_back(name + ": reproduction gap " + fmt(gap));

  std::vector<CMatrix> totals;
  for (int v = 0; v < g.nV; ++v) totals.push_back(frac.row_total(v));
  PsiCloseReport pc = psi_close_diagnostic(totals, state, square_spec(g, pm).mu2, c.tol);
  entry["psi_close_blocks"] = pc.blocks.size();
  if (!pc.ok) st.violations.push_back(name + ": closeness inequalities violated");

  try {
    ExpandRoundResult er = expand_round(g, pm, single_vector_strategy(frac), state);
    entry["expand_eps"] = er.eps;
    entry["expand_eta"] = er.eta;
    entry["lambda"] = er.lambda;
    if (!er.laplacian_bound_ok) st.violations.push_back(name + ": Laplacian bound violated");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateState && e.code() != ErrorCode::kZeroInput) throw;
    entry["expand_skipped"] = e.what();
  }
}

void check_strategy_file(const fs::path& file, const Config& c, VerifyState& st, Json& entry) {
  StrategyFile s = read_strategy(file.string());
  Game g = read_game((file.parent_path() / s.game_path).string());
  std::string name = file.filename().string();
  entry["game"] = s.game_path;
  try {
    validate_strategy(s.bob, g.nV, g.nB);
    if (s.alice) validate_strategy(*s.alice, g.nU, g.nA);
    if (s.state && std::abs(s.state->norm() - 1.0) > 1e-8) {
      throw Error(ErrorCode::kInvalidArgument, "state is not normalized");
    }
  } catch (const Error& e) {
    st.violations.push_back(name + ": invalid strategy (" + e.what() + ")");
    entry["status"] = "invalid";
    return;
  }
  if (!is_projection(g)) {
    std::cerr << "warning: " << name << " refers to a non-projection game; chain checks skipped\n";
    entry["status"] = "skipped";
    return;
  }
  ProjectionMap pm = projection_map(g);
  ChainInstance inst;
  inst.label = name;
  inst.bob = s.bob;
  inst.alice = s.alice ? *s.alice : bob_to_alice_response(g, pm, s.bob);
  inst.state = s.state ? *s.state : best_state(g, inst.alice, inst.bob).state;
  ChainReport chain = verify_chain(g, pm, {inst}, c.tol);
  for (const auto& v : chain.violations) st.violations.push_back(v);
  entry["value"] = chain.checks.front().value;
  entry["sqnorm_sq"] = chain.checks.front().sqnorm_sq;
  entry["status"] = "checked";
}

int cmd_verify(const std::string& dir, int instances, const Config& c) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kParseError, dir + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  VerifyState st;
  Rng root(c.seed, 0x766572);
  for (std::size_t i = 0; i < files.size(); ++i) {
    Json doc = read_json_file(files[i].string());
    Json entry;
    std::string name = files[i].filename().string();
    entry["file"] = name;
    if (doc.is_object() && doc.value("type", "") == "strategy") {
      entry["kind"] = "strategy";
      check_strategy_file(files[i], c, st, entry);
    } else {
      entry["kind"] = "game";
      Game g = game_from_json(doc);
      if (!is_projection(g)) {
        std::cerr << "warning: " << name << " is not a projection game; projection-only checks skipped\n";
        entry["status"] = "skipped";
      } else {
        check_projection_game(g, name, instances, root.split(i), c, st, entry);
        entry["status"] = "checked";
      }
    }
    st.files.push_back(entry);
  }
  Json report;
  report["files"] = st.files;
  report["violations"] = st.violations;
  report["ok"] = st.violations.empty();
  Sink sink(c.out);
  sink.stream() << report.dump(2) << "\n";
  return st.violations.empty() ? kExitOk : kExitViolation;
}

// export --------------------------------------------------------------------

std::vector<double> numbers_after(const std::string& spec, std::size_t colon) {
  std::vector<double> xs;
  if (colon == std::string::npos) return xs;
  std::stringstream ss(spec.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      xs.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParseError, "bad number in '" + spec + "'");
    }
  }
  return xs;
}

int cmd_export(const std::string& spec, const std::string& game_ref, const Config& c) {
  if (c.out.empty()) throw Error(ErrorCode::kInvalidArgument, "export needs --out");
  std::size_t colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::vector<double> a = numbers_after(spec, colon);
  auto arg = [&](std::size_t i) {
    if (i >= a.size()) throw Error(ErrorCode::kParseError, "missing parameter in '" + spec + "'");
    return a[i];
  };
  auto iarg = [&](std::size_t i) { return static_cast<int>(arg(i)); };
  Sink sink(c.out);
  if (kind == "chsh-strategy") {
    ChshOptimal opt = chsh_optimal();
    StrategyFile s;
    s.game_path = game_ref.empty() ? "chsh.json" : game_ref;
    s.dim = 2;
    s.bob = opt.bob;
    s.alice = opt.alice;
    s.state = opt.state;
    sink.stream() << strategy_to_json(s).dump(2) << "\n";
    return kExitOk;
  }
  Game g;
  if (kind == "chsh") {
    g = chsh_game();
  } else if (kind == "identity") {
    g = identity_game(iarg(0));
  } else if (kind == "constant") {
    g = constant_game(iarg(0), iarg(1), iarg(2), iarg(3), arg(4) != 0.0);
  } else if (kind == "random-projection") {
    g = random_projection_game(iarg(0), iarg(1), iarg(2), iarg(3), a.size() > 4 ? arg(4) : 1.0, c.seed);
  } else if (kind == "planted") {
    g = planted_projection_game(iarg(0), iarg(1), iarg(2), iarg(3), a.size() > 4 ? arg(4) : 1.0, c.seed).game;
  } else if (kind == "random") {
    g = random_game(iarg(0), iarg(1), iarg(2), iarg(3), arg(4), c.seed);
  } else {
    throw Error(ErrorCode::kParseError, "unknown export kind '" + kind + "'");
  }
  sink.stream() << game_to_json(g).dump(2) << "\n";
  return kExitOk;
}

void add_common(CLI::App* cmd, Config& c) {
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd->add_option("--out", c.out, "Output path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-player game values, norms, rounding and correlated sampling"};
  app.require_subcommand(1);
  Config c;
  int status = kExitOk;

  std::string game_path;
  bool classical = false;
  int quantum_dim = 0;
  auto* value = app.add_subcommand("value", "Exact classical value or see-saw lower bound");
  value->add_option("game", game_path, "Game JSON file")->required();
  auto* cl = value->add_flag("--classical", classical, "Exact classical value");
  auto* qu = value->add_option("--quantum", quantum_dim, "See-saw in local dimension D")->check(CLI::Range(1, 64));
  cl->excludes(qu);
  value->add_option("--restarts", c.restarts)->check(CLI::Range(1, 100000))->capture_default_str();
  value->add_option("--iters", c.iters)->check(CLI::Range(1, 1000000))->capture_default_str();
  value->add_option("--tol", c.tol)->check(CLI::PositiveNumber)->capture_default_str();
  value->add_option("--cap", c.cap, "Classical enumeration cap")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(value, c);

  int k_max = 2;
  auto* repeat = app.add_subcommand("repeat", "Values of tensor powers G^k, k = 1..K");
  repeat->add_option("game", game_path, "Game JSON file")->required();
  repeat->add_option("--k", k_max, "Largest power")->check(CLI::Range(1, 16))->capture_default_str();
  repeat->add_option("--dim", c.dim, "See-saw dimension")->check(CLI::Range(1, 64))->capture_default_str();
  repeat->add_option("--restarts", c.restarts)->check(CLI::Range(1, 100000))->capture_default_str();
  repeat->add_option("--iters", c.iters)->check(CLI::Range(1, 1000000))->capture_default_str();
  repeat->add_option("--tol", c.tol)->check(CLI::PositiveNumber)->capture_default_str();
  repeat->add_option("--cap", c.cap, "Classical enumeration cap")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(repeat, c);

  std::string psi_spec, phi_spec, transcripts;
  double delta = 0.01, eta = 0.0, min_fidelity = 0.0;
  int trials = 100;
  auto* corr = app.add_subcommand("corrsample", "Quantum correlated sampling trials (CSV)");
  corr->add_option("psi", psi_spec, "Alice's state: comma-separated amplitudes, x or re:im")->required();
  corr->add_option("phi", phi_spec, "Bob's state")->required();
  corr->add_option("--delta", delta)->capture_default_str();
  corr->add_option("--trials", trials)->capture_default_str();
  corr->add_option("--eta", eta, "Band ratio parameter (default delta^(1/4))");
  corr->add_option("--max-copies", c.max_copies)->check(CLI::PositiveNumber)->capture_default_str();
  corr->add_option("--min-fidelity", min_fidelity, "Exit 1 if the median fidelity is lower");
  corr->add_option("--transcripts", transcripts, "Write JSON lines with full transcripts");
  add_common(corr, c);

  std::string dir;
  int instances = 20;
  auto* verify = app.add_subcommand("verify", "Check the inequality chain and rounding identities on a corpus");
  verify->add_option("corpus", dir, "Directory of game and strategy files")->required();
  verify->add_option("--instances", instances, "Random strategies per game")->check(CLI::Range(0, 100000))->capture_default_str();
  verify->add_option("--tol", c.tol)->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--restarts", c.restarts)->check(CLI::Range(1, 100000))->capture_default_str();
  add_common(verify, c);

  std::string spec, game_ref;
  auto* exp = app.add_subcommand("export", "Write a named game or strategy as JSON");
  exp->add_option("name", spec,
                  "chsh | identity:K | constant:nU,nV,nA,nB,accept | random-projection:nU,nV,nA,nB[,density] | "
                  "planted:nU,nV,nA,nB[,density] | random:nU,nV,nA,nB,p | chsh-strategy")
      ->required();
  exp->add_option("--game", game_ref, "Game path stored in a strategy file");
  add_common(exp, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (value->parsed()) {
      if (!classical && quantum_dim == 0) throw Error(ErrorCode::kInvalidArgument, "pass --classical or --quantum D");
      status = cmd_value(game_path, classical, quantum_dim, c);
    } else if (repeat->parsed()) {
      status = cmd_repeat(game_path, k_max, c);
    } else if (corr->parsed()) {
      status = cmd_corrsample(psi_spec, phi_spec, delta, trials, eta, min_fidelity, transcripts, c);
    } else if (verify->parsed()) {
      status = cmd_verify(dir, instances, c);
    } else if (exp->parsed()) {
      status = cmd_export(spec, game_ref, c);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kParseError:
      case ErrorCode::kInvalidArgument:
        return kExitParse;
      case ErrorCode::kSearchSpaceTooLarge:
      case ErrorCode::kSizeOverflow:
        return kExitCap;
      default:
        return kExitInternal;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return status;
}
