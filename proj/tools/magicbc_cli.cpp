// magicbc: command-line front end for the magic-broadcasting toolkit.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "magicbc/cloners.hpp"
#include "magicbc/error.hpp"
#include "magicbc/magic.hpp"
#include "magicbc/optimize.hpp"
#include "magicbc/report_io.hpp"
#include "magicbc/stabkit.hpp"
#include "magicbc/statespec.hpp"
#include "magicbc/tolerances.hpp"
#include "magicbc/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace magicbc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  bool seed_given = false;
  bool json = false;
  std::string out;
  std::string config;
};

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  auto number = [&](const std::string& tok) {
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw UsageError("bad number '" + tok + "' in grid '" + text + "'");
    }
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
    if (parts.size() != 3) throw UsageError("grid must be start:stop:count, got '" + text + "'");
    const double a = number(parts[0]);
    const double b = number(parts[1]);
    const double n = number(parts[2]);
    if (n < 1 || n != std::floor(n)) throw UsageError("grid count must be a positive integer");
    const int count = static_cast<int>(n);
    for (int k = 0; k < count; ++k) out.push_back(count == 1 ? a : a + (b - a) * k / (count - 1));
    return out;
  }
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) out.push_back(number(tok));
  if (out.empty()) throw UsageError("empty grid");
  return out;
}

BlochVector parse_endpoint(const std::string& text) {
  if (text.rfind("bloch:", 0) == 0) {
    const std::vector<double> v = parse_grid(text.substr(6));
    if (v.size() != 3) throw UsageError("bloch endpoint needs three components: '" + text + "'");
    const BlochVector b{v[0], v[1], v[2]};
    if (b.norm() > 1.0 + tol::kBloch) throw UsageError("bloch endpoint outside the unit ball: '" + text + "'");
    return b;
  }
  const PureState psi = parse_state_spec(text);
  if (psi.dim() != 2) throw UsageError("geometry endpoints must be single-qubit states");
  return bloch_from_pure(psi);
}

json bloch_json(const BlochVector& b) { return json::array({b.m1, b.m2, b.m3}); }

// ---------------------------------------------------------------- magic

int cmd_magic(const Globals& g, const std::string& spec) {
  const PureState psi = parse_state_spec(spec);
  const MagicReport r = magic_report(psi);
  Sink sink(g.out);
  if (g.json) {
    json j = to_json(r);
    j["state"] = spec;
    sink.os() << j.dump(2) << "\n";
    return kExitOk;
  }
  auto& os = sink.os();
  os << "state  " << spec << " (" << r.n << " qubit" << (r.n > 1 ? "s" : "") << ")\n";
  os << "D      " << fmt(r.witness_d) << "\n";
  if (r.rom) os << "R      " << fmt(*r.rom) << "\n";
  if (r.sre2) os << "M2     " << fmt(*r.sre2) << "\n";
  os << "M2ext  " << fmt(r.extended_sre2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- clone

struct CloneArgs {
  std::string machine;
  std::string reference = "T";
  std::optional<double> gamma;
  double gamma_prime = 0.0;
  std::optional<double> xi;
  std::optional<double> eta;
  std::string input;
  std::string thetas;
  std::string zetas;
};

WZParams wz_params(const CloneArgs& a) {
  if (a.gamma) return WZParams{*a.gamma, a.gamma_prime};
  const PureState ref = parse_state_spec(a.reference);
  if (ref.dim() != 2) throw UsageError("reference must be a single-qubit state");
  const auto [theta, zeta] = basis_angles(ref, PureState::basis(2, 0), PureState::basis(2, 1));
  return WZParams{theta, zeta};
}

BHParams bh_params(const CloneArgs& a) {
  if (!a.xi) throw UsageError("bh machine needs --xi");
  return a.eta ? BHParams(*a.xi, *a.eta) : BHParams::schwarz_max(*a.xi);
}

int cmd_clone(const Globals& g, const CloneArgs& a) {
  if (a.machine != "wz" && a.machine != "bh") throw UsageError("--machine must be wz or bh");
  const bool sweep = !a.thetas.empty() || !a.zetas.empty();
  if (sweep == !a.input.empty()) throw UsageError("give either --input or a --theta/--zeta sweep");

  if (sweep) {
    const std::vector<double> thetas = parse_grid(a.thetas.empty() ? "0" : a.thetas);
    const std::vector<double> zetas = parse_grid(a.zetas.empty() ? "0" : a.zetas);
    const std::vector<SweepRow> rows =
        a.machine == "wz" ? wz_sweep(wz_params(a), thetas, zetas) : bh_sweep(bh_params(a), thetas, zetas);
    Sink sink(g.out);
    if (g.json) {
      json arr = json::array();
      for (const SweepRow& r : rows) {
        arr.push_back({{"theta", r.theta}, {"zeta", r.zeta}, {"input_magic", r.input_magic},
                       {"output_magic", r.output_magic}, {"ratio", r.ratio}});
      }
      sink.os() << json{{"schema", kSchemaVersion}, {"machine", a.machine}, {"rows", arr}}.dump(2) << "\n";
    } else {
      write_sweep_csv(sink.os(), rows);
    }
    return kExitOk;
  }

  const PureState psi = parse_state_spec(a.input);
  if (psi.dim() != 2) throw UsageError("clone input must be a single-qubit state");
  json j{{"schema", kSchemaVersion}, {"machine", a.machine}, {"input", a.input}};
  if (a.machine == "wz") {
    const WZParams p = wz_params(a);
    const auto [theta, zeta] = basis_angles(psi, p.reference(), p.reference_perp());
    const WZBroadcastCheck check = wz_broadcast_check(p, theta, zeta);
    const WZMagic m = wz_output_magic(p, theta);
    j["gamma"] = p.gamma;
    j["gamma_prime"] = p.gamma_prime;
    j["reference_magic"] = p.reference_rom();
    j["theta"] = theta;
    j["zeta"] = zeta;
    j["input_magic"] = check.input_magic;
    j["output_magic"] = m.clipped;
    j["output_l1"] = m.unclipped;
    j["perfect"] = check.perfect;
    j["output_bloch"] = bloch_json(bloch_from_density(wz_output(p, theta, zeta)));
  } else {
    const BHParams p = bh_params(a);
    const auto [theta, zeta] = basis_angles(psi, PureState::basis(2, 0), PureState::basis(2, 1));
    j["xi"] = p.xi();
    j["eta"] = p.eta();
    j["theta"] = theta;
    j["zeta"] = zeta;
    j["input_magic"] = rom_qubit(DensityMatrix::from_pure(psi));
    j["output_magic"] = bh_magic(p, theta, zeta);
    j["ratio"] = m_ratio(p, theta, zeta);
    j["output_bloch"] = bloch_json(bloch_from_density(bh_output(p, theta, zeta)));
  }
  Sink sink(g.out);
  if (g.json) {
    sink.os() << j.dump(2) << "\n";
  } else {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "schema") continue;
      sink.os() << it.key() << " = " << (it->is_number_float() ? fmt(it->get<double>()) : it->dump()) << "\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Globals& g, const std::string& suite, long samples) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = suite_names();
  } else {
    names.push_back(suite);
    default_samples(suite);  // rejects unknown names
  }
  bool all_pass = true;
  json reports = json::array();
  Sink sink(g.out);
  for (const std::string& name : names) {
    const long n = samples > 0 ? samples : default_samples(name);
    const VerificationReport r = run_suite(name, n, g.seed);
    all_pass = all_pass && r.pass;
    if (g.json) {
      reports.push_back(to_json(r));
    } else {
      sink.os() << (r.pass ? "PASS " : "FAIL ") << r.check_name << "  samples=" << r.samples
                << "  max_violation=" << r.max_violation << "  tolerance=" << r.tolerance << "  seed=" << r.seed
                << "  runtime_ms=" << r.runtime_ms;
      if (!r.detail.empty()) sink.os() << "  [" << r.detail << "]";
      sink.os() << "\n";
    }
  }
  if (g.json) sink.os() << (reports.size() == 1 ? reports[0] : reports).dump(2) << "\n";
  return all_pass ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- experiment

std::map<int, BroadcastOutcome> load_outcomes(const fs::path& path, Objective objective, const OptimizerConfig& cfg) {
  std::map<int, BroadcastOutcome> done;
  std::ifstream in(path);
  if (!in) return done;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    BroadcastOutcome o;
    try {
      o = outcome_from_json(json::parse(line));
    } catch (const std::exception&) {
      if (in.peek() == EOF) break;  // truncated final record from an interrupted run
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": unreadable outcome record");
    }
    if (o.objective != objective) {
      throw IoError(path.string() + ": holds '" + to_string(o.objective) + "' outcomes, not '" +
                    to_string(objective) + "'");
    }
    const Vec expected = batch_input(cfg, o.sample_index).amps();
    if (o.input.size() != expected.size() || (o.input - expected).norm() > 1e-12) {
      throw IoError(path.string() + ": sample " + std::to_string(o.sample_index) +
                    " was produced with a different seed");
    }
    done[o.sample_index] = o;
  }
  return done;
}

int cmd_experiment(const Globals& g, const std::string& objective_name, int samples, int threads) {
  const Objective objective = objective_from_string(objective_name);
  OptimizerConfig cfg = g.config.empty() ? OptimizerConfig{} : load_config(g.config);
  if (g.seed_given) cfg.seed = g.seed;
  if (samples > 0) cfg.n_samples = samples;
  if (threads > 0) cfg.threads = threads;
  cfg.validate();

  const fs::path dir = g.out.empty() ? fs::path("experiment-" + objective_name) : fs::path(g.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  const fs::path outcomes_path = dir / "outcomes.jsonl";
  const fs::path summary_path = dir / "summary.json";

  std::map<int, BroadcastOutcome> done = load_outcomes(outcomes_path, objective, cfg);
  {
    // Rewrite the valid prefix so appends start on a clean line.
    std::ofstream rewrite(outcomes_path, std::ios::trunc);
    if (!rewrite) throw IoError("cannot write " + outcomes_path.string());
    for (const auto& [idx, o] : done) rewrite << to_json(o).dump() << "\n";
  }
  std::vector<int> todo;
  for (int i = 0; i < cfg.n_samples; ++i)
    if (!done.count(i)) todo.push_back(i);

  std::ofstream out(outcomes_path, std::ios::app);
  if (!out) throw IoError("cannot append to " + outcomes_path.string());
  if (!g.json) {
    std::cerr << "experiment " << objective_name << ": " << done.size() << " resumed, " << todo.size()
              << " to run -> " << dir.string() << "\n";
  }

  // Single writer in sample order: finished samples wait until all earlier ones are written.
  std::map<int, BroadcastOutcome> pending;
  std::size_t cursor = 0;
  run_samples(todo, objective, cfg, [&](const BroadcastOutcome& o) {
    pending[o.sample_index] = o;
    while (cursor < todo.size() && pending.count(todo[cursor])) {
      const BroadcastOutcome& next = pending[todo[cursor]];
      out << to_json(next).dump() << "\n" << std::flush;
      done[next.sample_index] = next;
      pending.erase(todo[cursor]);
      ++cursor;
    }
  });
  if (!out) throw IoError("write failure on " + outcomes_path.string());

  std::vector<BroadcastOutcome> all;
  for (const auto& [idx, o] : done)
    if (idx < cfg.n_samples) all.push_back(o);
  const BatchSummary summary = summarize(objective, all);
  json sj = to_json(summary);
  sj["seed"] = cfg.seed;
  sj["epsilon"] = cfg.epsilon;
  sj["population"] = cfg.population;
  sj["max_evals"] = cfg.max_evals;
  {
    std::ofstream sf(summary_path);
    if (!sf) throw IoError("cannot write " + summary_path.string());
    sf << sj.dump(2) << "\n";
  }
  if (g.json) {
    std::cout << sj.dump(2) << "\n";
  } else {
    std::cout << "objective          " << objective_name << "\n"
              << "samples            " << summary.n_samples << "\n"
              << "converged          " << summary.converged << " (" << fmt(summary.converged_fraction) << ")\n"
              << "mean_fidelity      " << fmt(summary.mean_fidelity) << "\n"
              << "min_fidelity       " << fmt(summary.min_fidelity) << "\n"
              << "mean_magic_power   " << fmt(summary.mean_magic_power) << "\n"
              << "summary            " << summary_path.string() << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- geometry

struct GeometryArgs {
  std::string spec;
  std::string sys0, sys1, aux0, aux1;
  double level = 1.0;
};

int cmd_geometry(const Globals& g, const GeometryArgs& a) {
  std::vector<BlochVector> ends;
  if (!a.spec.empty()) {
    if (!a.sys0.empty() || !a.sys1.empty() || !a.aux0.empty() || !a.aux1.empty())
      throw UsageError("--spec and explicit endpoints are exclusive");
    BroadcasterSpec s = a.spec == "maximal"  ? maximal_magic_spec()
                        : a.spec == "random" ? random_broadcaster_spec(g.seed)
                                             : throw UsageError("--spec must be maximal or random");
    ends = {bloch_from_density(s.sys_out.first), bloch_from_density(s.sys_out.second),
            bloch_from_density(s.aux_out.first), bloch_from_density(s.aux_out.second)};
  } else {
    if (a.sys0.empty() || a.sys1.empty() || a.aux0.empty() || a.aux1.empty())
      throw UsageError("geometry needs --sys0 --sys1 --aux0 --aux1 or --spec");
    ends = {parse_endpoint(a.sys0), parse_endpoint(a.sys1), parse_endpoint(a.aux0), parse_endpoint(a.aux1)};
  }
  const GeometryCertificate cert = broadcast_geometry_certificate(ends[0], ends[1], ends[2], ends[3], a.level);
  Sink sink(g.out);
  if (g.json) {
    sink.os() << to_json(cert, ends).dump(2) << "\n";
    return kExitOk;
  }
  auto list = [](const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + fmt(v[k]);
    return s + "]";
  };
  sink.os() << "level           " << fmt(cert.level) << "\n"
            << "reference_level " << fmt(cert.reference_level) << "\n"
            << "sys_t           " << list(cert.sys_t) << "\n"
            << "aux_t           " << list(cert.aux_t) << "\n"
            << "common_t        " << list(cert.common_t) << "\n"
            << "broadcastable   " << (cert.broadcastable ? "true" : "false") << "\n";
  return kExitOk;
}

bool is_usage_kind(ErrorKind k) { return k != ErrorKind::InternalError; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magic-state broadcasting toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Base RNG seed (default 1)")->each([&](const std::string&) { g.seed_given = true; });
  app.add_flag("--json", g.json, "Emit JSON instead of text");
  app.add_option("--out", g.out, "Output file (experiment: output directory)");
  app.add_option("--config", g.config, "Optimizer config JSON (experiment)");

  std::string magic_spec;
  auto* magic = app.add_subcommand("magic", "Magic measures of a state");
  magic->add_option("state", magic_spec,
                    "Named state (T, Tperp, H, zero, one, plus, minus, plus_i, minus_i), "
                    "'theta,zeta[,basis=T|computational]' or 'amp:re,im;re,im;...'")
      ->required();

  CloneArgs clone_args;
  auto* clone = app.add_subcommand("clone", "Wootters-Zurek / Buzek-Hillery broadcasting");
  clone->footer(
      "Sweeps (--theta/--zeta as start:stop:count or a comma list) print CSV with columns\n"
      "theta,zeta,input_magic,output_magic,ratio at 17 significant digits.");
  clone->add_option("--machine", clone_args.machine, "wz or bh")->required();
  clone->add_option("--reference", clone_args.reference, "wz reference state spec (default T)");
  clone->add_option("--gamma", clone_args.gamma, "wz reference polar angle (overrides --reference)");
  clone->add_option("--gamma-prime", clone_args.gamma_prime, "wz reference phase");
  clone->add_option("--xi", clone_args.xi, "bh overlap xi in [0, 1/2]");
  clone->add_option("--eta", clone_args.eta, "bh overlap eta (default: upper bound for xi)");
  clone->add_option("--input", clone_args.input, "Single input state spec");
  clone->add_option("--theta", clone_args.thetas, "Sweep grid over theta");
  clone->add_option("--zeta", clone_args.zetas, "Sweep grid over zeta");

  std::string suite;
  long verify_samples = 0;
  auto* verify = app.add_subcommand("verify", "Run a property-verification suite");
  std::string suites_help = "Suite name or 'all':";
  for (const auto& n : suite_names()) suites_help += " " + n;
  verify->add_option("suite", suite, suites_help)->required();
  verify->add_option("--samples", verify_samples, "Sample count (default per suite)");

  std::string objective;
  int exp_samples = 0;
  int exp_threads = 0;
  auto* experiment = app.add_subcommand("experiment", "Optimize broadcasting unitaries over Haar-random inputs");
  experiment->add_option("--objective", objective, "magic or state")->required();
  experiment->add_option("--samples", exp_samples, "Number of samples (overrides config n_samples)");
  experiment->add_option("--threads", exp_threads, "Worker threads (default: all cores)");

  GeometryArgs geo;
  auto* geometry = app.add_subcommand("geometry", "Equal-ratio polytope certificate");
  geometry->add_option("--spec", geo.spec, "maximal or random (uses --seed)");
  geometry->add_option("--sys0", geo.sys0, "State spec or bloch:x,y,z");
  geometry->add_option("--sys1", geo.sys1, "State spec or bloch:x,y,z");
  geometry->add_option("--aux0", geo.aux0, "State spec or bloch:x,y,z");
  geometry->add_option("--aux1", geo.aux1, "State spec or bloch:x,y,z");
  geometry->add_option("--level", geo.level, "Target polytope level r >= 1")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*magic) return cmd_magic(g, magic_spec);
    if (*clone) return cmd_clone(g, clone_args);
    if (*verify) return cmd_verify(g, suite, verify_samples);
    if (*experiment) return cmd_experiment(g, objective, exp_samples, exp_threads);
    if (*geometry) return cmd_geometry(g, geo);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_usage_kind(e.kind()) ? kExitUsage : kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
