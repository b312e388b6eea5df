// Copyright 2026 The cohthermo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cohthermo/error.hpp"
#include "cohthermo/instances.hpp"
#include "cohthermo/io.hpp"
#include "cohthermo/jc.hpp"
#include "cohthermo/measures.hpp"
#include "cohthermo/reservoir.hpp"

namespace cohthermo::cli {
namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr double kBalanceTol = 1e-8;
constexpr double kChainTol = 1e-9;
constexpr double kMarginTol = 1e-8;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_number(std::string_view text, std::string_view what) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + ": '" + s + "' is not a number");
  }
  if (used != s.size() || !std::isfinite(v)) throw UsageError(std::string(what) + ": '" + s + "' is not a finite number");
  return v;
}

std::size_t parse_count(std::string_view text, std::string_view what) {
  const double v = parse_number(text, what);
  if (v < 1.0 || v != std::floor(v) || v > 1e9) throw UsageError(std::string(what) + ": '" + std::string(text) + "' is not a positive integer");
  return static_cast<std::size_t>(v);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

fs::path prepare_path(const fs::path& dir, const std::string& name) {
  fs::path p = fs::path(name).is_absolute() ? fs::path(name) : dir / name;
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  if (ec) throw UsageError("cannot create directory " + p.parent_path().string() + ": " + ec.message());
  return p;
}

std::ofstream open_output(const fs::path& p) {
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  if (!os) throw UsageError("cannot open " + p.string() + " for writing");
  return os;
}

void write_json(const fs::path& p, const ordered_json& j) {
  auto os = open_output(p);
  os << j.dump(2) << '\n';
}

ordered_json number_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

// ---- config files -------------------------------------------------------

std::string option_name_for(const std::string& key) {
  std::string name = "--" + key;
  std::replace(name.begin(), name.end(), '_', '-');
  return name;
}

std::vector<std::string> config_values(const std::string& key, const ordered_json& v) {
  std::vector<std::string> out;
  auto scalar = [&](const ordered_json& x) {
    if (x.is_string()) return x.get<std::string>();
    if (x.is_boolean()) return std::string(x.get<bool>() ? "true" : "false");
    if (x.is_number_integer()) return std::to_string(x.get<long long>());
    if (x.is_number()) return io::format_double(x.get<double>());
    throw UsageError("config field '" + key + "' has an unsupported type");
  };
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(scalar(x));
  } else {
    out.push_back(scalar(v));
  }
  return out;
}

/// Fills options not given on the command line from a JSON object.
void apply_config(CLI::App& sub, const std::string& file, std::optional<std::string>& out_from_config) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw UsageError("config: cannot read '" + file + "'");
  ordered_json cfg;
  try {
    cfg = ordered_json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config: " + std::string(e.what()));
  }
  if (!cfg.is_object()) throw UsageError("config: top level must be an object");

  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") {
      if (!value.is_string() || value.get<std::string>() != sub.get_name()) {
        throw UsageError("config field 'command' does not match '" + sub.get_name() + "'");
      }
      continue;
    }
    if (key == "out") {
      if (!value.is_string()) throw UsageError("config field 'out' must be a string");
      out_from_config = value.get<std::string>();
      continue;
    }
    CLI::Option* opt = sub.get_option_no_throw(option_name_for(key));
    if (opt == nullptr || key == "config") throw UsageError("config field '" + key + "' is not an option of " + sub.get_name());
    if (opt->count() > 0) continue;
    try {
      for (auto& s : config_values(key, value)) opt->add_result(s);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError("config field '" + key + "': " + e.what());
    }
  }
}

// ---- verify-identities ---------------------------------------------------

struct VerifyOptions {
  std::size_t trials = 500;
  std::vector<std::string> dims{"2x4"};
  std::uint64_t seed = 42;
  bool identity = false;
  std::optional<double> probe_energy;
  std::string output = "verify_identities.json";
};

void add_verify(CLI::App& app, VerifyOptions& o) {
  app.add_option("--trials", o.trials, "Instances per dimension pair")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--dims", o.dims, "System x reservoir dimensions, e.g. 2x4")->delimiter(',')->capture_default_str();
  app.add_option("--seed", o.seed, "Generator seed")->capture_default_str();
  app.add_flag("--identity", o.identity, "Use identity evolution");
  app.add_option("--probe-energy", o.probe_energy, "Solve for the inverse temperature of this reservoir energy first");
  app.add_option("--output", o.output, "Report file name")->capture_default_str();
}

int cmd_verify(const VerifyOptions& o, const fs::path& dir, Streams io) {
  std::vector<std::pair<std::size_t, std::size_t>> dims;
  for (const auto& d : o.dims) dims.push_back(parse_dims(d));
  if (dims.empty()) throw UsageError("dims: at least one pair is required");

  SplitMix64 rng(o.seed);
  ordered_json report;
  report["command"] = "verify-identities";
  report["seed"] = o.seed;
  report["trials"] = o.trials;
  report["identity"] = o.identity;
  report["tolerances"] = {{"balance", kBalanceTol}, {"chain", kChainTol}, {"margin", -kMarginTol}};

  if (o.probe_energy) {
    const auto energies = random_energies(rng, dims.front().second);
    const double beta = effective_beta(energies, *o.probe_energy);
    report["probe"] = {{"energy", *o.probe_energy}, {"beta", beta}};
  }

  double max_balance = 0.0;
  double max_chain = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();
  ordered_json per_dims = ordered_json::array();
  for (const auto& [d_s, d_e] : dims) {
    double mb = 0.0;
    double mc = 0.0;
    double mm = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < o.trials; ++k) {
      const CollisionInstance inst = o.identity ? collision_with(rng, d_s, d_e, CMatrix::identity(d_s * d_e))
                                                : random_collision(rng, d_s, d_e);
      const BalanceResult bal = exact_balance(inst.initial, inst.final, inst.energies);
      const SpectrumReservoir r0(inst.energies, inst.initial.reduced_b());
      const SpectrumReservoir r1(inst.energies, inst.final.reduced_b());
      const RelativeEntropySplit sp = decompose_relative_entropy(r0, r1);
      mb = std::max(mb, std::abs(bal.residual));
      mc = std::max(mc, std::abs(sp.chain_residual()));
      mm = std::min(mm, second_law_check(bal.ledger, Regime::Exact).margin);
    }
    per_dims.push_back({{"d_a", d_s},
                        {"d_b", d_e},
                        {"max_balance_residual", mb},
                        {"max_chain_residual", mc},
                        {"min_second_law_margin", number_or_null(mm)}});
    max_balance = std::max(max_balance, mb);
    max_chain = std::max(max_chain, mc);
    min_margin = std::min(min_margin, mm);
  }
  const bool pass = max_balance < kBalanceTol && max_chain < kChainTol && min_margin >= -kMarginTol;
  report["results"] = per_dims;
  report["max_balance_residual"] = max_balance;
  report["max_chain_residual"] = max_chain;
  report["min_second_law_margin"] = number_or_null(min_margin);
  report["pass"] = pass;

  const fs::path path = prepare_path(dir, o.output);
  write_json(path, report);
  io.out << "verify-identities: " << o.trials * dims.size() << " instances, max balance residual "
         << io::format_double(max_balance) << ", max chain residual " << io::format_double(max_chain)
         << ", min margin " << io::format_double(min_margin) << (pass ? " [pass]" : " [FAIL]") << '\n';
  io.out << "wrote " << path.string() << '\n';
  return pass ? kPass : kToleranceFailure;
}

// ---- jc-evolve -----------------------------------------------------------

struct JcOptions {
  double omega = 1.0;
  double omega_a = 1.0;
  double g = 0.05;
  double beta = 1.0;
  std::size_t n_max = 0;
  double p_e = 0.3;
  double mu_re = 0.2;
  double mu_im = 0.1;
  std::optional<double> t_max;
  std::size_t steps = 201;
  std::optional<std::string> times;
  bool exact_only = false;
  double tolerance = 1e-8;
  std::string output = "jc_evolve.csv";
};

void add_jc(CLI::App& app, JcOptions& o) {
  app.add_option("--omega", o.omega, "Field frequency")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--omega-a", o.omega_a, "Atomic frequency")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--g", o.g, "Coupling")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--beta", o.beta, "Field inverse temperature")->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--n-max", o.n_max, "Fock cutoff (0: automatic)")->capture_default_str();
  app.add_option("--p-e", o.p_e, "Initial excited population")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  app.add_option("--mu-re", o.mu_re, "Re <e|rho|g>")->capture_default_str();
  app.add_option("--mu-im", o.mu_im, "Im <e|rho|g>")->capture_default_str();
  app.add_option("--t-max", o.t_max, "Last time of a uniform grid (default 10/g)");
  app.add_option("--steps", o.steps, "Points of the uniform grid")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--times", o.times, "Explicit comma-separated times");
  app.add_flag("--exact-only", o.exact_only, "Skip the closed-form and short-time columns");
  app.add_option("--tolerance", o.tolerance, "Closed-form agreement required for exit 0")->capture_default_str();
  app.add_option("--output", o.output, "CSV file name")->capture_default_str();
}

int cmd_jc(const JcOptions& o, const fs::path& dir, Streams io) {
  jc::JCConfig cfg = jc::JCConfig::make(o.omega, o.omega_a, o.g, o.beta, std::max<std::size_t>(o.n_max, 2));
  if (o.n_max != 0) {
    cfg.n_max = o.n_max;
    cfg.validate();
  }
  const AtomSpec atom{o.p_e, {o.mu_re, o.mu_im}};
  atom_state(atom);

  std::vector<double> grid;
  if (o.times) {
    grid = parse_times(*o.times);
  } else {
    const double t_max = o.t_max.value_or(10.0 / o.g);
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw UsageError("t-max: must be a non-negative time");
    grid.resize(o.steps);
    for (std::size_t i = 0; i < o.steps; ++i) {
      grid[i] = o.steps == 1 ? t_max : t_max * static_cast<double>(i) / static_cast<double>(o.steps - 1);
    }
  }

  const bool analytic = !o.exact_only;
  const fs::path path = prepare_path(dir, o.output);
  std::ostringstream buf;
  io::CsvWriter csv(buf, {"t", "p_e_exact", "p_e_closed", "p_e_short", "|mu|_exact", "|mu|_closed", "|mu|_short",
                          "xi_exact"});
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double max_pe = 0.0;
  double max_mu = 0.0;
  for (double t : grid) {
    const jc::JointState js = jc::evolve_joint(cfg, atom, t);
    const double pe = js.atom(0, 0).real();
    const cplx mu = js.atom(0, 1);
    const double xi = rel_entropy_coherence(js.atom);
    double pe_c = nan, mu_c = nan, pe_s = nan, mu_s = nan;
    if (analytic) {
      const jc::AtomDynamics cf = jc::closed_form_resonant(cfg, atom, t);
      pe_c = cf.p_e;
      mu_c = std::abs(cf.mu);
      max_pe = std::max(max_pe, std::abs(pe - cf.p_e));
      max_mu = std::max(max_mu, std::abs(mu - cf.mu));
      if (o.g * t <= 0.1) {
        const jc::AtomDynamics st = jc::short_time_approx(cfg, atom, t);
        pe_s = st.p_e;
        mu_s = std::abs(st.mu);
      }
    }
    csv.row({t, pe, pe_c, pe_s, std::abs(mu), mu_c, mu_s, xi});
  }
  auto os = open_output(path);
  os << buf.str();

  io.out << "jc-evolve: " << grid.size() << " times, n_max " << cfg.n_max << '\n';
  if (!analytic) {
    io.out << "wrote " << path.string() << '\n';
    return kPass;
  }
  const bool pass = max_pe < o.tolerance && max_mu < o.tolerance;
  io.out << "max |p_e_exact - p_e_closed| = " << io::format_double(max_pe) << '\n';
  io.out << "max |mu_exact - mu_closed| = " << io::format_double(max_mu) << (pass ? " [pass]" : " [FAIL]") << '\n';
  io.out << "wrote " << path.string() << '\n';
  return pass ? kPass : kToleranceFailure;
}

// ---- micromaser ----------------------------------------------------------

struct MicromaserOptions {
  double omega = 1.0;
  double omega_a = 1.0;
  double g = 0.05;
  double beta = 1.0;
  double g_tau = 0.02;
  std::size_t atoms = 100;
  double xi0 = 0.01;
  std::optional<double> p_e;
  std::string mode = "frozen";
  double tolerance = 0.10;
  std::string output = "micromaser_ledger.csv";
  std::string summary = "micromaser_summary.json";
};

void add_micromaser(CLI::App& app, MicromaserOptions& o) {
  app.add_option("--omega", o.omega, "Field frequency")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--omega-a", o.omega_a, "Atomic frequency")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--g", o.g, "Coupling")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--beta", o.beta, "Field inverse temperature")->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--g-tau", o.g_tau, "Coupling times interaction time")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--atoms", o.atoms, "Number of atoms")->capture_default_str();
  app.add_option("--xi0", o.xi0, "Coherence of each incoming atom")->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--p-e", o.p_e, "Excited population (default: thermal at the field temperature)")
      ->check(CLI::Range(0.0, 0.5));
  app.add_option("--mode", o.mode, "frozen or updating")->check(CLI::IsMember({"frozen", "updating"}))->capture_default_str();
  app.add_option("--tolerance", o.tolerance, "Relative gap allowed in frozen mode")->capture_default_str();
  app.add_option("--output", o.output, "Ledger CSV file name")->capture_default_str();
  app.add_option("--summary", o.summary, "Summary JSON file name")->capture_default_str();
}

int cmd_micromaser(const MicromaserOptions& o, const fs::path& dir, Streams io) {
  jc::MicromaserRun run;
  run.cfg = jc::JCConfig::make(o.omega, o.omega_a, o.g, o.beta);
  const double p_e = o.p_e.value_or(jc::thermal_excited_population(o.beta, o.omega_a));
  run.atom = jc::atom_for_coherence(p_e, o.xi0);
  run.rate = o.g / o.g_tau;
  run.n_atoms = o.atoms;
  const jc::FieldMode mode = o.mode == "updating" ? jc::FieldMode::Updating : jc::FieldMode::Frozen;
  const jc::MicromaserLedger ledger = jc::run_micromaser(run, mode);

  const fs::path ledger_path = prepare_path(dir, o.output);
  {
    std::ostringstream buf;
    jc::write_ledger_csv(buf, ledger);
    auto os = open_output(ledger_path);
    os << buf.str();
  }

  double max_step = -std::numeric_limits<double>::infinity();
  for (const auto& s : ledger.steps) max_step = std::max(max_step, s.delta_xi);
  const auto gap = ledger.relative_gap();
  // Per-step decay and the rate law are claims about a frozen field only.
  const bool frozen = mode == jc::FieldMode::Frozen;
  const bool checked = frozen && gap.has_value();
  const bool monotone = ledger.steps.empty() || max_step <= 0.0;
  const bool pass = !frozen || (monotone && (!checked || *gap <= o.tolerance));

  ordered_json s;
  s["command"] = "micromaser";
  s["mode"] = o.mode;
  s["n_atoms"] = o.atoms;
  s["omega"] = o.omega;
  s["omega_a"] = o.omega_a;
  s["g"] = o.g;
  s["g_tau"] = o.g_tau;
  s["rate"] = run.rate;
  s["beta_field"] = o.beta;
  s["n_max"] = run.cfg.n_max;
  s["p_e"] = run.atom.p_e;
  s["mu"] = run.atom.mu.real();
  s["xi0"] = ledger.xi0;
  s["n_mean0"] = ledger.n_mean0;
  s["gamma"] = ledger.gamma;
  s["t_final"] = ledger.t_final;
  s["delta_xi_E_simulated"] = ledger.delta_xi_total;
  s["delta_xi_E_formula"] = ledger.formula;
  s["relative_gap"] = gap ? ordered_json(*gap) : ordered_json(nullptr);
  s["gap_defined"] = gap.has_value();
  s["heat_total"] = ledger.heat_total;
  s["max_step_delta_xi"] = number_or_null(max_step);
  s["tolerance"] = o.tolerance;
  s["tolerance_checked"] = checked;
  s["pass"] = pass;
  const fs::path summary_path = prepare_path(dir, o.summary);
  write_json(summary_path, s);

  io.out << "micromaser (" << o.mode << "): " << o.atoms << " atoms, delta_xi_E simulated "
         << io::format_double(ledger.delta_xi_total) << ", formula " << io::format_double(ledger.formula)
         << ", relative gap " << (gap ? io::format_double(*gap) : std::string("undefined"))
         << (pass ? " [pass]" : " [FAIL]") << '\n';
  io.out << "wrote " << ledger_path.string() << " and " << summary_path.string() << '\n';
  return pass ? kPass : kToleranceFailure;
}

// ---- engine-sweep --------------------------------------------------------

struct EngineOptions {
  std::string kind = "carnot";
  std::string T_h = "1";
  std::string T_c = "0.6";
  std::string dS_S = "0.5";
  std::string dC_h = "0";
  std::string dC_c = "0";
  double dI_h = 0.0;
  double dI_c = 0.0;
  std::string eta_C = "0.5";
  std::string Gamma = "1";
  std::string xi_h = "0.01";
  std::string t_h = "1";
  std::string dS_l = "0.01";
  std::string output = "engine_sweep.csv";
};

void add_engine(CLI::App& app, EngineOptions& o) {
  app.add_option("--kind", o.kind, "carnot or photon")->check(CLI::IsMember({"carnot", "photon"}))->capture_default_str();
  app.add_option("--T-h", o.T_h, "Hot temperature range lo:hi:steps")->capture_default_str();
  app.add_option("--T-c", o.T_c, "Cold temperature range")->capture_default_str();
  app.add_option("--dS-S", o.dS_S, "Working-substance entropy change range")->capture_default_str();
  app.add_option("--dC-h", o.dC_h, "Hot reservoir coherence change range")->capture_default_str();
  app.add_option("--dC-c", o.dC_c, "Cold reservoir coherence change range")->capture_default_str();
  app.add_option("--dI-h", o.dI_h, "Hot-stroke correlation change")->capture_default_str();
  app.add_option("--dI-c", o.dI_c, "Cold-stroke correlation change")->capture_default_str();
  app.add_option("--eta-C", o.eta_C, "Carnot efficiency range (photon)")->capture_default_str();
  app.add_option("--Gamma", o.Gamma, "Decay coefficient range (photon)")->capture_default_str();
  app.add_option("--xi-h", o.xi_h, "Atomic coherence range (photon)")->capture_default_str();
  app.add_option("--t-h", o.t_h, "Hot-stroke duration range (photon)")->capture_default_str();
  app.add_option("--dS-l", o.dS_l, "Photon entropy change range (photon)")->capture_default_str();
  app.add_option("--output", o.output, "CSV file name")->capture_default_str();
}

engine::Range named_range(const std::string& text, std::string_view name) {
  try {
    return parse_range(text);
  } catch (const UsageError& e) {
    throw UsageError(std::string(name) + ": " + e.what());
  }
}

int cmd_engine(const EngineOptions& o, const fs::path& dir, Streams io) {
  std::ostringstream buf;
  std::size_t n_rows = 0;
  if (o.kind == "carnot") {
    engine::CarnotSweep sw;
    sw.T_h = named_range(o.T_h, "T-h");
    sw.T_c = named_range(o.T_c, "T-c");
    sw.dS_S = named_range(o.dS_S, "dS-S");
    sw.dC_h = named_range(o.dC_h, "dC-h");
    sw.dC_c = named_range(o.dC_c, "dC-c");
    sw.dI_h = o.dI_h;
    sw.dI_c = o.dI_c;
    const engine::CarnotSweepResult res = engine::sweep_carnot(sw);
    for (const auto& s : res.skipped) io.err << "row " << s.index << " skipped: " << s.reason << '\n';
    io::CsvWriter csv(buf, {"T_h", "T_c", "dS_S", "dC_h", "dC_c", "dI_h", "dI_c", "eta_C", "eta", "W", "W_c", "W_e"});
    for (const auto& r : res.rows) {
      const auto& c = r.spec;
      if (c.dC_h < 0.0 && c.dC_c < 0.0 && c.dI_h == 0.0 && c.dI_c == 0.0 && !(r.eta > r.eta_C)) {
        io.err << "efficiency " << io::format_double(r.eta) << " does not exceed the Carnot value "
               << io::format_double(r.eta_C) << " at T_h=" << io::format_double(c.T_h)
               << " T_c=" << io::format_double(c.T_c) << " dS_S=" << io::format_double(c.dS_S)
               << " dC_h=" << io::format_double(c.dC_h) << " dC_c=" << io::format_double(c.dC_c) << '\n';
        return kToleranceFailure;
      }
      csv.row({c.T_h, c.T_c, c.dS_S, c.dC_h, c.dC_c, c.dI_h, c.dI_c, r.eta_C, r.eta, r.work.W, r.work.W_c, r.work.W_e});
    }
    n_rows = res.rows.size();
  } else {
    engine::PhotonSweep sw;
    sw.eta_C = named_range(o.eta_C, "eta-C");
    sw.Gamma = named_range(o.Gamma, "Gamma");
    sw.xi_h = named_range(o.xi_h, "xi-h");
    sw.t_h = named_range(o.t_h, "t-h");
    sw.dS_l = named_range(o.dS_l, "dS-l");
    const auto rows = engine::sweep_photon(sw);
    io::CsvWriter csv(buf, {"eta_C", "Gamma", "xi_h", "t_h", "dS_l", "eta"});
    for (const auto& r : rows) {
      const auto& c = r.spec;
      if (r.eta < c.eta_C || !(r.eta < 1.0)) {
        io.err << "efficiency " << io::format_double(r.eta) << " outside [eta_C, 1) at eta_C=" << io::format_double(c.eta_C)
               << " boost=" << io::format_double(c.coherence_boost()) << '\n';
        return kToleranceFailure;
      }
      csv.row({c.eta_C, c.Gamma, c.xi_h, c.t_h, c.dS_l, r.eta});
    }
    n_rows = rows.size();
  }
  const fs::path path = prepare_path(dir, o.output);
  auto os = open_output(path);
  os << buf.str();
  io.out << "engine-sweep (" << o.kind << "): " << n_rows << " rows\n";
  io.out << "wrote " << path.string() << '\n';
  return kPass;
}

}  // namespace

engine::Range parse_range(std::string_view text) {
  const auto parts = split(text, ':');
  engine::Range r;
  if (parts.size() == 1) {
    r.lo = r.hi = parse_number(parts[0], "range");
    r.steps = 1;
  } else if (parts.size() == 3) {
    r.lo = parse_number(parts[0], "range lower bound");
    r.hi = parse_number(parts[1], "range upper bound");
    r.steps = parse_count(parts[2], "range steps");
  } else {
    throw UsageError("range '" + std::string(text) + "' must be a number or lo:hi:steps");
  }
  return r;
}

std::pair<std::size_t, std::size_t> parse_dims(std::string_view text) {
  const auto parts = split(text, 'x');
  if (parts.size() != 2) throw UsageError("dims: '" + std::string(text) + "' must look like 2x4");
  const std::size_t a = parse_count(parts[0], "dims");
  const std::size_t b = parse_count(parts[1], "dims");
  if (a < 2 || b < 2) throw UsageError("dims: both factors must be at least 2");
  return {a, b};
}

std::vector<double> parse_times(std::string_view text) {
  std::vector<double> out;
  for (auto p : split(text, ',')) {
    const double t = parse_number(p, "times");
    if (t < 0.0) throw UsageError("times: negative time " + std::string(p));
    out.push_back(t);
  }
  return out;
}

fs::path resolve_output_dir(const std::optional<std::string>& flag, const std::optional<std::string>& from_config) {
  if (flag) return *flag;
  if (const char* env = std::getenv("COHTHERMO_OUT"); env != nullptr && *env != '\0') return env;
  if (from_config) return *from_config;
  return ".";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherent-reservoir thermodynamics: identity checks, Jaynes-Cummings runs and engine sweeps", "cohthermo"};
  app.require_subcommand(1);
  std::optional<std::string> out_flag;
  std::optional<std::string> config_file;
  app.add_option("--out", out_flag, "Output directory (overrides COHTHERMO_OUT)");
  app.add_option("--config", config_file, "JSON config; flags take precedence");

  VerifyOptions verify;
  JcOptions jc_opts;
  MicromaserOptions maser;
  EngineOptions eng;
  CLI::App* verify_cmd = app.add_subcommand("verify-identities", "Balance and decomposition identities on random instances");
  CLI::App* jc_cmd = app.add_subcommand("jc-evolve", "Atom time series: exact, closed form and short time");
  CLI::App* maser_cmd = app.add_subcommand("micromaser", "Repeated atom-field collisions and the coherence decay law");
  CLI::App* engine_cmd = app.add_subcommand("engine-sweep", "Efficiency and work over a parameter grid");
  add_verify(*verify_cmd, verify);
  add_jc(*jc_cmd, jc_opts);
  add_micromaser(*maser_cmd, maser);
  add_engine(*engine_cmd, eng);
  for (CLI::App* sub : {verify_cmd, jc_cmd, maser_cmd, engine_cmd}) {
    sub->add_option("--out", out_flag, "Output directory (overrides COHTHERMO_OUT)");
    sub->add_option("--config", config_file, "JSON config; flags take precedence");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  CLI::App* sub = app.get_subcommands().front();
  const Streams io{out, err};
  try {
    std::optional<std::string> out_config;
    if (config_file) apply_config(*sub, *config_file, out_config);
    const fs::path dir = resolve_output_dir(out_flag, out_config);
    if (sub == verify_cmd) return cmd_verify(verify, dir, io);
    if (sub == jc_cmd) return cmd_jc(jc_opts, dir, io);
    if (sub == maser_cmd) return cmd_micromaser(maser, dir, io);
    return cmd_engine(eng, dir, io);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << '\n';
  }
  return kUsageError;
}

}  // namespace cohthermo::cli
