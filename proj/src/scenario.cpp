// Copyright 2026 The optosqueeze Authors
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


#include "optosqueeze/scenario.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "optosqueeze/csv.hpp"
#include "optosqueeze/errors.hpp"
#include "optosqueeze/observables.hpp"
#include "optosqueeze/parallel.hpp"
#include "optosqueeze/states.hpp"
#include "optosqueeze/steady_state.hpp"

namespace optosqueeze {

namespace {

struct KeyDef {
  const char* key;
  const char* fallback;
};

// Order here is the order of the resolved header.
constexpr KeyDef kRunKeys[] = {
    {"mode", ""},
    {"engine", "effective"},
    {"output", ""},
    {"seed", "0"},
    {"r", "0"},
    {"g_minus", "0.01"},
    {"gamma", "0"},
    {"nbar_m", "0"},
    {"omega_m_eff_over_kappa", "inf"},
    {"N_a", "4"},
    {"N_b", "40"},
    {"cancel_4wm", "true"},
    {"nr_mech_amplitude", "0"},
    {"initial_state", "fock 0 0"},
    {"target_state", "auto"},
    {"t_final", "0"},
    {"n_samples", "101"},
    {"time_grid", "linear"},
    {"t_min", "1"},
    {"rtol", "1e-8"},
    {"atol", "1e-10"},
    {"integrator", "auto"},
    {"max_step", "0"},
    {"leakage_cap", "1e-4"},
    {"allow_leakage", "false"},
    {"allow_degenerate", "false"},
    {"state", "squeezed 1 0"},
};

constexpr KeyDef kStabilityKeys[] = {
    {"stability.omega_R_min", "0"}, {"stability.omega_R_max", "2.5"}, {"stability.eps_min", "0"},
    {"stability.eps_max", "1"},     {"stability.nx", "100"},          {"stability.ny", "100"},
    {"stability.gamma_tilde", "0"},
};

constexpr KeyDef kMeanFieldKeys[] = {
    {"mf.E_plus", "0"}, {"mf.E_zero", "0"},  {"mf.E_minus", "0"}, {"mf.Delta", "0"},
    {"mf.Omega", "0"},  {"mf.epsilon", "0"}, {"mf.kappa", "1"},   {"mf.omega_m", "1"},
    {"mf.g", "0"},      {"mf.gamma", "0"},   {"mf.match", "false"},
};

const std::vector<std::string> kSweepVars = {"r", "gamma", "nbar_m", "omega_m_eff_over_kappa"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("key '" + key + "': empty value");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE || std::isnan(v)) {
    throw ConfigError("key '" + key + "': '" + t + "' is not a number");
  }
  return v;
}

long parse_long(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
    throw ConfigError("key '" + key + "': '" + t + "' is not an integer");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  const long v = parse_long(key, text);
  if (v < -2147483647L || v > 2147483647L) throw ConfigError("key '" + key + "': value out of range");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
  if (t == "false" || t == "no" || t == "0" || t == "off") return false;
  throw ConfigError("key '" + key + "': '" + t + "' is not a boolean");
}

SweepAxis parse_sweep(const std::string& var, const std::string& text) {
  if (std::find(kSweepVars.begin(), kSweepVars.end(), var) == kSweepVars.end()) {
    throw ConfigError("sweep variable '" + var + "' is not one of r, gamma, nbar_m, omega_m_eff_over_kappa");
  }
  const std::string key = "sweep." + var;
  SweepAxis axis;
  axis.var = var;
  axis.text = trim(text);
  const auto tok = split_ws(text);
  if (tok.empty()) throw ConfigError("key '" + key + "': empty sweep");
  if (tok[0] == "values") {
    if (tok.size() < 2) throw ConfigError("key '" + key + "': 'values' needs at least one entry");
    for (std::size_t k = 1; k < tok.size(); ++k) axis.values.push_back(parse_double(key, tok[k]));
    return axis;
  }
  if (tok.size() != 3 && tok.size() != 4) {
    throw ConfigError("key '" + key + "': expected '<from> <to> <points> [linear|log]' or 'values ...'");
  }
  const double from = parse_double(key, tok[0]);
  const double to = parse_double(key, tok[1]);
  const int points = parse_int(key, tok[2]);
  const std::string scale = tok.size() == 4 ? tok[3] : "linear";
  if (points < 1) throw ConfigError("key '" + key + "': points must be >= 1");
  if (scale != "linear" && scale != "log") throw ConfigError("key '" + key + "': scale must be linear or log");
  if (!std::isfinite(from) || !std::isfinite(to)) throw ConfigError("key '" + key + "': range must be finite");
  if (scale == "log" && !(from > 0.0 && to > 0.0)) throw ConfigError("key '" + key + "': log sweep needs positive ends");
  for (int k = 0; k < points; ++k) {
    const double f = points == 1 ? 0.0 : static_cast<double>(k) / (points - 1);
    double v = scale == "log" ? std::exp(std::log(from) + f * (std::log(to) - std::log(from))) : from + f * (to - from);
    if (k == points - 1 && points > 1) v = to;
    // keep linear grids free of round-off like 0.30000000000000004
    if (scale == "linear") v = std::round(v * 1e12) / 1e12;
    axis.values.push_back(v);
  }
  return axis;
}

std::string lookup(const std::map<std::string, std::string>& kv, const KeyDef& def) {
  const auto it = kv.find(def.key);
  return it == kv.end() ? std::string(def.fallback) : it->second;
}

// States are built whatever their truncation tail; `leakage` reports it.
Vector embed_target(const StateSpec& spec, const SystemParams& p, Engine engine, int initial_nb, double& leakage) {
  leakage = 0.0;
  StateSpec s = spec;
  if (s.kind == StateSpec::Kind::None) return {};
  if (s.kind == StateSpec::Kind::Auto) {
    s.kind = StateSpec::Kind::Squeezed;
    s.r = p.r;
    s.n = initial_nb % 2;
  }
  const bool full = engine != Engine::Effective;
  const SpaceSignature sig = full ? p.full_signature() : p.mechanical_signature();
  const int mode = full ? 1 : 0;
  if (s.kind == StateSpec::Kind::Fock) {
    std::vector<int> occ = full ? std::vector<int>{s.n_a, s.n_b} : std::vector<int>{s.n_b};
    return number_state(sig, occ).amplitudes;
  }
  const StateVector sv = squeezed_number(sig, mode, SqueezeParam(s.r), s.n, 1.0);
  leakage = sv.leakage;
  return sv.amplitudes;
}

DensityMatrix initial_density(const StateSpec& s, const SystemParams& p, Engine engine, double& leakage) {
  leakage = 0.0;
  const bool full = engine != Engine::Effective;
  const SpaceSignature sig = full ? p.full_signature() : p.mechanical_signature();
  if (s.kind == StateSpec::Kind::Fock) {
    std::vector<int> occ = full ? std::vector<int>{s.n_a, s.n_b} : std::vector<int>{s.n_b};
    return DensityMatrix::fock(sig, occ);
  }
  if (s.kind == StateSpec::Kind::Squeezed) {
    const StateVector sv = squeezed_number(sig, full ? 1 : 0, SqueezeParam(s.r), s.n, 1.0);
    leakage = sv.leakage;
    return sv.density();
  }
  throw ConfigError("initial_state must be 'fock <n_a> <n_b>' or 'squeezed <r> <n>'");
}

int initial_phonons(const StateSpec& s) { return s.kind == StateSpec::Kind::Fock ? s.n_b : s.n; }

const std::vector<std::string> kObservableColumns = {
    "fidelity", "purity",   "var_x1", "var_x2", "squeezing_db", "opt_theta",      "opt_squeezing_db",
    "g2",       "mean_n",   "parity", "top_population"};

std::vector<double> observable_row(const ObservableRecord& rec, double top) {
  return {rec.fidelity, rec.purity, rec.var_x1, rec.var_x2, rec.squeezing_db, rec.opt_theta, rec.opt_squeezing_db,
          rec.g2,       rec.mean_n, rec.parity, top};
}

struct PointResult {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> advisories;
  bool leakage_flagged = false;
};

void flag_state_leakage(PointResult& out, const char* which, double leakage, double cap) {
  if (leakage <= cap) return;
  out.leakage_flagged = true;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s state truncation leakage %.3g exceeds cap %.3g; increase N_b", which, leakage, cap);
  out.advisories.push_back(buf);
}

PointResult run_evolve_point(const ScenarioConfig& cfg, const SystemParams& p) {
  PointResult out;
  EvolveOptions opts = cfg.evolve;
  opts.keep_states = false;
  double target_leak = 0.0, initial_leak = 0.0;
  const Vector target = embed_target(cfg.target, p, cfg.engine, initial_phonons(cfg.initial), target_leak);
  const DensityMatrix rho0 = initial_density(cfg.initial, p, cfg.engine, initial_leak);
  flag_state_leakage(out, "target", target_leak, opts.leakage_cap);
  flag_state_leakage(out, "initial", initial_leak, opts.leakage_cap);
  const std::vector<double> grid =
      cfg.log_time ? log_grid(cfg.t_min, cfg.t_final, cfg.n_samples - 1) : linear_grid(0.0, cfg.t_final, cfg.n_samples);

  auto on_sample = [&](double t, const DensityMatrix& rho) {
    const ObservableRecord rec = observe(t, rho, target);
    std::vector<double> row{t};
    const auto obs = observable_row(rec, rho.max_top_level_population());
    row.insert(row.end(), obs.begin(), obs.end());
    out.rows.push_back(std::move(row));
  };

  EvolutionResult res;
  switch (cfg.engine) {
    case Engine::Effective:
      res = evolve(effective_liouvillian(p), rho0, grid, opts, on_sample);
      break;
    case Engine::Full:
      res = evolve(full_liouvillian(p), rho0, grid, opts, on_sample);
      break;
    case Engine::FullNonRwa:
      res = evolve(interaction_hamiltonian(p), collapse_ops(p), rho0, grid, opts, on_sample);
      break;
  }
  if (res.leakage_flagged) {
    out.leakage_flagged = true;
    out.advisories.push_back(res.advisory);
  }
  return out;
}

PointResult run_steady_point(const ScenarioConfig& cfg, const SystemParams& p) {
  PointResult out;
  const Liouvillian l = cfg.engine == Engine::Effective ? effective_liouvillian(p) : full_liouvillian(p);
  SteadyStateOptions so;
  so.allow_degenerate = cfg.allow_degenerate;
  const SteadyStateResult ss = steady_state(l, so);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double sv2 = ss.smallest_singular_values.size() > 1 ? ss.smallest_singular_values[1] : nan;
  if (!ss.state) {
    std::vector<double> row(kObservableColumns.size(), nan);
    row.push_back(ss.null_dimension);
    row.push_back(sv2);
    out.rows.push_back(std::move(row));
    out.advisories.push_back("degenerate steady state: no unique representative");
    return out;
  }
  double target_leak = 0.0;
  const Vector target = embed_target(cfg.target, p, cfg.engine, initial_phonons(cfg.initial), target_leak);
  flag_state_leakage(out, "target", target_leak, cfg.evolve.leakage_cap);
  const ObservableRecord rec = observe(0.0, *ss.state, target);
  const double top = ss.state->max_top_level_population();
  auto row = observable_row(rec, top);
  if (target.size() == 0) row[0] = nan;
  row.push_back(ss.null_dimension);
  row.push_back(sv2);
  out.rows.push_back(std::move(row));
  if (top > cfg.evolve.leakage_cap) {
    out.leakage_flagged = true;
    char buf[160];
    std::snprintf(buf, sizeof buf, "steady-state top-level population %.3g exceeds cap %.3g; increase N_b", top,
                  cfg.evolve.leakage_cap);
    out.advisories.push_back(buf);
  }
  return out;
}

std::string describe_point(const ScenarioConfig& cfg, const std::vector<double>& pt) {
  std::string s;
  for (std::size_t k = 0; k < pt.size(); ++k) {
    if (k) s += ", ";
    s += cfg.sweeps[k].var + "=" + format_number(pt[k]);
  }
  return s.empty() ? "run" : s;
}

}  // namespace

std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::Evolve:
      return "evolve";
    case RunMode::Steady:
      return "steady";
    case RunMode::Sweep:
      return "sweep";
    case RunMode::Stability:
      return "stability";
    case RunMode::StateInfo:
      return "state-info";
  }
  return "evolve";
}

std::string to_string(Engine e) {
  switch (e) {
    case Engine::Full:
      return "full";
    case Engine::Effective:
      return "effective";
    case Engine::FullNonRwa:
      return "full-nonrwa";
  }
  return "effective";
}

StateSpec StateSpec::parse(const std::string& text) {
  const auto tok = split_ws(text);
  StateSpec s;
  if (tok.empty()) throw ConfigError("empty state description");
  if (tok[0] == "none" && tok.size() == 1) return s;
  if (tok[0] == "auto" && tok.size() == 1) {
    s.kind = Kind::Auto;
    return s;
  }
  if (tok[0] == "fock" && tok.size() == 3) {
    s.kind = Kind::Fock;
    s.n_a = parse_int("state", tok[1]);
    s.n_b = parse_int("state", tok[2]);
    if (s.n_a < 0 || s.n_b < 0) throw ConfigError("Fock occupations must be >= 0");
    return s;
  }
  if (tok[0] == "squeezed" && tok.size() == 3) {
    s.kind = Kind::Squeezed;
    s.r = parse_double("state", tok[1]);
    s.n = parse_int("state", tok[2]);
    if (!(s.r >= 0.0)) throw ConfigError("squeeze parameter must be >= 0");
    if (s.n != 0 && s.n != 1) throw ConfigError("squeezed number states are available for n = 0, 1");
    return s;
  }
  throw ConfigError("state '" + trim(text) + "' is not 'fock <n_a> <n_b>', 'squeezed <r> <n>', 'auto' or 'none'");
}

std::string StateSpec::text() const {
  switch (kind) {
    case Kind::Fock:
      return "fock " + std::to_string(n_a) + " " + std::to_string(n_b);
    case Kind::Squeezed:
      return "squeezed " + format_number(r) + " " + std::to_string(n);
    case Kind::Auto:
      return "auto";
    case Kind::None:
      return "none";
  }
  return "none";
}

ScenarioConfig parse_config(const std::string& text, const std::string& origin) {
  std::map<std::string, std::string> kv;
  std::vector<std::string> sweep_order;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    bool known = key.rfind("sweep.", 0) == 0;
    for (const auto& d : kRunKeys) known = known || key == d.key;
    for (const auto& d : kStabilityKeys) known = known || key == d.key;
    for (const auto& d : kMeanFieldKeys) known = known || key == d.key;
    if (!known) throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (kv.count(key)) throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = value;
    if (key.rfind("sweep.", 0) == 0) sweep_order.push_back(key);
  }

  ScenarioConfig cfg;
  auto get = [&](const char* key) {
    for (const auto& d : kRunKeys) {
      if (std::string(key) == d.key) return lookup(kv, d);
    }
    for (const auto& d : kStabilityKeys) {
      if (std::string(key) == d.key) return lookup(kv, d);
    }
    for (const auto& d : kMeanFieldKeys) {
      if (std::string(key) == d.key) return lookup(kv, d);
    }
    return std::string();
  };

  const std::string mode = get("mode");
  if (mode == "evolve") cfg.mode = RunMode::Evolve;
  else if (mode == "steady") cfg.mode = RunMode::Steady;
  else if (mode == "sweep") cfg.mode = RunMode::Sweep;
  else if (mode == "stability") cfg.mode = RunMode::Stability;
  else if (mode == "state-info") cfg.mode = RunMode::StateInfo;
  else if (mode.empty()) throw ConfigError("key 'mode' is required");
  else throw ConfigError("key 'mode': '" + mode + "' is not evolve, steady, sweep, stability or state-info");

  const std::string engine = get("engine");
  if (engine == "full") cfg.engine = Engine::Full;
  else if (engine == "effective") cfg.engine = Engine::Effective;
  else if (engine == "full-nonrwa") cfg.engine = Engine::FullNonRwa;
  else throw ConfigError("key 'engine': '" + engine + "' is not full, effective or full-nonrwa");

  cfg.output = get("output");
  cfg.seed = parse_long("seed", get("seed"));

  auto& p = cfg.params;
  p.r = parse_double("r", get("r"));
  p.g_minus = parse_double("g_minus", get("g_minus"));
  p.gamma = parse_double("gamma", get("gamma"));
  p.nbar_m = parse_double("nbar_m", get("nbar_m"));
  p.omega_m_eff_over_kappa = parse_double("omega_m_eff_over_kappa", get("omega_m_eff_over_kappa"));
  p.N_a = parse_int("N_a", get("N_a"));
  p.N_b = parse_int("N_b", get("N_b"));
  p.cancel_4wm = parse_bool("cancel_4wm", get("cancel_4wm"));
  p.nr_mech_amplitude = parse_double("nr_mech_amplitude", get("nr_mech_amplitude"));

  cfg.initial = StateSpec::parse(get("initial_state"));
  cfg.target = StateSpec::parse(get("target_state"));
  cfg.state = StateSpec::parse(get("state"));
  cfg.t_final = parse_double("t_final", get("t_final"));
  cfg.n_samples = parse_int("n_samples", get("n_samples"));
  const std::string grid = get("time_grid");
  if (grid != "linear" && grid != "log") throw ConfigError("key 'time_grid': must be linear or log");
  cfg.log_time = grid == "log";
  cfg.t_min = parse_double("t_min", get("t_min"));
  cfg.evolve.rtol = parse_double("rtol", get("rtol"));
  cfg.evolve.atol = parse_double("atol", get("atol"));
  try {
    cfg.evolve.method = parse_integrator(get("integrator"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("key 'integrator': ") + e.what());
  }
  cfg.evolve.max_step = parse_double("max_step", get("max_step"));
  cfg.evolve.leakage_cap = parse_double("leakage_cap", get("leakage_cap"));
  cfg.allow_leakage = parse_bool("allow_leakage", get("allow_leakage"));
  cfg.allow_degenerate = parse_bool("allow_degenerate", get("allow_degenerate"));

  auto& st = cfg.stability;
  st.omega_R = {parse_double("stability.omega_R_min", get("stability.omega_R_min")),
                parse_double("stability.omega_R_max", get("stability.omega_R_max"))};
  st.eps_tilde = {parse_double("stability.eps_min", get("stability.eps_min")),
                  parse_double("stability.eps_max", get("stability.eps_max"))};
  st.nx = parse_int("stability.nx", get("stability.nx"));
  st.ny = parse_int("stability.ny", get("stability.ny"));
  st.gamma_tilde = parse_double("stability.gamma_tilde", get("stability.gamma_tilde"));

  auto& mf = cfg.meanfield;
  for (const auto& d : kMeanFieldKeys) mf.present = mf.present || kv.count(d.key) > 0;
  mf.drive.E_plus = parse_double("mf.E_plus", get("mf.E_plus"));
  mf.drive.E_zero = parse_double("mf.E_zero", get("mf.E_zero"));
  mf.drive.E_minus = parse_double("mf.E_minus", get("mf.E_minus"));
  mf.drive.Delta = parse_double("mf.Delta", get("mf.Delta"));
  mf.drive.Omega = parse_double("mf.Omega", get("mf.Omega"));
  mf.drive.epsilon = parse_double("mf.epsilon", get("mf.epsilon"));
  mf.drive.kappa = parse_double("mf.kappa", get("mf.kappa"));
  mf.drive.omega_m = parse_double("mf.omega_m", get("mf.omega_m"));
  mf.drive.g = parse_double("mf.g", get("mf.g"));
  mf.gamma = parse_double("mf.gamma", get("mf.gamma"));
  mf.match = parse_bool("mf.match", get("mf.match"));

  for (const auto& key : sweep_order) cfg.sweeps.push_back(parse_sweep(key.substr(6), kv.at(key)));

  // ---- validation ----
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const bool quantum = cfg.mode == RunMode::Evolve || cfg.mode == RunMode::Steady || cfg.mode == RunMode::Sweep;
  if (quantum) {
    if (cfg.output.empty()) throw ConfigError("key 'output' is required for mode " + mode);
    if (cfg.engine != Engine::FullNonRwa && !p.rwa()) {
      throw ConfigError("engine " + engine + " is the rotating-wave model; use full-nonrwa for finite omega_m_eff_over_kappa");
    }
    for (const auto& axis : cfg.sweeps) {
      if (axis.var == "omega_m_eff_over_kappa" && cfg.engine != Engine::FullNonRwa) {
        throw ConfigError("sweeping omega_m_eff_over_kappa needs engine full-nonrwa");
      }
      for (double v : axis.values) {
        SystemParams q = p;
        if (axis.var == "r") q.r = v;
        if (axis.var == "gamma") q.gamma = v;
        if (axis.var == "nbar_m") q.nbar_m = v;
        if (axis.var == "omega_m_eff_over_kappa") q.omega_m_eff_over_kappa = v;
        try {
          q.validate();
        } catch (const std::invalid_argument& e) {
          throw ConfigError("sweep." + axis.var + ": " + e.what());
        }
      }
    }
    if (cfg.initial.kind == StateSpec::Kind::Auto || cfg.initial.kind == StateSpec::Kind::None) {
      throw ConfigError("key 'initial_state': must be 'fock <n_a> <n_b>' or 'squeezed <r> <n>'");
    }
    for (const StateSpec* s : {&cfg.initial, &cfg.target}) {
      if (s->kind != StateSpec::Kind::Fock) continue;
      if (cfg.engine == Engine::Effective && s->n_a != 0) {
        throw ConfigError("the effective engine has no optical mode; Fock states must have n_a = 0");
      }
      if (s->n_a >= p.N_a || s->n_b >= p.N_b) throw ConfigError("Fock state exceeds the truncation");
    }
    if (!(cfg.evolve.rtol > 0.0) || !(cfg.evolve.atol >= 0.0)) throw ConfigError("tolerances must be positive");
    if (!(cfg.evolve.leakage_cap > 0.0 && cfg.evolve.leakage_cap <= 1.0)) {
      throw ConfigError("key 'leakage_cap': must lie in (0, 1]");
    }
    if (!(cfg.evolve.max_step >= 0.0)) throw ConfigError("key 'max_step': must be >= 0");
  }
  if (cfg.mode == RunMode::Evolve) {
    if (!(cfg.t_final > 0.0)) throw ConfigError("key 't_final': must be > 0 for mode evolve");
    if (cfg.n_samples < 2) throw ConfigError("key 'n_samples': must be >= 2");
    if (cfg.log_time && !(cfg.t_min > 0.0 && cfg.t_min < cfg.t_final)) {
      throw ConfigError("key 't_min': log grids need 0 < t_min < t_final");
    }
    if (cfg.evolve.method == Integrator::TrBdf2 && cfg.engine == Engine::FullNonRwa && !p.rwa()) {
      throw ConfigError("integrator trbdf2 needs a static generator");
    }
  }
  if (cfg.mode == RunMode::Steady || cfg.mode == RunMode::Sweep) {
    if (cfg.engine == Engine::FullNonRwa) throw ConfigError("steady states need engine full or effective");
  }
  if (cfg.mode == RunMode::Sweep && cfg.sweeps.empty()) throw ConfigError("mode sweep needs at least one sweep.<var> key");
  if (cfg.mode == RunMode::Stability) {
    if (cfg.output.empty()) throw ConfigError("key 'output' is required for mode stability");
    if (st.nx < 1 || st.ny < 1) throw ConfigError("stability grid resolution must be positive");
    if (!(st.omega_R.hi > st.omega_R.lo) || !(st.eps_tilde.hi >= st.eps_tilde.lo)) {
      throw ConfigError("stability ranges are empty");
    }
    if (!(st.gamma_tilde >= 0.0)) throw ConfigError("stability.gamma_tilde must be >= 0");
  }
  if (cfg.mode == RunMode::StateInfo && cfg.state.kind != StateSpec::Kind::Squeezed) {
    throw ConfigError("key 'state': state-info needs 'squeezed <r> <n>'");
  }
  if (mf.present) {
    try {
      mf.drive.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("mean-field drive: ") + e.what());
    }
    if (!(mf.gamma >= 0.0)) throw ConfigError("key 'mf.gamma': must be >= 0");
  }

  // ---- resolved view ----
  for (const auto& d : kRunKeys) cfg.resolved.emplace_back(d.key, get(d.key));
  if (cfg.mode == RunMode::Stability) {
    for (const auto& d : kStabilityKeys) cfg.resolved.emplace_back(d.key, get(d.key));
  }
  if (mf.present) {
    for (const auto& d : kMeanFieldKeys) cfg.resolved.emplace_back(d.key, get(d.key));
  }
  for (const auto& axis : cfg.sweeps) cfg.resolved.emplace_back("sweep." + axis.var, axis.text);
  return cfg;
}

ScenarioConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (!overrides.empty()) {
    // Later lines cannot repeat keys, so overridden keys are dropped from the file text.
    std::vector<std::string> keys;
    for (const auto& o : overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) throw ConfigError("override '" + o + "' is not key=value");
      keys.push_back(trim(o.substr(0, eq)));
    }
    std::istringstream is(text);
    std::string line;
    std::string kept;
    while (std::getline(is, line)) {
      std::string body = line;
      const auto hash = body.find('#');
      if (hash != std::string::npos) body.erase(hash);
      const auto eq = body.find('=');
      if (eq != std::string::npos && std::find(keys.begin(), keys.end(), trim(body.substr(0, eq))) != keys.end()) {
        continue;
      }
      kept += line + "\n";
    }
    for (const auto& o : overrides) kept += o + "\n";
    text = kept;
  }
  return parse_config(text, path);
}

std::string render_config(const ScenarioConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : cfg.resolved) out += k + " = " + v + "\n";
  return out;
}

SystemParams params_at(const ScenarioConfig& cfg, const std::vector<double>& point) {
  SystemParams p = cfg.params;
  for (std::size_t k = 0; k < point.size() && k < cfg.sweeps.size(); ++k) {
    const auto& var = cfg.sweeps[k].var;
    if (var == "r") p.r = point[k];
    else if (var == "gamma") p.gamma = point[k];
    else if (var == "nbar_m") p.nbar_m = point[k];
    else if (var == "omega_m_eff_over_kappa") p.omega_m_eff_over_kappa = point[k];
  }
  return p;
}

std::vector<std::vector<double>> sweep_points(const ScenarioConfig& cfg) {
  std::vector<std::vector<double>> pts{{}};
  for (const auto& axis : cfg.sweeps) {
    std::vector<std::vector<double>> next;
    for (const auto& base : pts) {
      for (double v : axis.values) {
        auto p = base;
        p.push_back(v);
        next.push_back(std::move(p));
      }
    }
    pts = std::move(next);
  }
  return pts;
}

RunOutcome run_scenario(const ScenarioConfig& cfg, std::ostream& log) {
  RunOutcome outcome;
  CsvTable table;
  for (const auto& [k, v] : cfg.resolved) table.add_header(k, v);

  try {
    if (cfg.mode == RunMode::StateInfo) {
      outcome.message = state_info(cfg.state, cfg.params.N_b);
      log << outcome.message;
      return outcome;
    }
    if (cfg.mode == RunMode::Stability) {
      const auto& st = cfg.stability;
      const StabilityMap map = stability_map(st.omega_R, st.eps_tilde, st.nx, st.ny, st.gamma_tilde);
      std::ostringstream os;
      write_stability_csv(os, map);
      std::string csv;
      for (const auto& [k, v] : cfg.resolved) csv += "# " + k + " = " + v + "\n";
      outcome.csv = csv + os.str();
    } else {
      const auto points = sweep_points(cfg);
      std::vector<PointResult> results(points.size());
      parallel_for(points.size(), [&](std::size_t k) {
        const SystemParams p = params_at(cfg, points[k]);
        results[k] = cfg.mode == RunMode::Evolve ? run_evolve_point(cfg, p) : run_steady_point(cfg, p);
      });

      std::vector<std::string> columns;
      for (const auto& axis : cfg.sweeps) columns.push_back(axis.var);
      if (cfg.mode == RunMode::Evolve) columns.push_back("t");
      columns.insert(columns.end(), kObservableColumns.begin(), kObservableColumns.end());
      if (cfg.mode != RunMode::Evolve) {
        columns.push_back("null_dimension");
        columns.push_back("second_singular_value");
      }
      table.set_columns(columns);
      bool flagged = false;
      for (std::size_t k = 0; k < points.size(); ++k) {
        for (auto row : results[k].rows) {
          row.insert(row.begin(), points[k].begin(), points[k].end());
          table.add_row(row);
        }
        for (const auto& a : results[k].advisories) outcome.advisories.push_back(describe_point(cfg, points[k]) + ": " + a);
        flagged = flagged || results[k].leakage_flagged;
      }
      for (const auto& a : outcome.advisories) log << "advisory: " << a << "\n";
      if (flagged && !cfg.allow_leakage) {
        outcome.exit_code = kExitNumerical;
        outcome.message = "truncation leakage above leakage_cap (set allow_leakage = true to keep the output)";
        return outcome;
      }
      outcome.csv = table.render();
    }
    if (!cfg.output.empty()) write_file_atomic(cfg.output, outcome.csv);
  } catch (const ConfigError& e) {
    outcome.exit_code = kExitValidation;
    outcome.message = e.what();
    outcome.csv.clear();
  } catch (const NumericalError& e) {
    outcome.exit_code = kExitNumerical;
    outcome.message = e.what();
    outcome.csv.clear();
  } catch (const std::invalid_argument& e) {
    outcome.exit_code = kExitValidation;
    outcome.message = e.what();
    outcome.csv.clear();
  }
  return outcome;
}

ValidationReport validate_scenario(const ScenarioConfig& cfg) {
  ValidationReport rep;
  auto say = [&](const std::string& s) { rep.lines.push_back(s); };
  char buf[256];
  say("schema ok: mode " + to_string(cfg.mode) + ", engine " + to_string(cfg.engine));
  const auto& p = cfg.params;
  std::snprintf(buf, sizeof buf, "couplings: g_- = %.6g, g_0 = %.6g, g_+ = %.6g, G = %.6g, G^2/kappa = %.6g", p.g_minus,
                p.g_zero(), p.g_plus(), p.coupling(), p.engineered_rate());
  say(buf);

  if (cfg.engine == Engine::Effective) {
    if (p.coupling() > 0.1) say("warning: adiabatic condition kappa >> G violated");
    if (p.gamma > 0.1) say("warning: adiabatic condition kappa >> gamma violated");
    double r_max = p.r, g_max = p.gamma;
    for (const auto& axis : cfg.sweeps) {
      for (double v : axis.values) {
        if (axis.var == "r") r_max = std::max(r_max, v);
        if (axis.var == "gamma") g_max = std::max(g_max, v);
      }
    }
    SystemParams worst = p;
    worst.r = 0.0;  // G is largest at r = 0
    if (worst.coupling() > 0.1 && p.coupling() <= 0.1) say("warning: adiabatic condition kappa >> G violated within the sweep");
    if (g_max > 0.1 && p.gamma <= 0.1) say("warning: adiabatic condition kappa >> gamma violated within the sweep");
  }
  if (!p.rwa()) {
    std::snprintf(buf, sizeof buf, "sideband ratio omega_m_eff/kappa = %.6g (nonresonant terms included)",
                  p.omega_m_eff_over_kappa);
    say(buf);
  }
  if (cfg.mode == RunMode::Evolve || cfg.mode == RunMode::Steady || cfg.mode == RunMode::Sweep) {
    if (cfg.target.kind == StateSpec::Kind::Auto || cfg.target.kind == StateSpec::Kind::Squeezed) {
      const double r = cfg.target.kind == StateSpec::Kind::Auto ? p.r : cfg.target.r;
      const int n = cfg.target.kind == StateSpec::Kind::Auto ? initial_phonons(cfg.initial) % 2 : cfg.target.n;
      try {
        const int need = required_truncation(SqueezeParam(r), n, cfg.evolve.leakage_cap);
        std::snprintf(buf, sizeof buf, "target |xi=%.4g,%d> needs N_b >= %d for leakage %.3g (N_b = %d)", r, n, need,
                      cfg.evolve.leakage_cap, p.N_b);
        say(buf);
        if (need > p.N_b) say("warning: target state truncation leakage above leakage_cap");
      } catch (const std::invalid_argument& e) {
        say(std::string("warning: ") + e.what());
      }
    }
  }
  if (cfg.meanfield.present) {
    DriveConfig drive = cfg.meanfield.drive;
    try {
      if (cfg.meanfield.match) drive = matched_config(drive);
      const auto c = effective_coeffs(drive);
      std::snprintf(buf, sizeof buf, "mean field: delta = %.6g, lambda = %.6g, mu = %.6g, omega_m_eff = %.10g", c.delta,
                    c.lambda, c.mu, c.omega_m_eff);
      say(buf);
      const auto m = matching_conditions(drive);
      if (m.matched) {
        say("matched within 1e-6");
      } else {
        std::snprintf(buf, sizeof buf,
                      "matching failed: residuals Omega %.3g, Delta %.3g, epsilon %.3g (tolerance 1e-6); required "
                      "Omega = Delta = %.10g, epsilon = %.10g",
                      m.residual_Omega, m.residual_Delta, m.residual_epsilon, m.Omega_required, m.epsilon_required);
        say(buf);
        rep.ok = false;
      }
      const StabilityPoint sp = classify(operating_point_mathieu(drive, cfg.meanfield.gamma));
      std::snprintf(buf, sizeof buf, "classical operating point: omega_R^2 = %.6g, eps_tilde = %.6g, max |multiplier| = %.10g, %s",
                    sp.params.omega_R2, sp.params.eps_tilde, sp.max_multiplier, to_string(sp.verdict).c_str());
      say(buf);
      if (sp.verdict != Verdict::Stable) rep.ok = false;
    } catch (const std::exception& e) {
      say(std::string("mean field: ") + e.what());
      rep.ok = false;
    }
  }
  return rep;
}

std::string state_info(const StateSpec& state, int N_b) {
  if (state.kind != StateSpec::Kind::Squeezed) throw ConfigError("state-info needs a squeezed state");
  const SqueezeParam xi(state.r);
  const auto sig = SpaceSignature::single(N_b);
  const StateVector sv = squeezed_number(sig, 0, xi, state.n, 1.0);
  const DensityMatrix rho = sv.density();
  const auto num = quadrature_variances(rho);
  const auto ana = analytic_variances(xi, state.n);
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "state |xi=%s,%d> on N_b = %d levels, truncation leakage %.3g\n",
                format_number(state.r).c_str(), state.n, N_b, sv.leakage);
  os << buf;
  os << "quantity            analytic          numeric\n";
  auto row = [&](const char* name, double a, double n) {
    std::snprintf(buf, sizeof buf, "%-18s  %-16.10g  %-16.10g\n", name, a, n);
    os << buf;
  };
  row("var_x1", ana.var_x1, num.var_x1);
  row("var_x2", ana.var_x2, num.var_x2);
  row("squeezing_db", squeezing_db(ana.var_x1), squeezing_db(num.var_x1));
  row("mean_n", analytic_mean_n(xi, state.n), mean_n(rho));
  if (state.r > 0.0 || state.n > 0) {
    const double numeric_g2 = g2(rho);
    row("g2 (closed form)", analytic_g2(xi, state.n), numeric_g2);
    row("g2 (moments)", exact_g2(xi, state.n), numeric_g2);
  } else {
    os << "g2                  undefined for vacuum\n";
  }
  return os.str();
}

}  // namespace optosqueeze
