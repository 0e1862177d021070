/* Copyright 2026 The cavity-sculpt Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "sculpt/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sculpt/errors.hpp"
#include "sculpt/serialize.hpp"

namespace sculpt::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config_path;
  std::string out_dir = "out";
  int threads = 1;
  std::optional<std::uint64_t> seed;
  std::optional<double> grid_step;
};

struct RunConfig {
  Json raw;

  std::optional<DesiredState> desired;
  std::optional<Complex> alpha;  // resolved from "alpha" or "nbar"

  std::vector<double> taus;
  std::vector<AtomStep> steps;

  double grid_min = 0.1;
  double grid_max = 6.3;
  double grid_step = 0.1;
  std::optional<int> atoms;

  std::vector<double> nbars;

  SolverOptions solver;
  bool n_starts_explicit = false;

  int nq = 121;
  int np = 121;
  std::optional<GridBounds> bounds;
};

DesiredState parse_desired(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    constexpr std::string_view kPrefix = "phase:";
    if (s.rfind(kPrefix, 0) == 0) {
      try {
        return DesiredState::truncated_phase(std::stoi(s.substr(kPrefix.size())));
      } catch (const std::exception&) {
        throw ConfigError(fmt::format("bad desired-state preset '{}'", s));
      }
    }
    throw ConfigError(fmt::format("unknown desired-state preset '{}'", s));
  }
  if (j.is_object() && j.contains("amps") && !j.contains("N_d")) {
    std::vector<Complex> amps;
    for (const auto& e : j.at("amps")) {
      Complex z;
      from_json(e, z);
      amps.push_back(z);
    }
    return DesiredState(std::move(amps));
  }
  DesiredState d;
  from_json(j, d);
  return d;
}

Complex parse_alpha(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  Complex z;
  from_json(j, z);
  return z;
}

RunConfig load_config(const Options& opts) {
  std::ifstream in(opts.config_path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", opts.config_path));
  RunConfig cfg;
  try {
    cfg.raw = Json::parse(in);

    if (cfg.raw.contains("desired")) cfg.desired = parse_desired(cfg.raw.at("desired"));

    const bool has_alpha = cfg.raw.contains("alpha");
    const bool has_nbar = cfg.raw.contains("nbar");
    if (has_alpha && has_nbar) throw ConfigError("give either 'alpha' or 'nbar', not both");
    if (has_alpha) cfg.alpha = parse_alpha(cfg.raw.at("alpha"));
    if (has_nbar) {
      const double nbar = cfg.raw.at("nbar").get<double>();
      if (!(nbar >= 0.0)) throw ConfigError("'nbar' must be >= 0");
      cfg.alpha = Complex(std::sqrt(nbar), 0.0);
    }

    if (cfg.raw.contains("taus")) cfg.taus = cfg.raw.at("taus").get<std::vector<double>>();
    if (cfg.raw.contains("steps")) {
      for (const auto& e : cfg.raw.at("steps")) {
        AtomStep s;
        from_json(e, s);
        cfg.steps.push_back(s);
      }
    }

    if (cfg.raw.contains("grid")) {
      const Json& g = cfg.raw.at("grid");
      cfg.grid_min = g.value("min", cfg.grid_min);
      cfg.grid_max = g.value("max", cfg.grid_max);
      cfg.grid_step = g.value("step", cfg.grid_step);
    }
    if (cfg.raw.contains("atoms")) cfg.atoms = cfg.raw.at("atoms").get<int>();
    if (cfg.raw.contains("nbars")) cfg.nbars = cfg.raw.at("nbars").get<std::vector<double>>();

    if (cfg.raw.contains("solver")) {
      from_json(cfg.raw.at("solver"), cfg.solver);
      cfg.n_starts_explicit = cfg.raw.at("solver").contains("n_starts");
    }

    if (cfg.raw.contains("wigner")) {
      const Json& w = cfg.raw.at("wigner");
      cfg.nq = w.value("nq", cfg.nq);
      cfg.np = w.value("np", cfg.np);
      if (w.contains("bounds")) {
        const auto b = w.at("bounds").get<std::vector<double>>();
        if (b.size() != 4) throw ConfigError("'wigner.bounds' must be [q_min,q_max,p_min,p_max]");
        cfg.bounds = GridBounds{b[0], b[1], b[2], b[3]};
      }
    }
  } catch (const Json::exception& e) {
    throw ConfigError(fmt::format("bad config '{}': {}", opts.config_path, e.what()));
  }

  if (opts.seed.has_value()) cfg.solver.seed = *opts.seed;
  if (opts.grid_step.has_value()) cfg.grid_step = *opts.grid_step;
  return cfg;
}

std::string config_hash(const RunConfig& cfg) { return fnv1a_hex(cfg.raw.dump()); }

void write_file(const fs::path& path, std::string_view content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
  out << content;
}

const DesiredState& require_desired(const RunConfig& cfg) {
  if (!cfg.desired.has_value()) throw ConfigError("config needs a 'desired' state");
  return *cfg.desired;
}

Complex require_alpha(const RunConfig& cfg) {
  if (!cfg.alpha.has_value()) throw ConfigError("config needs 'alpha' or 'nbar'");
  return *cfg.alpha;
}

std::vector<double> grid_axis(const RunConfig& cfg) {
  if (!(cfg.grid_step > 0.0) || !(cfg.grid_max >= cfg.grid_min) || !(cfg.grid_min > 0.0)) {
    throw ConfigError("grid must satisfy 0 < min <= max with step > 0");
  }
  std::vector<double> axis;
  const int count =
      static_cast<int>(std::floor((cfg.grid_max - cfg.grid_min) / cfg.grid_step + 1e-9)) + 1;
  axis.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    // snap to a 1e-9 lattice so grid values print cleanly
    axis.push_back(std::round((cfg.grid_min + i * cfg.grid_step) * 1e9) / 1e9);
  }
  return axis;
}

int scan_atom_count(const RunConfig& cfg) {
  const int m = cfg.atoms.value_or(min_atoms(require_desired(cfg).n_d()));
  if (m < 1) throw ConfigError("scan needs at least one atom");
  return m;
}

void warn_atom_count(int m, int minimum) {
  if (m > minimum) {
    std::cerr << fmt::format("warning: {} atoms requested, {} suffice for this target\n", m,
                             minimum);
  } else if (m < minimum) {
    std::cerr << fmt::format(
        "warning: {} atoms are below the minimum {} for this target; the system is "
        "overdetermined\n",
        m, minimum);
  }
}

std::string meta_line(const RunConfig& cfg) {
  return fmt::format("seed={} config_hash={}", cfg.solver.seed, config_hash(cfg));
}

int cmd_verify(const RunConfig& cfg, const Options& opts) {
  const DesiredState& desired = require_desired(cfg);
  const Complex alpha = require_alpha(cfg);
  const SculptOutcome outcome = sculpt_forward(alpha, cfg.steps, desired);

  Json j{{"seed", cfg.solver.seed}, {"config_hash", config_hash(cfg)}};
  to_json(j["outcome"], outcome);
  write_file(fs::path(opts.out_dir) / "outcome.json", j.dump(2) + "\n");

  std::cout << fmt::format("F={:.4f} P={:.4f} R={:.4f}", outcome.fidelity,
                           outcome.total_prob, outcome.rate);
  for (std::size_t k = 0; k < outcome.step_probs.size(); ++k) {
    std::cout << fmt::format(" P_{}={:.4f}", k + 1, outcome.step_probs[k]);
  }
  std::cout << "\n";
  return kExitOk;
}

int cmd_sculpt(const RunConfig& cfg, const Options& opts) {
  SolveProblem problem;
  problem.desired = require_desired(cfg);
  problem.alpha = require_alpha(cfg);
  if (cfg.taus.empty() && !cfg.raw.contains("taus")) {
    throw ConfigError("sculpt needs 'taus' (one interaction parameter per atom)");
  }
  problem.omega_taus = cfg.taus;
  problem.options = cfg.solver;
  warn_atom_count(problem.atom_count(), min_atoms(problem.desired.n_d()));

  const std::vector<RootCandidate> candidates = solve_roots(problem);
  if (candidates.empty()) std::cerr << "warning: no roots converged\n";

  Json j{{"seed", cfg.solver.seed}, {"config_hash", config_hash(cfg)}};
  to_json(j["problem"], problem);
  Json list = Json::array();
  for (const RootCandidate& c : candidates) {
    Json cj;
    to_json(cj, c);
    list.push_back(std::move(cj));
  }
  j["candidates"] = std::move(list);
  write_file(fs::path(opts.out_dir) / "roots.json", j.dump(2) + "\n");
  std::cout << polar_summary(candidates);
  return kExitOk;
}

ScanSpec make_scan_spec(const RunConfig& cfg) {
  ScanSpec spec;
  spec.desired = require_desired(cfg);
  spec.tau_grid.assign(static_cast<std::size_t>(scan_atom_count(cfg)), grid_axis(cfg));
  spec.solver_options = cfg.solver;
  if (!cfg.n_starts_explicit) spec.solver_options.n_starts = kScanDefaultStarts;
  return spec;
}

int cmd_scan(const RunConfig& cfg, const Options& opts) {
  ScanSpec spec = make_scan_spec(cfg);
  spec.alpha = require_alpha(cfg);
  const ScanResult result = scan_tau(spec, opts.threads);

  write_file(fs::path(opts.out_dir) / "scan.csv", scan_csv(result, meta_line(cfg)));
  Json j{{"seed", cfg.solver.seed}, {"config_hash", config_hash(cfg)}};
  to_json(j["result"], result);
  write_file(fs::path(opts.out_dir) / "scan.json", j.dump() + "\n");

  if (result.best_index.has_value()) {
    const ScanCell& best = result.cells[*result.best_index];
    std::cout << "best cell:";
    for (double t : best.taus) std::cout << fmt::format(" {:.4f}", t);
    std::cout << fmt::format("  R={:.4f} P={:.4f} F={:.4f}\n", best.best->outcome.rate,
                             best.best->outcome.total_prob, best.best->outcome.fidelity);
  } else {
    std::cout << "no cell converged\n";
  }
  return kExitOk;
}

int cmd_table1(const RunConfig& cfg, const Options& opts) {
  ScanSpec tmpl = make_scan_spec(cfg);
  std::vector<double> nbars = cfg.nbars;
  if (nbars.empty()) {
    // alpha = 0.2, 0.4, ..., 2.0
    for (int i = 1; i <= 10; ++i) {
      const double a = 0.2 * i;
      nbars.push_back(std::round(a * a * 1e9) / 1e9);
    }
  }
  const std::vector<SweepRow> rows = sweep_nbar(tmpl.desired, nbars, tmpl, opts.threads);
  write_file(fs::path(opts.out_dir) / "table1.csv", sweep_csv(rows, meta_line(cfg)));
  for (const SweepRow& r : rows) {
    std::cout << fmt::format("nbar={:.4f}", r.nbar);
    for (double t : r.taus) std::cout << fmt::format(" tau={:.4f}", t);
    std::cout << fmt::format("  P={:.4f} F={:.4f} R={:.4f}\n", r.total_prob, r.fidelity,
                             r.rate);
  }
  return kExitOk;
}

int cmd_wigner(const RunConfig& cfg, const Options& opts) {
  if (!cfg.desired.has_value() && !cfg.alpha.has_value()) {
    throw ConfigError("wigner needs a 'desired' state and/or 'alpha'/'nbar'");
  }

  std::vector<std::pair<std::string, FieldState>> states;
  const bool sequence = !cfg.steps.empty() && cfg.alpha.has_value();
  if (sequence) {
    const DesiredState& desired = require_desired(cfg);
    const Complex alpha = require_alpha(cfg);
    for (std::size_t k = 0; k <= cfg.steps.size(); ++k) {
      const std::span<const AtomStep> prefix(cfg.steps.data(), k);
      const SculptOutcome o = sculpt_forward(alpha, prefix, desired);
      states.emplace_back(k == 0 ? "initial" : fmt::format("atom{}", k), o.final_state);
    }
    states.emplace_back("desired", desired.as_field_state(states.front().second.n_max()));
  } else if (cfg.desired.has_value()) {
    const DesiredState& desired = *cfg.desired;
    states.emplace_back("desired", desired.as_field_state(default_n_max(desired.n_d(), 0,
                                                                        0.0)));
  } else {
    const Complex alpha = require_alpha(cfg);
    states.emplace_back("initial",
                        coherent_state(alpha, coherent_required_n_max(alpha) + 4));
  }

  GridBounds bounds;
  if (cfg.bounds.has_value()) {
    bounds = *cfg.bounds;
  } else {
    bounds = auto_bounds(states.front().second);
    for (const auto& [label, state] : states) {
      const GridBounds b = auto_bounds(state);
      bounds.q_min = std::min(bounds.q_min, b.q_min);
      bounds.q_max = std::max(bounds.q_max, b.q_max);
      bounds.p_min = std::min(bounds.p_min, b.p_min);
      bounds.p_max = std::max(bounds.p_max, b.p_max);
    }
  }

  for (const auto& [label, state] : states) {
    const PhaseGrid grid = wigner_grid(state, bounds, cfg.nq, cfg.np);
    Json state_json;
    to_json(state_json, state);
    const std::string state_hash = fnv1a_hex(state_json.dump());
    const std::string meta =
        fmt::format("{} state={} state_hash={}", meta_line(cfg), label, state_hash);
    write_file(fs::path(opts.out_dir) / fmt::format("wigner_{}.csv", label),
               wigner_csv(grid, meta));
    Json j{{"seed", cfg.solver.seed},
           {"config_hash", config_hash(cfg)},
           {"state", label},
           {"state_hash", state_hash}};
    to_json(j["grid"], grid);
    write_file(fs::path(opts.out_dir) / fmt::format("wigner_{}.json", label),
               j.dump() + "\n");
    std::cout << fmt::format("wigner_{}: riemann_sum={:.4f}\n", label, grid.riemann_sum());
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Sculpts cavity-field states from an injected coherent state by "
               "conditional atom detections"};
  app.require_subcommand(1);

  Options opts;
  auto add_common = [&opts](CLI::App* cmd) {
    cmd->add_option("--config", opts.config_path, "JSON config file")->required();
    cmd->add_option("--seed", opts.seed, "override the solver seed");
    cmd->add_option("--out", opts.out_dir, "output directory (default: out)");
    cmd->add_option("--threads", opts.threads, "worker threads for scans");
    cmd->add_option("--grid-step", opts.grid_step, "override the tau grid step");
  };

  CLI::App* verify = app.add_subcommand("verify", "forward-run explicit step parameters");
  CLI::App* sculpt = app.add_subcommand("sculpt", "solve for Ramsey parameters and rank roots");
  CLI::App* scan = app.add_subcommand("scan", "grid-search interaction parameters");
  CLI::App* table1 = app.add_subcommand("table1", "rate table over coherent excitations");
  CLI::App* wigner = app.add_subcommand("wigner", "phase-space grids of the sculpting sequence");
  for (CLI::App* cmd : {verify, sculpt, scan, table1, wigner}) add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const RunConfig cfg = load_config(opts);
    if (verify->parsed()) return cmd_verify(cfg, opts);
    if (sculpt->parsed()) return cmd_sculpt(cfg, opts);
    if (scan->parsed()) return cmd_scan(cfg, opts);
    if (table1->parsed()) return cmd_table1(cfg, opts);
    if (wigner->parsed()) return cmd_wigner(cfg, opts);
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPhysics;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("cavity-sculpt");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace sculpt::cli
