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
#include "sculpt/serialize.hpp"

#include <cmath>

#include <fmt/format.h>

#include "sculpt/errors.hpp"

namespace sculpt {

void to_json(Json& j, const Complex& z) { j = Json::array({z.real(), z.imag()}); }

void from_json(const Json& j, Complex& z) {
  if (!j.is_array() || j.size() != 2) {
    throw ConfigError("complex values must be [re, im] pairs");
  }
  z = Complex(j[0].get<double>(), j[1].get<double>());
}

namespace {

std::vector<Complex> amps_from_json(const Json& j) {
  std::vector<Complex> amps;
  amps.reserve(j.size());
  for (const auto& e : j) {
    Complex z;
    from_json(e, z);
    amps.push_back(z);
  }
  return amps;
}

Json amps_to_json(std::span<const Complex> amps) {
  Json j = Json::array();
  for (const Complex& z : amps) {
    Json e;
    to_json(e, z);
    j.push_back(std::move(e));
  }
  return j;
}

}  // namespace

void to_json(Json& j, const FieldState& s) {
  j = Json{{"n_max", s.n_max()}, {"amps", amps_to_json(s.amps())}};
}

void from_json(const Json& j, FieldState& s) {
  const int n_max = j.at("n_max").get<int>();
  std::vector<Complex> amps = amps_from_json(j.at("amps"));
  if (static_cast<int>(amps.size()) != n_max + 1) {
    throw ConfigError(fmt::format("FieldState: n_max={} but {} amplitudes", n_max,
                                  amps.size()));
  }
  s = FieldState(std::move(amps));
}

void to_json(Json& j, const DesiredState& s) {
  j = Json{{"N_d", s.n_d()}, {"amps", amps_to_json(s.amps())}};
}

void from_json(const Json& j, DesiredState& s) {
  const int n_d = j.at("N_d").get<int>();
  std::vector<Complex> amps = amps_from_json(j.at("amps"));
  if (static_cast<int>(amps.size()) != n_d + 1) {
    throw ConfigError(
        fmt::format("DesiredState: N_d={} but {} amplitudes", n_d, amps.size()));
  }
  s = DesiredState(std::move(amps));
}

void to_json(Json& j, const AtomStep& s) {
  j = Json{{"omega_tau", s.omega_tau}};
  to_json(j["beta"], s.beta);
  to_json(j["epsilon"], s.epsilon);
}

void from_json(const Json& j, AtomStep& s) {
  s.omega_tau = j.at("omega_tau").get<double>();
  from_json(j.at("beta"), s.beta);
  from_json(j.at("epsilon"), s.epsilon);
}

void to_json(Json& j, const SculptOutcome& o) {
  j = Json{{"fidelity", o.fidelity},
           {"step_probs", o.step_probs},
           {"total_prob", o.total_prob},
           {"rate", o.rate}};
  to_json(j["final"], o.final_state);
}

void from_json(const Json& j, SculptOutcome& o) {
  from_json(j.at("final"), o.final_state);
  o.fidelity = j.at("fidelity").get<double>();
  o.step_probs = j.at("step_probs").get<std::vector<double>>();
  o.total_prob = j.at("total_prob").get<double>();
  o.rate = j.at("rate").get<double>();
}

void to_json(Json& j, const SolverOptions& o) {
  j = Json{{"root_tol", o.root_tol},   {"dedupe_tol", o.dedupe_tol},
           {"n_starts", o.n_starts},   {"seed", o.seed},
           {"max_iters", o.max_iters}, {"start_box", o.start_box}};
}

void from_json(const Json& j, SolverOptions& o) {
  SolverOptions defaults;
  o.root_tol = j.value("root_tol", defaults.root_tol);
  o.dedupe_tol = j.value("dedupe_tol", defaults.dedupe_tol);
  o.n_starts = j.value("n_starts", defaults.n_starts);
  o.seed = j.value("seed", defaults.seed);
  o.max_iters = j.value("max_iters", defaults.max_iters);
  o.start_box = j.value("start_box", defaults.start_box);
  if (o.root_tol <= 0 || o.dedupe_tol <= 0 || o.n_starts <= 0 || o.max_iters <= 0 ||
      o.start_box <= 0) {
    throw ConfigError("solver options must be positive");
  }
}

void to_json(Json& j, const SolveProblem& p) {
  j = Json{{"omega_taus", p.omega_taus}};
  to_json(j["desired"], p.desired);
  to_json(j["alpha"], p.alpha);
  to_json(j["options"], p.options);
}

void from_json(const Json& j, SolveProblem& p) {
  from_json(j.at("desired"), p.desired);
  from_json(j.at("alpha"), p.alpha);
  p.omega_taus = j.at("omega_taus").get<std::vector<double>>();
  if (j.contains("options")) {
    from_json(j.at("options"), p.options);
  } else {
    p.options = SolverOptions{};
  }
}

void to_json(Json& j, const RootCandidate& c) {
  j = Json{{"residual_norm", c.residual_norm},
           {"epsilons", amps_to_json(c.epsilons)},
           {"betas", amps_to_json(c.betas)}};
  to_json(j["outcome"], c.outcome);
}

void from_json(const Json& j, RootCandidate& c) {
  c.epsilons = amps_from_json(j.at("epsilons"));
  c.betas = amps_from_json(j.at("betas"));
  c.residual_norm = j.at("residual_norm").get<double>();
  from_json(j.at("outcome"), c.outcome);
}

void to_json(Json& j, const ScanResult& r) {
  Json cells = Json::array();
  for (const ScanCell& cell : r.cells) {
    Json c{{"taus", cell.taus}};
    if (cell.best.has_value()) {
      to_json(c["candidate"], *cell.best);
    } else {
      c["candidate"] = nullptr;
    }
    cells.push_back(std::move(c));
  }
  j = Json{{"cells", std::move(cells)}};
  if (r.best_index.has_value()) {
    j["best_index"] = *r.best_index;
  } else {
    j["best_index"] = nullptr;
  }
}

void to_json(Json& j, const PhaseGrid& g) {
  j = Json{{"q_min", g.q_min}, {"q_max", g.q_max}, {"p_min", g.p_min},
           {"p_max", g.p_max}, {"nq", g.nq},       {"np", g.np},
           {"values", g.values}};
}

void from_json(const Json& j, PhaseGrid& g) {
  g.q_min = j.at("q_min").get<double>();
  g.q_max = j.at("q_max").get<double>();
  g.p_min = j.at("p_min").get<double>();
  g.p_max = j.at("p_max").get<double>();
  g.nq = j.at("nq").get<int>();
  g.np = j.at("np").get<int>();
  g.values = j.at("values").get<std::vector<double>>();
  if (g.nq < 2 || g.np < 2 ||
      g.values.size() != static_cast<std::size_t>(g.nq) * g.np) {
    throw ConfigError("PhaseGrid: inconsistent sizes");
  }
}

std::string scan_csv(const ScanResult& result, std::string_view header_meta) {
  const std::size_t m = result.cells.empty() ? 0 : result.cells.front().taus.size();
  std::string out = fmt::format("# cavity-sculpt scan\n# {}\n", header_meta);
  for (std::size_t k = 1; k <= m; ++k) out += fmt::format("omega_tau_{},", k);
  out += "P,F,R,residual_norm";
  for (std::size_t k = 1; k <= m; ++k) {
    out += fmt::format(",eps_abs_{0},eps_arg_{0},beta_abs_{0},beta_arg_{0}", k);
  }
  out += "\n";
  for (const ScanCell& cell : result.cells) {
    for (double t : cell.taus) out += fmt::format("{},", t);
    if (cell.best.has_value()) {
      const RootCandidate& c = *cell.best;
      out += fmt::format("{},{},{},{}", c.outcome.total_prob, c.outcome.fidelity,
                         c.outcome.rate, c.residual_norm);
      for (std::size_t k = 0; k < m; ++k) {
        out += fmt::format(",{},{},{},{}", std::abs(c.epsilons[k]),
                           std::arg(c.epsilons[k]), std::abs(c.betas[k]),
                           std::arg(c.betas[k]));
      }
    } else {
      out += ",,,";
      for (std::size_t k = 0; k < m; ++k) out += ",,,,";
    }
    out += "\n";
  }
  return out;
}

std::string sweep_csv(std::span<const SweepRow> rows, std::string_view header_meta) {
  const std::size_t m = rows.empty() ? 0 : rows.front().taus.size();
  std::string out = fmt::format("# cavity-sculpt rate table\n# {}\n", header_meta);
  out += "nbar";
  for (std::size_t k = 1; k <= m; ++k) out += fmt::format(",omega_tau_{}", k);
  out += ",P,F,R\n";
  for (const SweepRow& r : rows) {
    out += fmt::format("{}", r.nbar);
    for (double t : r.taus) out += fmt::format(",{}", t);
    out += fmt::format(",{},{},{}\n", r.total_prob, r.fidelity, r.rate);
  }
  return out;
}

std::string wigner_csv(const PhaseGrid& grid, std::string_view header_meta) {
  std::string out = fmt::format("# cavity-sculpt wigner grid\n# {}\n", header_meta);
  out += fmt::format("# q_min={} q_max={} p_min={} p_max={} nq={} np={}\n",
                     grid.q_min, grid.q_max, grid.p_min, grid.p_max, grid.nq,
                     grid.np);
  out += "q,p,W\n";
  for (int jp = 0; jp < grid.np; ++jp) {
    for (int iq = 0; iq < grid.nq; ++iq) {
      out += fmt::format("{},{},{}\n", grid.q(iq), grid.p(jp), grid.at(iq, jp));
    }
  }
  return out;
}

std::string polar_summary(std::span<const RootCandidate> candidates) {
  std::string out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const RootCandidate& c = candidates[i];
    out += fmt::format("#{:<3} R={:.4f} P={:.4f} F={:.4f} residual={:.2e}\n", i + 1,
                       c.outcome.rate, c.outcome.total_prob, c.outcome.fidelity,
                       c.residual_norm);
    for (std::size_t k = 0; k < c.epsilons.size(); ++k) {
      out += fmt::format(
          "     |eps_{0}|={1:.4f} theta_{0}={2:.4f}  |beta_{0}|={3:.4f} phi_{0}={4:.4f}\n",
          k + 1, std::abs(c.epsilons[k]), std::arg(c.epsilons[k]),
          std::abs(c.betas[k]), std::arg(c.betas[k]));
    }
  }
  return out;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace sculpt
