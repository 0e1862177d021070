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
#include "sculpt/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <thread>

#include "sculpt/errors.hpp"
#include "sculpt/internal/rng.hpp"

namespace sculpt {

std::vector<double> default_tau_grid() {
  std::vector<double> grid;
  grid.reserve(63);
  for (int i = 1; i <= 63; ++i) grid.push_back(i / 10.0);
  return grid;
}

namespace {

std::vector<double> cell_taus(const std::vector<std::vector<double>>& grid,
                              std::size_t linear) {
  std::vector<double> taus(grid.size());
  for (std::size_t axis = grid.size(); axis-- > 0;) {
    const std::size_t n = grid[axis].size();
    taus[axis] = grid[axis][linear % n];
    linear /= n;
  }
  return taus;
}

// Seeded by the tau values themselves (not by grid position) so that
// re-running with a permuted grid reproduces identical per-cell results.
std::uint64_t cell_seed(std::uint64_t seed, const std::vector<double>& taus) {
  std::uint64_t s = seed;
  for (double t : taus) s = internal::mix_seed(s, std::bit_cast<std::uint64_t>(t));
  return s;
}

std::optional<RootCandidate> solve_cell(const ScanSpec& spec,
                                        const std::vector<double>& taus,
                                        std::uint64_t seed, int n_starts) {
  SolveProblem problem;
  problem.desired = spec.desired;
  problem.alpha = spec.alpha;
  problem.omega_taus = taus;
  problem.options = spec.solver_options;
  problem.options.seed = seed;
  problem.options.n_starts = n_starts;
  std::vector<RootCandidate> roots = solve_roots(problem);
  if (roots.empty()) return std::nullopt;
  return std::move(roots.front());
}

bool cell_better(const ScanCell& a, const ScanCell& b) {
  // Higher rate wins; ties go to the lexicographically smaller tau tuple.
  if (!b.best.has_value()) return a.best.has_value();
  if (!a.best.has_value()) return false;
  if (a.best->outcome.rate != b.best->outcome.rate) {
    return a.best->outcome.rate > b.best->outcome.rate;
  }
  return std::lexicographical_compare(a.taus.begin(), a.taus.end(),
                                      b.taus.begin(), b.taus.end());
}

}  // namespace

ScanResult scan_tau(const ScanSpec& spec, int threads) {
  if (spec.tau_grid.empty()) throw ConfigError("scan_tau: empty tau grid");
  std::size_t total = 1;
  for (const auto& axis : spec.tau_grid) {
    if (axis.empty()) throw ConfigError("scan_tau: empty grid axis");
    for (double t : axis) {
      if (!(t > 0.0)) throw ConfigError("scan_tau: grid values must be positive");
    }
    total *= axis.size();
  }

  ScanResult result;
  result.cells.resize(total);

  auto run_cell = [&](std::size_t linear) {
    ScanCell& cell = result.cells[linear];
    cell.taus = cell_taus(spec.tau_grid, linear);
    cell.best = solve_cell(spec, cell.taus,
                           cell_seed(spec.solver_options.seed, cell.taus),
                           spec.solver_options.n_starts);
  };

  if (threads <= 1 || total == 1) {
    for (std::size_t i = 0; i < total; ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
        run_cell(i);
      }
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min<int>(threads, static_cast<int>(total));
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < total; ++i) {
    if (!result.cells[i].best.has_value()) continue;
    if (!best.has_value() || cell_better(result.cells[i], result.cells[*best])) best = i;
  }

  // Re-solve the winner at full budget. The per-cell seed is unchanged, so
  // the extra starts extend the original sequence and the record can only
  // improve.
  if (best.has_value() && spec.solver_options.n_starts < 64) {
    ScanCell& cell = result.cells[*best];
    auto refined = solve_cell(spec, cell.taus,
                              cell_seed(spec.solver_options.seed, cell.taus), 64);
    if (refined.has_value() &&
        (!cell.best.has_value() ||
         refined->outcome.rate >= cell.best->outcome.rate)) {
      cell.best = std::move(refined);
    }
    for (std::size_t i = 0; i < total; ++i) {
      if (i != *best && cell_better(result.cells[i], result.cells[*best])) best = i;
    }
  }
  result.best_index = best;
  return result;
}

std::vector<SweepRow> sweep_nbar(const DesiredState& desired,
                                 std::span<const double> nbars,
                                 const ScanSpec& tmpl, int threads) {
  std::vector<double> sorted(nbars.begin(), nbars.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<SweepRow> rows;
  rows.reserve(sorted.size());
  for (double nbar : sorted) {
    if (!(nbar > 0.0)) throw ConfigError("sweep_nbar: nbar values must be positive");
    ScanSpec spec = tmpl;
    spec.desired = desired;
    spec.alpha = Complex(std::sqrt(nbar), 0.0);
    ScanResult scan = scan_tau(spec, threads);
    if (!scan.best_index.has_value()) continue;
    const ScanCell& cell = scan.cells[*scan.best_index];
    SweepRow row;
    row.nbar = nbar;
    row.taus = cell.taus;
    row.total_prob = cell.best->outcome.total_prob;
    row.fidelity = cell.best->outcome.fidelity;
    row.rate = cell.best->outcome.rate;
    rows.push_back(std::move(row));
  }
  return rows;
}

double suggest_nbar(int n_d, int m_atoms, double threshold) {
  if (m_atoms < 1 || n_d < m_atoms) {
    throw InvalidStateError("suggest_nbar: need n_d >= m_atoms >= 1");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw InvalidStateError("suggest_nbar: threshold must be in (0, 1)");
  }
  const int m = n_d - m_atoms + 1;
  // Poisson weight at fixed m rises monotonically up to nbar = m, so the
  // largest qualifying lattice point is the last one before the threshold is
  // crossed.
  double best = 0.1 * 0.1;
  bool found = false;
  for (int i = 1;; ++i) {
    const double alpha = i / 10.0;
    const double nbar = alpha * alpha;
    if (nbar > static_cast<double>(m)) break;
    double weight = std::exp(-nbar);
    for (int j = 1; j <= m; ++j) weight *= nbar / j;
    if (weight <= threshold) {
      best = nbar;
      found = true;
    }
  }
  return found ? best : 0.1 * 0.1;
}

}  // namespace sculpt
