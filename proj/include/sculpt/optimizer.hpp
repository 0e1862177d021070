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
#ifndef SCULPT_OPTIMIZER_HPP_
#define SCULPT_OPTIMIZER_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sculpt/solver.hpp"

namespace sculpt {

/// Per-cell solver budget used by scans; single solves default to 64 starts.
inline constexpr int kScanDefaultStarts = 16;

/// Grid of interaction parameters to sweep, one value list per atom.
struct ScanSpec {
  DesiredState desired;
  Complex alpha{0.0, 0.0};
  std::vector<std::vector<double>> tau_grid;
  SolverOptions solver_options;
};

struct ScanCell {
  std::vector<double> taus;
  std::optional<RootCandidate> best;  // absent when no root converged
};

struct ScanResult {
  std::vector<ScanCell> cells;             // row-major over the grid
  std::optional<std::size_t> best_index;   // argmax rate, lexicographic ties
};

/// One row of a rate-vs-excitation sweep.
struct SweepRow {
  double nbar = 0.0;
  std::vector<double> taus;
  double total_prob = 0.0;
  double fidelity = 0.0;
  double rate = 0.0;
};

/// Default per-atom grid 0.1, 0.2, ..., 6.3 (one Rabi period of the slowest
/// doublet).
std::vector<double> default_tau_grid();

/// Runs solve_roots on every grid tuple with a per-cell seed derived from
/// (options.seed, cell indices) and records the top candidate per cell. The
/// global best cell is re-solved at full budget (>= 64 starts; same per-cell
/// seed, so the start sequence is a prefix and the result can only improve).
/// Results are identical to sequential evaluation regardless of `threads`.
ScanResult scan_tau(const ScanSpec& spec, int threads = 1);

/// One scan per nbar with alpha = sqrt(nbar) (real); returns the best cell of
/// each scan as a table row, sorted by nbar.
std::vector<SweepRow> sweep_nbar(const DesiredState& desired,
                                 std::span<const double> nbars,
                                 const ScanSpec& tmpl, int threads = 1);

/// Largest nbar on the alpha = 0.1, 0.2, ... lattice (restricted to the
/// rising Poisson branch nbar <= m) whose Poisson weight e^{-nbar} nbar^m/m!
/// at m = n_d - m_atoms + 1 stays <= threshold. Returns the smallest lattice
/// value when none qualifies.
double suggest_nbar(int n_d, int m_atoms, double threshold);

}  // namespace sculpt

#endif  // SCULPT_OPTIMIZER_HPP_
