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
#ifndef SCULPT_SOLVER_HPP_
#define SCULPT_SOLVER_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "sculpt/interaction.hpp"

namespace sculpt {

struct SolverOptions {
  double root_tol = 1e-10;
  double dedupe_tol = 1e-6;
  int n_starts = 64;
  std::uint64_t seed = 1;
  int max_iters = 200;
  /// Initial points draw |eps|, |beta| uniformly from [0, start_box].
  double start_box = 2.0;
};

struct SolveProblem {
  DesiredState desired;
  Complex alpha{0.0, 0.0};
  std::vector<double> omega_taus;  // one entry per atom, M = size()
  SolverOptions options;

  int atom_count() const { return static_cast<int>(omega_taus.size()); }
};

/// One numeric solution of the target-matching system.
struct RootCandidate {
  std::vector<Complex> epsilons;
  std::vector<Complex> betas;
  double residual_norm = 0.0;
  SculptOutcome outcome;
};

/// Minimum atoms needed for a target ending at level n_d: floor((n_d+1)/2).
int min_atoms(int n_d);

/// Proportionality residuals of the final conditional state against the
/// target. The recurrence is applied M times from the coherent amplitudes,
/// the result is unit-normalized as g, and for the pivot n* = argmax |d_n|
/// the complex residuals r_n = g_n d_{n*} - g_{n*} d_n (n = 0..N_d, n != n*)
/// are flattened to (re, im) pairs, 2*N_d reals in total. The tail n > N_d is
/// deliberately unconstrained.
std::vector<double> residual(const SolveProblem& problem,
                             std::span<const Complex> epsilons,
                             std::span<const Complex> betas);

/// Multi-start damped least squares over the 4M real coordinates of
/// (eps_1..eps_M, beta_1..beta_M). Converged points with residual norm below
/// options.root_tol are deduplicated (max-norm < options.dedupe_tol),
/// forward-evaluated, and ranked by outcome.rate descending (ties broken by
/// the flattened real coordinates). Deterministic for a fixed seed; an empty
/// list means no root was found.
std::vector<RootCandidate> solve_roots(const SolveProblem& problem);

}  // namespace sculpt

#endif  // SCULPT_SOLVER_HPP_
