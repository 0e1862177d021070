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
#ifndef SCULPT_INTERACTION_HPP_
#define SCULPT_INTERACTION_HPP_

#include <Eigen/Dense>
#include <span>
#include <utility>
#include <vector>

#include "sculpt/fock.hpp"

namespace sculpt {

/// Detection probabilities below this are treated as an inconsistent branch,
/// not a physical outcome.
inline constexpr double kZeroProbThreshold = 1e-14;

/// Control knobs for one atom: resonant interaction parameter Omega*tau and
/// the two Ramsey-zone superposition parameters. The first Ramsey zone
/// prepares the atom in N_beta(|e> + beta|g>); the atom is then detected in
/// N_eps(|e> + eps*|g>)  [so the projection bra carries eps, not eps*].
struct AtomStep {
  double omega_tau = 0.0;
  Complex beta{0.0, 0.0};
  Complex epsilon{0.0, 0.0};

  double beta_norm() const;     // (1 + |beta|^2)^{-1/2}
  double epsilon_norm() const;  // (1 + |eps|^2)^{-1/2}
};

/// Joint atom-field amplitudes after the resonant interaction:
/// excited()[n] multiplies |e>|n>, ground()[n] multiplies |g>|n>.
class EntangledState {
 public:
  EntangledState(std::vector<Complex> e_amps, std::vector<Complex> g_amps);
  int n_max() const { return static_cast<int>(e_amps_.size()) - 1; }
  const std::vector<Complex>& excited() const { return e_amps_; }
  const std::vector<Complex>& ground() const { return g_amps_; }

 private:
  std::vector<Complex> e_amps_, g_amps_;
};

/// Result of a full conditional run.
struct SculptOutcome {
  FieldState final_state;
  double fidelity = 0.0;           // |<desired|final>|^2
  std::vector<double> step_probs;  // P_k per detected atom
  double total_prob = 1.0;         // product of step_probs
  double rate = 0.0;               // fidelity * total_prob
};

/// One resonant interaction of an atom prepared as N_beta(|e> + beta|g>)
/// with the field. Each doublet {|e,n>, |g,n+1>} rotates by sqrt(n+1)*wt
/// with the -i sine coupling; |g,0> is invariant.
///
/// Requires |amps[n_max]|^2 < kTailWeightTol so the photon-number shift loses
/// no weight at the top of the basis; throws TruncationError otherwise.
EntangledState jc_entangle(const FieldState& state, double omega_tau,
                           Complex beta);

/// Conditional detection of the atom in N_eps(|e> + eps*|g>). Returns the
/// renormalized post-detection field state and the detection probability
/// P_k = sum_n |N_eps (e_n + eps g_n)|^2. Throws ZeroProbabilityError when
/// P_k < kZeroProbThreshold.
std::pair<FieldState, double> project_detect(const EntangledState& ent,
                                             Complex epsilon);

/// One unnormalized conditional step on bare amplitudes:
///
///   G_n = (C_n + eps*beta*C_{n-1}) L_n - i*beta*S_n L_{n+1}
///         - i*eps*S_{n-1} L_{n-1},
///
/// with C_n = cos(sqrt(n+1)*wt), S_n = sin(sqrt(n+1)*wt), and the n = 0
/// boundary fixed by C_{-1} = cos(sqrt(0)*wt) = 1, S_{-1} = sin(sqrt(0)*wt)
/// = 0 (so |g,0> is untouched by the interaction). Composing jc_entangle and
/// project_detect gives exactly N_eps*N_beta times this vector.
///
/// Requires |prev[n_max]|^2 < kTailWeightTol (one slot of pad headroom).
std::vector<Complex> gamma_recurrence(std::span<const Complex> prev,
                                      const AtomStep& step);

/// Exact one-atom interaction as a unitary on the ordered basis
/// |e,0..n_max>, |g,0..n_max>. Built directly from the 2x2 doublet blocks;
/// |g,0> and the truncation edge |e,n_max> are invariant.
Eigen::MatrixXcd jc_exact_unitary(int n_max, double omega_tau);

/// Runs the conditional sequence from coherent_state(alpha) on the default
/// truncation and scores it against `desired`. An empty step list is allowed
/// (total_prob = 1, fidelity = |<desired|alpha>|^2).
SculptOutcome sculpt_forward(Complex alpha, std::span<const AtomStep> steps,
                             const DesiredState& desired);

/// Same, starting from an explicit initial state.
SculptOutcome sculpt_forward(const FieldState& initial,
                             std::span<const AtomStep> steps,
                             const DesiredState& desired);

}  // namespace sculpt

#endif  // SCULPT_INTERACTION_HPP_
