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
#ifndef SCULPT_FOCK_HPP_
#define SCULPT_FOCK_HPP_

#include <complex>
#include <span>
#include <vector>

namespace sculpt {

using Complex = std::complex<double>;

/// Tail weight (probability, not amplitude) that a truncated basis is allowed
/// to lose before an operation refuses to run.
inline constexpr double kTailWeightTol = 1e-10;

/// A pure cavity-field state on the truncated Fock basis |0>..|n_max>.
///
/// Immutable after construction and always unit-norm; constructors normalize
/// and throw InvalidStateError when handed a (near-)zero vector.
class FieldState {
 public:
  FieldState() = default;
  explicit FieldState(std::vector<Complex> amps);

  static FieldState vacuum(int n_max);
  /// Single Fock basis state |n> embedded in a basis of size n_max+1.
  static FieldState fock(int n, int n_max);

  int n_max() const { return static_cast<int>(amps_.size()) - 1; }
  const std::vector<Complex>& amps() const { return amps_; }
  Complex amp(int n) const { return amps_[static_cast<std::size_t>(n)]; }
  bool empty() const { return amps_.empty(); }

 private:
  std::vector<Complex> amps_;
};

/// The target superposition d_0|0> + ... + d_{N_d}|N_d>.
///
/// Trailing exactly-zero amplitudes are trimmed so that N_d is tight
/// (d_{N_d} != 0); the vector is normalized on construction.
class DesiredState {
 public:
  DesiredState() = default;
  explicit DesiredState(std::vector<Complex> d);

  /// Equal-amplitude superposition of |0>..|n_d| with d_n = 1/sqrt(n_d+1).
  static DesiredState truncated_phase(int n_d);

  int n_d() const { return static_cast<int>(amps_.size()) - 1; }
  const std::vector<Complex>& amps() const { return amps_; }
  Complex amp(int n) const { return amps_[static_cast<std::size_t>(n)]; }

  /// The target viewed as a FieldState on a (possibly larger) basis.
  FieldState as_field_state(int n_max) const;

 private:
  std::vector<Complex> amps_;
};

/// Coherent state amplitudes e^{-|a|^2/2} a^n / sqrt(n!), renormalized over
/// the truncation. Throws TruncationError (reporting the required n_max) if
/// the discarded Poisson tail weight is >= kTailWeightTol.
FieldState coherent_state(Complex alpha, int n_max);

/// Smallest n_max whose coherent Poisson tail weight is < kTailWeightTol.
int coherent_required_n_max(Complex alpha);

/// |<a|b>|^2; vectors of different lengths are zero-padded.
double fidelity(const FieldState& a, const FieldState& b);
double fidelity(const DesiredState& a, const FieldState& b);

/// Sum_n n |amps_n|^2.
double mean_photon(const FieldState& s);

/// Default truncation for a sculpting run: N_d + M + ceil(nbar + 6*sqrt(nbar+1)).
int default_n_max(int n_d, int m_atoms, double nbar);

}  // namespace sculpt

#endif  // SCULPT_FOCK_HPP_
