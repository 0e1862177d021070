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
#ifndef SCULPT_TESTS_ORACLES_HPP_
#define SCULPT_TESTS_ORACLES_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sculpt/interaction.hpp"

// Test-only reference implementations, independent of the library paths they
// cross-check.
namespace oracles {

/// Dense matrix exponential by scaling and squaring with a high-order Taylor
/// series on the scaled matrix.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

/// Generator of the resonant one-atom interaction on the ordered basis
/// |e,0..n_max>, |g,0..n_max>: the off-diagonal doublet couplings
/// sqrt(n+1) * omega_tau scaled by -i, so that expm(generator) is the
/// interaction unitary.
Eigen::MatrixXcd jc_generator_times_minus_i(int n_max, double omega_tau);

/// Poisson pmf e^{-mean} mean^k / k! via a running product.
double poisson_pmf(int k, double mean);

/// One conditional step done entirely through the explicit entangle/project
/// composition; returns the unnormalized amplitudes divided by the two
/// superposition normalization factors (the recurrence's convention).
std::vector<sculpt::Complex> composition_gamma(const sculpt::FieldState& state,
                                               const sculpt::AtomStep& step);

/// Deterministic random normalized state whose top `pad_zeros` amplitudes are
/// exactly zero.
sculpt::FieldState random_state(std::uint64_t seed, int n_max, int pad_zeros);

sculpt::Complex random_unit_disk(std::uint64_t seed, double radius);

}  // namespace oracles

#endif  // SCULPT_TESTS_ORACLES_HPP_
