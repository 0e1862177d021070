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
#ifndef SCULPT_INTERNAL_RECURRENCE_HPP_
#define SCULPT_INTERNAL_RECURRENCE_HPP_

#include <cmath>
#include <span>
#include <vector>

#include "sculpt/fock.hpp"

namespace sculpt {

struct AtomStep;

namespace internal {

/// Unguarded recurrence core shared by the physics engine and the solver
/// residual: out-of-range neighbors are zero, no pad check, no normalization.
inline std::vector<Complex> gamma_apply_raw(std::span<const Complex> prev,
                                            double omega_tau, Complex beta,
                                            Complex epsilon) {
  const std::size_t size = prev.size();
  std::vector<Complex> gamma(size);
  const Complex i_beta{-beta.imag(), beta.real()};     // i*beta
  const Complex i_eps{-epsilon.imag(), epsilon.real()};  // i*eps
  double c_prev = 1.0;  // C_{n-1}, starting from C_{-1} = cos(0) = 1
  double s_prev = 0.0;  // S_{n-1}, starting from S_{-1} = sin(0) = 0
  for (std::size_t n = 0; n < size; ++n) {
    const double arg = std::sqrt(static_cast<double>(n) + 1.0) * omega_tau;
    const double c = std::cos(arg);
    const double s = std::sin(arg);
    Complex g = (c + epsilon * beta * c_prev) * prev[n];
    if (n + 1 < size) g -= i_beta * s * prev[n + 1];
    if (n >= 1) g -= i_eps * s_prev * prev[n - 1];
    gamma[n] = g;
    c_prev = c;
    s_prev = s;
  }
  return gamma;
}

std::vector<Complex> gamma_apply(std::span<const Complex> prev, const AtomStep& step);

}  // namespace internal
}  // namespace sculpt

#endif  // SCULPT_INTERNAL_RECURRENCE_HPP_
