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
#ifndef SCULPT_WIGNER_HPP_
#define SCULPT_WIGNER_HPP_

#include <Eigen/Dense>

#include "sculpt/fock.hpp"

namespace sculpt {

/// Rectangular phase-space window.
struct GridBounds {
  double q_min = 0.0, q_max = 0.0;
  double p_min = 0.0, p_max = 0.0;
};

/// Sampled Wigner values on a uniform grid, gamma = q + i p. Values are
/// stored with q varying fastest: at(iq, jp) samples gamma = q[iq] + i p[jp].
struct PhaseGrid {
  double q_min = 0.0, q_max = 0.0;
  double p_min = 0.0, p_max = 0.0;
  int nq = 0, np = 0;
  std::vector<double> values;

  double q(int iq) const;
  double p(int jp) const;
  double dq() const { return (q_max - q_min) / (nq - 1); }
  double dp() const { return (p_max - p_min) / (np - 1); }
  double at(int iq, int jp) const {
    return values[static_cast<std::size_t>(jp) * nq + iq];
  }
  /// Sum of values * dq * dp; ~1 for states well inside the window.
  double riemann_sum() const;
};

/// Matrix elements <m|D(gamma)|n> on |0>..|n_max>, from the closed-form
/// generalized-Laguerre expression evaluated by upward recurrence along
/// diagonals of fixed order offset (no factorials are formed directly).
/// Column n is trustworthy (unitary to ~1e-6 under composition) while the
/// displaced level fits the basis: n + |gamma|^2 + 6|gamma|sqrt(n+1) <=
/// n_max, since a displaced |n> spreads over ~|gamma|sqrt(2n+1) levels.
/// Throws TruncationError when not even column 0 fits.
Eigen::MatrixXcd displacement_matrix(Complex gamma, int n_max);

/// W(gamma) = (2/pi) sum_n (-1)^n |<n|D(-gamma)|psi>|^2. The displaced state
/// is evaluated on an internally padded basis sized so its captured norm is
/// 1 - 1e-8 or better. Adopted convention: integral of W over the complex
/// plane is 1 and a coherent state |a> gives (2/pi) exp(-2|gamma - a|^2).
double wigner_at(const FieldState& state, Complex gamma);

/// Window centered on the state's mean amplitude with half-width
/// 1.5 + 3*sqrt(nbar + 1).
GridBounds auto_bounds(const FieldState& state);

/// Samples wigner_at over an nq x np grid (both >= 2).
PhaseGrid wigner_grid(const FieldState& state, const GridBounds& bounds,
                      int nq, int np);

/// pi * sum_ij a_ij b_ij dq dp over a common geometry; approximates
/// |<psi_a|psi_b>|^2. Throws InvalidStateError on mismatched grids.
double wigner_overlap(const PhaseGrid& a, const PhaseGrid& b);

}  // namespace sculpt

#endif  // SCULPT_WIGNER_HPP_
