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
#include "sculpt/wigner.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "sculpt/errors.hpp"

namespace sculpt {

namespace {

int displacement_pad(Complex gamma) {
  const double g = std::abs(gamma);
  return static_cast<int>(std::ceil(g * g + 6.0 * g));
}

/// Walks one pair of diagonals (row = col + a and col = row + a) of
/// <m|D(gamma)|n> and hands each element to `emit(m, n, value)`.
///
/// Elements come from sqrt(min! / max!) * pow(gamma or -conj(gamma), a)
/// * exp(-x/2) * L_k^{(a)}(x) with x = |gamma|^2 and k the smaller index.
/// The prefactor is a running product seeded with exp(-x/2), which keeps
/// every intermediate bounded; the Laguerre values follow the usual upward
/// three-term recurrence in k at fixed offset a.
template <typename Emit>
void walk_diagonals(Complex gamma, int a, int max_k_upper, int max_k_lower,
                    Emit&& emit) {
  const double x = std::norm(gamma);
  Complex coef_up{std::exp(-x / 2.0), 0.0};
  Complex coef_lo = coef_up;
  for (int j = 1; j <= a; ++j) {
    coef_up *= gamma / std::sqrt(static_cast<double>(j));
    coef_lo *= -std::conj(gamma) / std::sqrt(static_cast<double>(j));
  }
  const int max_k = std::max(max_k_upper, max_k_lower);
  double lag_prev = 0.0;
  double lag = 1.0;  // L_0^{(a)} = 1
  for (int k = 0; k <= max_k; ++k) {
    if (k > 0) {
      const double next =
          ((2.0 * k - 1.0 + a - x) * lag - (k - 1.0 + a) * lag_prev) / k;
      lag_prev = lag;
      lag = next;
      const double scale = std::sqrt(static_cast<double>(k) / (k + a));
      coef_up *= scale;
      coef_lo *= scale;
    }
    if (k <= max_k_upper) emit(k + a, k, coef_up * lag);
    if (a > 0 && k <= max_k_lower) emit(k, k + a, coef_lo * lag);
  }
}

/// D(gamma) |psi> on the extended basis |0>..|rows>.
std::vector<Complex> displaced_amplitudes(std::span<const Complex> psi,
                                          Complex gamma, int rows) {
  const int cols = static_cast<int>(psi.size()) - 1;
  std::vector<Complex> out(static_cast<std::size_t>(rows) + 1, Complex{0.0, 0.0});
  for (int a = 0; a <= rows; ++a) {
    const int upper = std::min(cols, rows - a);   // (k+a, k), k = col
    const int lower = a == 0 ? -1 : std::min(rows, cols - a);  // (k, k+a), k = row
    if (upper < 0 && lower < 0) continue;
    walk_diagonals(gamma, a, upper, lower, [&](int m, int n, Complex v) {
      out[static_cast<std::size_t>(m)] += v * psi[static_cast<std::size_t>(n)];
    });
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd displacement_matrix(Complex gamma, int n_max) {
  if (n_max < 0) throw InvalidStateError("displacement_matrix: n_max < 0");
  const int pad = displacement_pad(gamma);
  if (n_max < pad) {
    throw TruncationError(
        fmt::format("displacement_matrix: n_max={} leaves no trusted block, need >= {}",
                    n_max, pad),
        pad);
  }
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
  for (int a = 0; a <= n_max; ++a) {
    walk_diagonals(gamma, a, n_max - a, a == 0 ? -1 : n_max - a,
                   [&](int m, int n, Complex v) { d(m, n) = v; });
  }
  return d;
}

double wigner_at(const FieldState& state, Complex gamma) {
  // effective support: trailing amplitudes below 1e-13 contribute nothing
  int support = state.n_max();
  while (support > 0 && std::abs(state.amp(support)) < 1e-13) --support;
  const std::span<const Complex> psi(state.amps().data(),
                                     static_cast<std::size_t>(support) + 1);

  int rows = support + displacement_pad(gamma) + 8;
  double alternating = 0.0;
  for (int attempt = 0; attempt < 5; ++attempt) {
    const std::vector<Complex> disp = displaced_amplitudes(psi, -gamma, rows);
    double captured = 0.0;
    alternating = 0.0;
    double parity = 1.0;
    for (const Complex& z : disp) {
      const double w = std::norm(z);
      captured += w;
      alternating += parity * w;
      parity = -parity;
    }
    if (1.0 - captured <= 1e-8) break;
    rows = 2 * rows + 16;
  }
  return alternating * (2.0 / std::numbers::pi);
}

double PhaseGrid::q(int iq) const { return q_min + dq() * iq; }
double PhaseGrid::p(int jp) const { return p_min + dp() * jp; }

double PhaseGrid::riemann_sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * dq() * dp();
}

GridBounds auto_bounds(const FieldState& state) {
  Complex center{0.0, 0.0};
  for (int n = 0; n < state.n_max(); ++n) {
    center += std::sqrt(n + 1.0) * std::conj(state.amp(n)) * state.amp(n + 1);
  }
  const double hw = 1.5 + 3.0 * std::sqrt(mean_photon(state) + 1.0);
  return GridBounds{center.real() - hw, center.real() + hw,
                    center.imag() - hw, center.imag() + hw};
}

PhaseGrid wigner_grid(const FieldState& state, const GridBounds& bounds,
                      int nq, int np) {
  if (nq < 2 || np < 2) throw ConfigError("wigner_grid: need nq, np >= 2");
  if (!(bounds.q_max > bounds.q_min) || !(bounds.p_max > bounds.p_min)) {
    throw ConfigError("wigner_grid: degenerate bounds");
  }
  PhaseGrid grid;
  grid.q_min = bounds.q_min;
  grid.q_max = bounds.q_max;
  grid.p_min = bounds.p_min;
  grid.p_max = bounds.p_max;
  grid.nq = nq;
  grid.np = np;
  grid.values.resize(static_cast<std::size_t>(nq) * np);
  for (int jp = 0; jp < np; ++jp) {
    for (int iq = 0; iq < nq; ++iq) {
      grid.values[static_cast<std::size_t>(jp) * nq + iq] =
          wigner_at(state, Complex(grid.q(iq), grid.p(jp)));
    }
  }
  return grid;
}

double wigner_overlap(const PhaseGrid& a, const PhaseGrid& b) {
  if (a.nq != b.nq || a.np != b.np || a.q_min != b.q_min || a.q_max != b.q_max ||
      a.p_min != b.p_min || a.p_max != b.p_max) {
    throw InvalidStateError("wigner_overlap: grids must share geometry");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
  return std::numbers::pi * s * a.dq() * a.dp();
}

}  // namespace sculpt
