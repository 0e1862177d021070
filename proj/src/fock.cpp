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
#include "sculpt/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "sculpt/errors.hpp"

namespace sculpt {

namespace {

double norm_sq(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return s;
}

void normalize_or_throw(std::vector<Complex>& v, const char* what) {
  const double n2 = norm_sq(v);
  if (!(n2 > 1e-30) || !std::isfinite(n2)) {
    throw InvalidStateError(fmt::format("{}: zero or non-finite norm", what));
  }
  if (std::abs(n2 - 1.0) < 1e-12) return;  // idempotent on normalized input
  const double inv = 1.0 / std::sqrt(n2);
  for (Complex& z : v) z *= inv;
}

}  // namespace

FieldState::FieldState(std::vector<Complex> amps) : amps_(std::move(amps)) {
  if (amps_.empty()) throw InvalidStateError("FieldState: empty amplitude vector");
  normalize_or_throw(amps_, "FieldState");
}

FieldState FieldState::vacuum(int n_max) { return fock(0, n_max); }

FieldState FieldState::fock(int n, int n_max) {
  if (n_max < 0 || n < 0 || n > n_max) {
    throw InvalidStateError(fmt::format("FieldState::fock: n={} n_max={}", n, n_max));
  }
  std::vector<Complex> amps(static_cast<std::size_t>(n_max) + 1, Complex{0.0, 0.0});
  amps[static_cast<std::size_t>(n)] = 1.0;
  FieldState s;
  s.amps_ = std::move(amps);
  return s;
}

DesiredState::DesiredState(std::vector<Complex> d) : amps_(std::move(d)) {
  while (!amps_.empty() && amps_.back() == Complex{0.0, 0.0}) amps_.pop_back();
  if (amps_.empty()) throw InvalidStateError("DesiredState: no nonzero amplitude");
  normalize_or_throw(amps_, "DesiredState");
}

DesiredState DesiredState::truncated_phase(int n_d) {
  if (n_d < 0) throw InvalidStateError("DesiredState::truncated_phase: n_d < 0");
  const double a = 1.0 / std::sqrt(static_cast<double>(n_d) + 1.0);
  return DesiredState(std::vector<Complex>(static_cast<std::size_t>(n_d) + 1, Complex{a, 0.0}));
}

FieldState DesiredState::as_field_state(int n_max) const {
  if (n_max < n_d()) {
    throw TruncationError(
        fmt::format("DesiredState::as_field_state: n_max={} < N_d={}", n_max, n_d()), n_d());
  }
  std::vector<Complex> amps(static_cast<std::size_t>(n_max) + 1, Complex{0.0, 0.0});
  std::copy(amps_.begin(), amps_.end(), amps.begin());
  return FieldState(std::move(amps));
}

namespace {

// Smallest n_max with Poisson tail weight below kTailWeightTol.
int required_tail_n_max(double nbar) {
  if (nbar == 0.0) return 0;
  double pmf = std::exp(-nbar);
  double cdf = pmf;
  int n = 0;
  while (1.0 - cdf >= kTailWeightTol && n < 100000) {
    ++n;
    pmf *= nbar / n;
    cdf += pmf;
  }
  return n;
}

}  // namespace

int coherent_required_n_max(Complex alpha) {
  return required_tail_n_max(std::norm(alpha));
}

FieldState coherent_state(Complex alpha, int n_max) {
  if (n_max < 0) throw InvalidStateError("coherent_state: n_max < 0");
  const double nbar = std::norm(alpha);
  std::vector<Complex> amps(static_cast<std::size_t>(n_max) + 1);
  // amp_{n+1} = amp_n * alpha / sqrt(n+1), seeded with the vacuum weight.
  Complex a = std::exp(-nbar / 2.0);
  double captured = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    amps[static_cast<std::size_t>(n)] = a;
    captured += std::norm(a);
    a *= alpha / std::sqrt(static_cast<double>(n) + 1.0);
  }
  if (1.0 - captured >= kTailWeightTol) {
    throw TruncationError(
        fmt::format("coherent_state: tail weight {:.3e} at n_max={}, need n_max>={}",
                    1.0 - captured, n_max, coherent_required_n_max(alpha)),
        coherent_required_n_max(alpha));
  }
  return FieldState(std::move(amps));
}

namespace {

double overlap_sq(std::span<const Complex> a, std::span<const Complex> b) {
  const double na = norm_sq(a), nb = norm_sq(b);
  if (!(na > 1e-30) || !(nb > 1e-30)) {
    throw InvalidStateError("fidelity: zero-norm input");
  }
  Complex dot{0.0, 0.0};
  const std::size_t k = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < k; ++i) dot += std::conj(a[i]) * b[i];
  return std::norm(dot) / (na * nb);
}

}  // namespace

double fidelity(const FieldState& a, const FieldState& b) {
  return overlap_sq(a.amps(), b.amps());
}

double fidelity(const DesiredState& a, const FieldState& b) {
  return overlap_sq(a.amps(), b.amps());
}

double mean_photon(const FieldState& s) {
  double m = 0.0;
  for (int n = 0; n <= s.n_max(); ++n) m += n * std::norm(s.amp(n));
  return m;
}

int default_n_max(int n_d, int m_atoms, double nbar) {
  const int padded = n_d + m_atoms +
                     static_cast<int>(std::ceil(nbar + 6.0 * std::sqrt(nbar + 1.0)));
  // For small targets the 6-sigma pad alone can leave more than the allowed
  // coherent tail; never go below what the tail guard needs plus the shift
  // headroom of the run.
  return std::max(padded, required_tail_n_max(nbar) + m_atoms);
}

}  // namespace sculpt
