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
#include "sculpt/interaction.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "sculpt/errors.hpp"
#include "sculpt/internal/recurrence.hpp"

namespace sculpt {

namespace {

constexpr Complex kImag{0.0, 1.0};

void check_pad(std::span<const Complex> amps, const char* what) {
  const double top_weight = std::norm(amps.back());
  if (!(top_weight < kTailWeightTol)) {
    throw TruncationError(
        fmt::format("{}: top amplitude weight {:.3e} >= {:.1e}, grow n_max past {}",
                    what, top_weight, kTailWeightTol, amps.size() - 1),
        static_cast<int>(amps.size()));
  }
}

}  // namespace

namespace internal {

std::vector<Complex> gamma_apply(std::span<const Complex> prev, const AtomStep& step) {
  return gamma_apply_raw(prev, step.omega_tau, step.beta, step.epsilon);
}

}  // namespace internal

double AtomStep::beta_norm() const { return 1.0 / std::sqrt(1.0 + std::norm(beta)); }
double AtomStep::epsilon_norm() const { return 1.0 / std::sqrt(1.0 + std::norm(epsilon)); }

EntangledState::EntangledState(std::vector<Complex> e_amps, std::vector<Complex> g_amps)
    : e_amps_(std::move(e_amps)), g_amps_(std::move(g_amps)) {
  if (e_amps_.empty() || e_amps_.size() != g_amps_.size()) {
    throw InvalidStateError("EntangledState: mismatched component sizes");
  }
}

EntangledState jc_entangle(const FieldState& state, double omega_tau, Complex beta) {
  if (!(omega_tau >= 0.0) || !std::isfinite(omega_tau)) {
    throw InvalidStateError("jc_entangle: omega_tau must be finite and >= 0");
  }
  check_pad(state.amps(), "jc_entangle");

  const auto& lam = state.amps();
  const int n_max = state.n_max();
  const double nb = 1.0 / std::sqrt(1.0 + std::norm(beta));

  // Collecting the doublet rotations per photon number m:
  //   e_m = N_b (C_m L_m - i beta S_m L_{m+1})
  //   g_m = N_b (beta C_{m-1} L_m - i S_{m-1} L_{m-1})
  std::vector<Complex> e(static_cast<std::size_t>(n_max) + 1);
  std::vector<Complex> g(static_cast<std::size_t>(n_max) + 1);
  for (int m = 0; m <= n_max; ++m) {
    const double cm = std::cos(std::sqrt(m + 1.0) * omega_tau);
    const double sm = std::sin(std::sqrt(m + 1.0) * omega_tau);
    const double cm1 = std::cos(std::sqrt(static_cast<double>(m)) * omega_tau);
    const double sm1 = std::sin(std::sqrt(static_cast<double>(m)) * omega_tau);
    Complex em = cm * lam[static_cast<std::size_t>(m)];
    if (m + 1 <= n_max) em -= kImag * beta * sm * lam[static_cast<std::size_t>(m) + 1];
    Complex gm = beta * cm1 * lam[static_cast<std::size_t>(m)];
    if (m >= 1) gm -= kImag * sm1 * lam[static_cast<std::size_t>(m) - 1];
    e[static_cast<std::size_t>(m)] = nb * em;
    g[static_cast<std::size_t>(m)] = nb * gm;
  }
  return EntangledState(std::move(e), std::move(g));
}

std::pair<FieldState, double> project_detect(const EntangledState& ent, Complex epsilon) {
  const double ne = 1.0 / std::sqrt(1.0 + std::norm(epsilon));
  const auto& e = ent.excited();
  const auto& g = ent.ground();
  std::vector<Complex> u(e.size());
  double p = 0.0;
  for (std::size_t n = 0; n < e.size(); ++n) {
    u[n] = ne * (e[n] + epsilon * g[n]);
    p += std::norm(u[n]);
  }
  if (p < kZeroProbThreshold) {
    throw ZeroProbabilityError(
        fmt::format("project_detect: branch probability {:.3e} below threshold", p));
  }
  p = std::min(p, 1.0);
  const double inv = 1.0 / std::sqrt(p);
  for (Complex& z : u) z *= inv;
  return {FieldState(std::move(u)), p};
}

std::vector<Complex> gamma_recurrence(std::span<const Complex> prev, const AtomStep& step) {
  if (prev.empty()) throw InvalidStateError("gamma_recurrence: empty input");
  check_pad(prev, "gamma_recurrence");
  return internal::gamma_apply(prev, step);
}

Eigen::MatrixXcd jc_exact_unitary(int n_max, double omega_tau) {
  if (n_max < 1) throw InvalidStateError("jc_exact_unitary: n_max must be >= 1");
  const int d = n_max + 1;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2 * d, 2 * d);
  for (int n = 0; n < n_max; ++n) {
    const double theta = std::sqrt(n + 1.0) * omega_tau;
    const int ie = n;           // |e,n>
    const int ig = d + n + 1;   // |g,n+1>
    u(ie, ie) = std::cos(theta);
    u(ig, ig) = std::cos(theta);
    u(ie, ig) = -kImag * std::sin(theta);
    u(ig, ie) = -kImag * std::sin(theta);
  }
  return u;
}

SculptOutcome sculpt_forward(const FieldState& initial, std::span<const AtomStep> steps,
                             const DesiredState& desired) {
  std::vector<Complex> lam = initial.amps();
  SculptOutcome out;
  out.step_probs.reserve(steps.size());
  for (const AtomStep& step : steps) {
    check_pad(lam, "sculpt_forward");
    std::vector<Complex> gamma = internal::gamma_apply(lam, step);
    double s2 = 0.0;
    for (const Complex& z : gamma) s2 += std::norm(z);
    double pk = s2 * step.epsilon_norm() * step.epsilon_norm() * step.beta_norm() *
                step.beta_norm();
    if (pk < kZeroProbThreshold) {
      throw ZeroProbabilityError(
          fmt::format("sculpt_forward: step {} probability {:.3e} below threshold",
                      out.step_probs.size() + 1, pk));
    }
    pk = std::min(pk, 1.0);
    out.step_probs.push_back(pk);
    const double inv = 1.0 / std::sqrt(s2);
    for (Complex& z : gamma) z *= inv;
    lam = std::move(gamma);
  }
  out.final_state = FieldState(std::move(lam));
  out.fidelity = fidelity(desired, out.final_state);
  out.total_prob = 1.0;
  for (double pk : out.step_probs) out.total_prob *= pk;
  out.rate = out.fidelity * out.total_prob;
  return out;
}

SculptOutcome sculpt_forward(Complex alpha, std::span<const AtomStep> steps,
                             const DesiredState& desired) {
  const int n_max = default_n_max(desired.n_d(), static_cast<int>(steps.size()),
                                  std::norm(alpha));
  return sculpt_forward(coherent_state(alpha, n_max), steps, desired);
}

}  // namespace sculpt
