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
#include <cmath>
#include <numbers>

#include <doctest.h>

#include "oracles.hpp"
#include "sculpt/errors.hpp"
#include "sculpt/interaction.hpp"

using sculpt::AtomStep;
using sculpt::Complex;
using sculpt::DesiredState;
using sculpt::EntangledState;
using sculpt::FieldState;

namespace {

// Reference two-atom run used throughout: flat five-level target from a
// coherent state with nbar = 2.56. Phases are all at +-pi/2.
const double kTau1 = 5.8, kTau2 = 4.2;
const Complex kEps1 = std::polar(0.4247, 4.7124);
const Complex kBeta1 = std::polar(0.7684, 4.7124);
const Complex kEps2 = std::polar(0.4616, 4.7124);
const Complex kBeta2 = std::polar(0.6583, -1.5708);

std::vector<AtomStep> reference_steps() {
  return {AtomStep{kTau1, kBeta1, kEps1}, AtomStep{kTau2, kBeta2, kEps2}};
}

Eigen::VectorXcd product_state(const FieldState& field, Complex beta) {
  const int d = field.n_max() + 1;
  const double nb = 1.0 / std::sqrt(1.0 + std::norm(beta));
  Eigen::VectorXcd psi(2 * d);
  for (int n = 0; n < d; ++n) {
    psi[n] = nb * field.amp(n);
    psi[d + n] = nb * beta * field.amp(n);
  }
  return psi;
}

}  // namespace

TEST_CASE("zero interaction leaves the field untouched") {
  const FieldState s = oracles::random_state(7, 14, 2);
  const Complex beta{0.3, -0.8};
  const EntangledState ent = sculpt::jc_entangle(s, 0.0, beta);
  const double nb = 1.0 / std::sqrt(1.0 + std::norm(beta));
  for (int n = 0; n <= s.n_max(); ++n) {
    CHECK(std::abs(ent.excited()[n] - nb * s.amp(n)) < 1e-14);
    CHECK(std::abs(ent.ground()[n] - nb * beta * s.amp(n)) < 1e-14);
  }
}

TEST_CASE("half Rabi cycle moves |e,0> fully to |g,1>") {
  const FieldState vac = FieldState::vacuum(8);
  const EntangledState ent =
      sculpt::jc_entangle(vac, std::numbers::pi / 2.0, Complex{0.0, 0.0});
  CHECK(std::abs(ent.excited()[0]) < 1e-12);
  CHECK(std::abs(std::abs(ent.ground()[1]) - 1.0) < 1e-12);
}

TEST_CASE("entangled output stays unit norm") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const FieldState s = oracles::random_state(seed, 16, 2);
    const double wt = 6.3 * (seed % 7 + 1) / 7.0;
    const Complex beta = oracles::random_unit_disk(seed + 100, 2.0);
    const EntangledState ent = sculpt::jc_entangle(s, wt, beta);
    double n2 = 0.0;
    for (int n = 0; n <= ent.n_max(); ++n) {
      n2 += std::norm(ent.excited()[n]) + std::norm(ent.ground()[n]);
    }
    CHECK(std::abs(n2 - 1.0) < 1e-10);
  }
}

TEST_CASE("jc_entangle matches the exact unitary") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int n_max = 24;
    const FieldState s = oracles::random_state(seed, n_max, 2);
    const double wt = 6.3 * ((seed * 13) % 11 + 1) / 11.0;
    const Complex beta = oracles::random_unit_disk(seed + 500, 2.0);

    const Eigen::VectorXcd evolved =
        sculpt::jc_exact_unitary(n_max, wt) * product_state(s, beta);
    const EntangledState ent = sculpt::jc_entangle(s, wt, beta);
    for (int n = 0; n <= n_max; ++n) {
      CHECK(std::abs(evolved[n] - ent.excited()[n]) < 1e-10);
      CHECK(std::abs(evolved[n_max + 1 + n] - ent.ground()[n]) < 1e-10);
    }
  }
}

TEST_CASE("exact unitary properties") {
  const int n_max = 16;
  SUBCASE("zero angle gives the identity") {
    CHECK((sculpt::jc_exact_unitary(n_max, 0.0) -
           Eigen::MatrixXcd::Identity(2 * (n_max + 1), 2 * (n_max + 1)))
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
  SUBCASE("single doublet rotation") {
    const double wt = 0.83;
    const Eigen::MatrixXcd u = sculpt::jc_exact_unitary(n_max, wt);
    CHECK(std::abs(u(0, 0) - std::cos(wt)) < 1e-14);
    CHECK(std::abs(u(n_max + 2, 0) - Complex{0.0, -1.0} * std::sin(wt)) < 1e-14);
    // |g,0> invariant
    CHECK(std::abs(u(n_max + 1, n_max + 1) - 1.0) < 1e-14);
  }
  SUBCASE("unitary and equal to the exponentiated generator") {
    for (double wt : {0.37, 1.9, 4.2, 6.1}) {
      const Eigen::MatrixXcd u = sculpt::jc_exact_unitary(n_max, wt);
      const Eigen::MatrixXcd gram = u.adjoint() * u;
      CHECK((gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols()))
                .cwiseAbs()
                .maxCoeff() < 1e-12);
      const Eigen::MatrixXcd ref =
          oracles::expm(oracles::jc_generator_times_minus_i(n_max, wt));
      CHECK((u - ref).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("project_detect with eps=0 keeps the excited branch") {
  const FieldState s = oracles::random_state(3, 12, 2);
  const EntangledState ent = sculpt::jc_entangle(s, 1.7, Complex{0.4, 0.1});
  const auto [state, pk] = sculpt::project_detect(ent, Complex{0.0, 0.0});
  double pe = 0.0;
  for (const Complex& z : ent.excited()) pe += std::norm(z);
  CHECK(pk == doctest::Approx(pe).epsilon(1e-12));
}

TEST_CASE("projection onto an unpopulated branch fails loudly") {
  // With wt=0 and beta=1 the atom is untouched; detecting eps=-1 projects
  // onto the orthogonal superposition.
  const FieldState vac = FieldState::vacuum(6);
  const EntangledState ent = sculpt::jc_entangle(vac, 0.0, Complex{1.0, 0.0});
  CHECK_THROWS_AS(sculpt::project_detect(ent, Complex{-1.0, 0.0}),
                  sculpt::ZeroProbabilityError);
}

TEST_CASE("recurrence with zero angle collapses to a scalar") {
  const FieldState s = oracles::random_state(11, 10, 2);
  const AtomStep step{0.0, Complex{0.2, 0.7}, Complex{-0.4, 0.1}};
  const auto gamma = sculpt::gamma_recurrence(s.amps(), step);
  const Complex scale = 1.0 + step.epsilon * step.beta;
  for (int n = 0; n <= s.n_max(); ++n) {
    CHECK(std::abs(gamma[static_cast<std::size_t>(n)] - scale * s.amp(n)) < 1e-14);
  }
}

TEST_CASE("recurrence equals the entangle/project composition") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const FieldState s = oracles::random_state(seed * 3 + 1, 18, 2);
    const AtomStep step{6.3 * (seed % 9 + 1) / 9.0,
                        oracles::random_unit_disk(seed + 900, 2.0),
                        oracles::random_unit_disk(seed + 901, 2.0)};
    const auto fast = sculpt::gamma_recurrence(s.amps(), step);
    const auto slow = oracles::composition_gamma(s, step);
    for (std::size_t n = 0; n < fast.size(); ++n) {
      CHECK(std::abs(fast[n] - slow[n]) < 1e-12);
    }
  }
}

TEST_CASE("support grows by at most one level per step") {
  const int n_max = 20;
  const int start = 9;
  std::vector<Complex> lam = FieldState::fock(start, n_max).amps();
  for (int k = 1; k <= 4; ++k) {
    const AtomStep step{2.3 + 0.4 * k, Complex{0.4, -0.2}, Complex{0.1, 0.6}};
    lam = sculpt::gamma_recurrence(lam, step);
    for (int n = 0; n <= n_max; ++n) {
      if (n < start - k || n > start + k) {
        CHECK(lam[static_cast<std::size_t>(n)] == Complex{0.0, 0.0});
      }
    }
  }
}

TEST_CASE("pad guard rejects states touching the truncation edge") {
  const FieldState top = FieldState::fock(9, 9);
  CHECK_THROWS_AS(sculpt::jc_entangle(top, 1.0, Complex{0.0, 0.0}),
                  sculpt::TruncationError);
  const AtomStep step{1.0, Complex{0.0, 0.0}, Complex{0.0, 0.0}};
  CHECK_THROWS_AS(sculpt::gamma_recurrence(top.amps(), step), sculpt::TruncationError);
}

TEST_CASE("forward run with no atoms scores the bare coherent state") {
  const DesiredState target = DesiredState::truncated_phase(4);
  const auto out = sculpt::sculpt_forward(Complex{1.6, 0.0}, {}, target);
  CHECK(out.step_probs.empty());
  CHECK(out.total_prob == 1.0);
  CHECK(out.fidelity == doctest::Approx(0.851253133722).epsilon(1e-9));
  CHECK(out.rate == doctest::Approx(out.fidelity).epsilon(1e-14));
}

TEST_CASE("reference two-atom run reproduces the frozen metrics") {
  const DesiredState target = DesiredState::truncated_phase(4);
  const auto out = sculpt::sculpt_forward(Complex{1.6, 0.0}, reference_steps(), target);
  REQUIRE(out.step_probs.size() == 2);
  // Frozen from an independently cross-checked simulation (recurrence path,
  // explicit-unitary path, and two truncations agree on every digit shown).
  CHECK(out.step_probs[0] == doctest::Approx(0.7575654744).epsilon(1e-8));
  CHECK(out.step_probs[1] == doctest::Approx(0.7288961211).epsilon(1e-8));
  CHECK(out.total_prob == doctest::Approx(0.5521865358).epsilon(1e-8));
  CHECK(out.fidelity == doctest::Approx(0.9576533202).epsilon(1e-8));
  CHECK(out.rate == doctest::Approx(0.5288032693).epsilon(1e-8));
  // Metric identities hold exactly as computed.
  CHECK(out.total_prob == out.step_probs[0] * out.step_probs[1]);
  CHECK(out.rate == out.fidelity * out.total_prob);
}

TEST_CASE("probability chain stays in (0, 1]") {
  const DesiredState target = DesiredState::truncated_phase(4);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::vector<AtomStep> steps;
    for (int k = 0; k < 3; ++k) {
      steps.push_back(AtomStep{6.3 * ((seed + k) % 9 + 1) / 9.0,
                               oracles::random_unit_disk(seed * 7 + k, 1.5),
                               oracles::random_unit_disk(seed * 7 + 3 + k, 1.5)});
    }
    const auto out = sculpt::sculpt_forward(Complex{1.2, 0.0}, steps, target);
    double product = 1.0;
    for (double pk : out.step_probs) {
      CHECK(pk > 0.0);
      CHECK(pk <= 1.0);
      product *= pk;
    }
    CHECK(out.total_prob == product);
    CHECK(out.rate >= 0.0);
    CHECK(out.rate <= 1.0);
  }
}
