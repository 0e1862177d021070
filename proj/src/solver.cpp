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
#include "sculpt/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "sculpt/errors.hpp"
#include "sculpt/internal/recurrence.hpp"
#include "sculpt/internal/rng.hpp"

namespace sculpt {

int min_atoms(int n_d) {
  if (n_d < 0) throw InvalidStateError("min_atoms: n_d < 0");
  return (n_d + 1) / 2;
}

namespace {

// Pivot with the largest target amplitude; first index wins ties.
int pivot_index(const DesiredState& d) {
  int best = 0;
  double best_mag = std::norm(d.amp(0));
  for (int n = 1; n <= d.n_d(); ++n) {
    const double m = std::norm(d.amp(n));
    if (m > best_mag) {
      best_mag = m;
      best = n;
    }
  }
  return best;
}

// x layout: [re eps_1, im eps_1, .., re eps_M, im eps_M,
//            re beta_1, im beta_1, .., re beta_M, im beta_M]
void unpack(const Eigen::VectorXd& x, int m, std::vector<Complex>& eps,
            std::vector<Complex>& betas) {
  eps.resize(static_cast<std::size_t>(m));
  betas.resize(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    eps[static_cast<std::size_t>(k)] = Complex(x[2 * k], x[2 * k + 1]);
    betas[static_cast<std::size_t>(k)] = Complex(x[2 * m + 2 * k], x[2 * m + 2 * k + 1]);
  }
}

// Residual against a precomputed initial amplitude vector.
Eigen::VectorXd residual_from(const std::vector<Complex>& lam0,
                              const DesiredState& d, int pivot,
                              std::span<const double> taus,
                              std::span<const Complex> eps,
                              std::span<const Complex> betas) {
  std::vector<Complex> lam = lam0;
  for (std::size_t k = 0; k < taus.size(); ++k) {
    lam = internal::gamma_apply_raw(lam, taus[k], betas[k], eps[k]);
  }
  double n2 = 0.0;
  for (const Complex& z : lam) n2 += std::norm(z);
  const double inv = n2 > 0.0 ? 1.0 / std::sqrt(n2) : 0.0;

  const int n_d = d.n_d();
  Eigen::VectorXd r(2 * n_d);
  const Complex gp = lam[static_cast<std::size_t>(pivot)] * inv;
  const Complex dp = d.amp(pivot);
  int idx = 0;
  for (int n = 0; n <= n_d; ++n) {
    if (n == pivot) continue;
    const Complex rn = lam[static_cast<std::size_t>(n)] * inv * dp - gp * d.amp(n);
    r[idx++] = rn.real();
    r[idx++] = rn.imag();
  }
  return r;
}

struct LmResult {
  Eigen::VectorXd x;
  double residual_norm = std::numeric_limits<double>::infinity();
  bool converged = false;
};

// Damped least squares on the real/imaginary split with a central-difference
// Jacobian. The residual is polynomial in the unknowns, so this converges
// quadratically near simple roots.
template <typename Fn>
LmResult levenberg_marquardt(Eigen::VectorXd x, Fn&& fn, int max_iters,
                             double target_tol) {
  constexpr double kDiffStep = 1e-7;
  constexpr double kDampGrow = 10.0;
  constexpr double kDampShrink = 0.3;
  constexpr double kDampMax = 1e13;

  const int n = static_cast<int>(x.size());
  Eigen::VectorXd f = fn(x);
  double f2 = f.squaredNorm();
  double damp = 1e-3;

  for (int iter = 0; iter < max_iters && std::isfinite(f2); ++iter) {
    if (f2 < target_tol * target_tol) break;
    Eigen::MatrixXd jac(f.size(), n);
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd xp = x, xm = x;
      xp[j] += kDiffStep;
      xm[j] -= kDiffStep;
      jac.col(j) = (fn(xp) - fn(xm)) / (2.0 * kDiffStep);
    }
    const Eigen::MatrixXd a = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * f;
    bool improved = false;
    while (damp <= kDampMax) {
      Eigen::MatrixXd a_damped = a;
      for (int j = 0; j < n; ++j) a_damped(j, j) += damp * std::max(a(j, j), 1e-12);
      const Eigen::VectorXd delta = a_damped.ldlt().solve(-g);
      const Eigen::VectorXd xn = x + delta;
      const Eigen::VectorXd fnv = fn(xn);
      const double fn2 = fnv.squaredNorm();
      if (std::isfinite(fn2) && fn2 < f2) {
        x = xn;
        f = fnv;
        f2 = fn2;
        damp = std::max(damp * kDampShrink, 1e-14);
        improved = true;
        break;
      }
      damp *= kDampGrow;
    }
    if (!improved) break;
  }
  LmResult out;
  out.x = std::move(x);
  out.residual_norm = std::sqrt(f2);
  out.converged = std::isfinite(f2);
  return out;
}

bool lexicographic_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

}  // namespace

std::vector<double> residual(const SolveProblem& problem,
                             std::span<const Complex> epsilons,
                             std::span<const Complex> betas) {
  const int m = problem.atom_count();
  if (static_cast<int>(epsilons.size()) != m || static_cast<int>(betas.size()) != m) {
    throw InvalidStateError("residual: parameter count does not match omega_taus");
  }
  const int n_max =
      default_n_max(problem.desired.n_d(), m, std::norm(problem.alpha));
  const std::vector<Complex> lam0 = coherent_state(problem.alpha, n_max).amps();
  const Eigen::VectorXd r = residual_from(lam0, problem.desired,
                                          pivot_index(problem.desired),
                                          problem.omega_taus, epsilons, betas);
  return {r.data(), r.data() + r.size()};
}

std::vector<RootCandidate> solve_roots(const SolveProblem& problem) {
  const int m = problem.atom_count();
  const SolverOptions& opt = problem.options;
  const int n_max =
      default_n_max(problem.desired.n_d(), m, std::norm(problem.alpha));
  const std::vector<Complex> lam0 = coherent_state(problem.alpha, n_max).amps();
  const int pivot = pivot_index(problem.desired);

  auto evaluate = [&](const std::vector<Complex>& eps,
                      const std::vector<Complex>& betas) {
    std::vector<AtomStep> steps(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
      steps[static_cast<std::size_t>(k)] =
          AtomStep{problem.omega_taus[static_cast<std::size_t>(k)],
                   betas[static_cast<std::size_t>(k)], eps[static_cast<std::size_t>(k)]};
    }
    return sculpt_forward(FieldState(lam0), steps, problem.desired);
  };

  if (m == 0) {
    RootCandidate c;
    c.outcome = evaluate({}, {});
    c.residual_norm = 0.0;
    if (problem.desired.n_d() > 0) {
      const Eigen::VectorXd r =
          residual_from(lam0, problem.desired, pivot, problem.omega_taus, {}, {});
      c.residual_norm = r.norm();
      if (c.residual_norm >= opt.root_tol) return {};
    }
    return {c};
  }

  auto fn = [&](const Eigen::VectorXd& x) {
    std::vector<Complex> eps, betas;
    unpack(x, m, eps, betas);
    return residual_from(lam0, problem.desired, pivot, problem.omega_taus, eps, betas);
  };

  // Multi-start collection. LM is run well past root_tol so accepted roots
  // re-verify comfortably.
  internal::SplitMix64 rng(opt.seed);
  std::vector<Eigen::VectorXd> converged;
  for (int s = 0; s < opt.n_starts; ++s) {
    Eigen::VectorXd x0(4 * m);
    for (int k = 0; k < 2 * m; ++k) {
      const double mod = opt.start_box * rng.uniform();
      const double phase = 2.0 * std::numbers::pi * rng.uniform();
      x0[2 * k] = mod * std::cos(phase);
      x0[2 * k + 1] = mod * std::sin(phase);
    }
    LmResult lm = levenberg_marquardt(std::move(x0), fn, opt.max_iters,
                                      opt.root_tol * 1e-2);
    if (!lm.converged || !lm.x.allFinite()) continue;
    if (lm.residual_norm < opt.root_tol) converged.push_back(std::move(lm.x));
  }

  // Deterministic dedupe: order by (residual, coordinates), then greedily
  // keep the first representative of each cluster.
  std::vector<std::pair<double, Eigen::VectorXd>> ranked;
  ranked.reserve(converged.size());
  for (auto& x : converged) ranked.emplace_back(fn(x).norm(), std::move(x));
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return lexicographic_less(a.second, b.second);
  });
  std::vector<std::pair<double, Eigen::VectorXd>> unique;
  for (auto& [rn, x] : ranked) {
    bool duplicate = false;
    for (const auto& [urn, ux] : unique) {
      if ((x - ux).lpNorm<Eigen::Infinity>() < opt.dedupe_tol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) unique.emplace_back(rn, std::move(x));
  }

  std::vector<RootCandidate> candidates;
  candidates.reserve(unique.size());
  for (const auto& [rn, x] : unique) {
    RootCandidate c;
    unpack(x, m, c.epsilons, c.betas);
    c.residual_norm = rn;
    try {
      c.outcome = evaluate(c.epsilons, c.betas);
    } catch (const Error&) {
      continue;  // un-evaluable root (degenerate branch or pad blowup)
    }
    candidates.push_back(std::move(c));
  }

  auto flat = [m](const RootCandidate& c) {
    Eigen::VectorXd x(4 * m);
    for (int k = 0; k < m; ++k) {
      x[2 * k] = c.epsilons[static_cast<std::size_t>(k)].real();
      x[2 * k + 1] = c.epsilons[static_cast<std::size_t>(k)].imag();
      x[2 * m + 2 * k] = c.betas[static_cast<std::size_t>(k)].real();
      x[2 * m + 2 * k + 1] = c.betas[static_cast<std::size_t>(k)].imag();
    }
    return x;
  };
  std::sort(candidates.begin(), candidates.end(),
            [&](const RootCandidate& a, const RootCandidate& b) {
              if (a.outcome.rate != b.outcome.rate) return a.outcome.rate > b.outcome.rate;
              return lexicographic_less(flat(a), flat(b));
            });
  return candidates;
}

}  // namespace sculpt
