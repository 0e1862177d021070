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
#ifndef SCULPT_SERIALIZE_HPP_
#define SCULPT_SERIALIZE_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sculpt/optimizer.hpp"
#include "sculpt/solver.hpp"
#include "sculpt/wigner.hpp"

namespace sculpt {

using Json = nlohmann::json;

// Complex numbers travel as [re, im].
void to_json(Json& j, const Complex& z);
void from_json(const Json& j, Complex& z);

// {"n_max": int, "amps": [[re, im], ...]}
void to_json(Json& j, const FieldState& s);
void from_json(const Json& j, FieldState& s);

// {"N_d": int, "amps": [[re, im], ...]}
void to_json(Json& j, const DesiredState& s);
void from_json(const Json& j, DesiredState& s);

// {"omega_tau": r, "beta": [re, im], "epsilon": [re, im]}
void to_json(Json& j, const AtomStep& s);
void from_json(const Json& j, AtomStep& s);

void to_json(Json& j, const SculptOutcome& o);
void from_json(const Json& j, SculptOutcome& o);

void to_json(Json& j, const SolverOptions& o);
void from_json(const Json& j, SolverOptions& o);

void to_json(Json& j, const SolveProblem& p);
void from_json(const Json& j, SolveProblem& p);

void to_json(Json& j, const RootCandidate& c);
void from_json(const Json& j, RootCandidate& c);

void to_json(Json& j, const ScanResult& r);
void to_json(Json& j, const PhaseGrid& g);
void from_json(const Json& j, PhaseGrid& g);

/// CSV with one row per grid cell: omega_tau_1..M, P, F, R, residual_norm and
/// the root parameters in polar form. Cells without a converged root keep
/// their tau columns and leave the rest empty.
std::string scan_csv(const ScanResult& result, std::string_view header_meta);

/// CSV shaped like a rate-vs-excitation table: nbar, omega_tau_1..M, P, F, R.
std::string sweep_csv(std::span<const SweepRow> rows,
                      std::string_view header_meta);

/// CSV of (q, p, W) triples, q varying fastest; bounds and sizes go into
/// comment lines along with `header_meta`.
std::string wigner_csv(const PhaseGrid& grid, std::string_view header_meta);

/// Candidate list in the polar display format used by the CLI (4 decimals).
std::string polar_summary(std::span<const RootCandidate> candidates);

/// FNV-1a 64-bit over bytes, as fixed-width hex.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace sculpt

#endif  // SCULPT_SERIALIZE_HPP_
