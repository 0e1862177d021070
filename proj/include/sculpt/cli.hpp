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
#ifndef SCULPT_CLI_HPP_
#define SCULPT_CLI_HPP_

#include <string>
#include <vector>

namespace sculpt::cli {

// Exit codes: 0 success (including empty result sets), 2 configuration
// errors, 3 numerical/physics errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitPhysics = 3;

/// Runs one invocation: args as on the command line, without the program
/// name. Subcommands: sculpt, verify, scan, table1, wigner.
int run(const std::vector<std::string>& args);

int run(int argc, const char* const* argv);

}  // namespace sculpt::cli

#endif  // SCULPT_CLI_HPP_
