// Copyright 2026 The debias Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DEBIAS_TOOLS_CLI_HPP_
#define DEBIAS_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace debias::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// args[0] is the program name. Subcommands: denoise, deconvolve, debias,
// bregman-iter, sweep, bias-mc, phantom, selftest. Prints one JSON summary
// line to `out`; diagnostics and usage go to `err`.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err);

struct SelftestCase {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast oracle checks (closed forms against the solvers, adjoints, ICB brute
// force, singular vectors).
std::vector<SelftestCase> run_selftest();

}  // namespace debias::cli

#endif  // DEBIAS_TOOLS_CLI_HPP_
