// Copyright 2026 The fluidq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLUIDQ_CLI_HPP_
#define FLUIDQ_CLI_HPP_

#include <iosfwd>

namespace fluidq {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitVerifyFailed = 2;

// Entry point of the fluidq tool: solve | verify | oracle | sweep | trace.
// Output that has no --out file goes to `out`; messages go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace fluidq

#endif  // FLUIDQ_CLI_HPP_
