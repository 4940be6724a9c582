// Copyright 2026 The ppdo Authors
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

#ifndef PPDO_CLI_H_
#define PPDO_CLI_H_

#include <ostream>
#include <span>
#include <string>

namespace ppdo {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitBreach = 2;
inline constexpr int kExitUsage = 64;

// `args` includes the program name. Subcommands: analyze, run, kl, sweep.
int RunCli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ppdo

#endif  // PPDO_CLI_H_
