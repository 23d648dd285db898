// Copyright 2026 The ddkit Authors.
//
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

#ifndef DDKIT_CLI_HPP_
#define DDKIT_CLI_HPP_

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace ddkit {

// Exit codes of the dd tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Runs `dd` with `args` (args[0] is the program name). Results go to `out`,
// diagnostics to `err`.
int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err);

// Parses a merge spec such as "LSIT+UNFAM=DNEW;COREF+BRIDGE=LINKED" into a
// source -> target map. Throws std::invalid_argument on bad syntax.
std::map<std::string, std::string> ParseMergeSpec(const std::string &spec);

}  // namespace ddkit

#endif  // DDKIT_CLI_HPP_
