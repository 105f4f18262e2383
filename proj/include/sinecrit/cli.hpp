// Copyright 2026 The sinecrit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef SINECRIT_CLI_HPP
#define SINECRIT_CLI_HPP

#include <string>
#include <vector>

namespace sinecrit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitNumerical = 4;

/// Runs one subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

/// "a:b:step" (inclusive), a comma list, or a single number.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace sinecrit::cli

#endif  // SINECRIT_CLI_HPP
