// Copyright 2026 The EdgeGAE Authors
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

#ifndef EDGEGAE_TOOLS_CLI_HPP_
#define EDGEGAE_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace edgegae::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kNumeric = 3,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Reads `key = value` lines into flag tokens (`--key value`). Blank lines
/// and lines starting with '#' are skipped; values may be double-quoted.
std::vector<std::string> config_tokens(const std::string& path);

}  // namespace edgegae::cli

#endif  // EDGEGAE_TOOLS_CLI_HPP_
