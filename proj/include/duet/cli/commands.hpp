// Copyright 2026 The Duet Authors
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

#ifndef DUET_CLI_COMMANDS_HPP_
#define DUET_CLI_COMMANDS_HPP_

#include <string>
#include <vector>

namespace duet::cli {

// Exit codes: 0 success, 1 validation error, 2 runtime failure.
int dispatch(const std::vector<std::string>& args);
int dispatch(int argc, const char* const* argv);

// Shell-style glob over shard paths, sorted; errors when nothing matches.
std::vector<std::string> expand_glob(const std::string& pattern);

}  // namespace duet::cli

#endif  // DUET_CLI_COMMANDS_HPP_
