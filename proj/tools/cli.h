// Copyright 2026 The Amsem Authors
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

#ifndef AMSEM_TOOLS_CLI_H_
#define AMSEM_TOOLS_CLI_H_

#include <iosfwd>
#include <span>
#include <string>

namespace amsem::cli {

// Runs the command line `args` (program name excluded). Returns 0 on
// success, 1 on usage or configuration errors and 2 on data errors.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace amsem::cli

#endif  // AMSEM_TOOLS_CLI_H_
