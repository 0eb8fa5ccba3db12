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

#ifndef AMSEM_TOOLS_PIPELINE_H_
#define AMSEM_TOOLS_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "amsem/error.h"

namespace amsem::cli {

struct PipelineOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
};

struct ArtifactRecord {
  std::string path;  // relative to the output directory
  std::uintmax_t bytes = 0;
  std::string checksum;  // FNV-1a 64, hex
};

struct PipelineResult {
  std::filesystem::path out_dir;
  std::vector<std::string> stages;
  std::vector<ArtifactRecord> artifacts;
  std::string config_hash;
  std::uint64_t seed = 0;
};

// Runs every configured stage in order and writes manifest.json into the
// output directory. A stage failure is rethrown as ConfigError or DataError
// with the stage name in the message. Progress lines go to `log`.
PipelineResult run_pipeline(const std::filesystem::path& config_path,
                            const PipelineOverrides& overrides, std::ostream& log);

std::string file_checksum(const std::filesystem::path& path);

}  // namespace amsem::cli

#endif  // AMSEM_TOOLS_PIPELINE_H_
