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


#ifndef SINECRIT_MANIFEST_HPP
#define SINECRIT_MANIFEST_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sinecrit::cli {

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Record of one CLI invocation. The digest covers the subcommand, the
/// parameters, the seed and the version, so two runs with the same digest
/// write identical CSV and JSON bytes whatever the worker count.
struct RunManifest {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> parameters;  ///< declaration order
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::string version;
  double wall_clock_seconds = 0.0;
  std::map<std::string, std::string> outputs;  ///< file name -> sha256

  std::string digest() const;
  std::string to_json() const;
  static RunManifest from_json(std::string_view text);
  static RunManifest load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

}  // namespace sinecrit::cli

#endif  // SINECRIT_MANIFEST_HPP
