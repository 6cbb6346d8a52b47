// Copyright 2026 The lexalign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEXALIGN_TOOLS_CONFIG_HPP_
#define LEXALIGN_TOOLS_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lexalign::cli {

/// Bad configuration content or flags; maps to the usage exit code.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A referenced input file is missing; maps to the data exit code.
class MissingInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ConfigValue = std::variant<bool, std::int64_t, double, std::string, std::vector<std::string>>;
/// section -> key -> value; keys before any header live in section "".
using ConfigDocument = std::map<std::string, std::map<std::string, ConfigValue>>;

/// Parses the TOML subset used by lexalign configs: `[section]` headers,
/// `key = value` with basic strings, integers, floats, booleans and
/// single-line arrays of strings, and `#` comments. Throws ConfigError.
ConfigDocument parse_config(std::string_view text);

struct PipelineConfig {
  std::filesystem::path base_dir;
  std::filesystem::path source;  // config file, empty when defaults

  std::filesystem::path lexicon;
  std::optional<std::filesystem::path> domains;
  std::map<std::string, std::filesystem::path> embeddings;
  std::map<std::string, std::filesystem::path> embeddings_ave;
  std::map<std::string, std::filesystem::path> clouds;
  std::optional<std::filesystem::path> gaps;
  std::optional<std::filesystem::path> concept_map;
  std::optional<std::filesystem::path> concept_features;
  std::optional<std::filesystem::path> coordinates;
  std::optional<std::filesystem::path> traits;
  std::optional<std::filesystem::path> norms;

  std::size_t k = 100;
  std::vector<std::string> metrics{"SNC-static"};
  std::vector<std::string> languages;
  std::string correlation = "pearson";
  std::uint64_t seed = 0;
  std::size_t min_survivors = 10;
  std::string cloud_aggregation = "min";
  bool case_fallback = false;
  std::size_t jobs = 1;
  std::filesystem::path output = "lexalign-out";

  std::size_t permutations = 100;
  std::vector<std::size_t> removed_domains{5};
  std::size_t trials = 1000;
  std::vector<std::string> shuffle_pair;

  std::size_t max_components = 10;
  std::size_t repeats = 10;
  std::string polysemy_measure = "self_sim";

  std::vector<std::string> warnings;

  /// Every configured input path, keyed by a stable label.
  std::map<std::string, std::filesystem::path> inputs() const;
  /// Throws MissingInput naming the first absent input.
  void check_inputs() const;
};

/// Reads and interprets a config file; relative paths resolve against its
/// directory. Throws ConfigError, MissingInput.
PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig interpret_config(const ConfigDocument& doc, const std::filesystem::path& base_dir);

}  // namespace lexalign::cli

#endif  // LEXALIGN_TOOLS_CONFIG_HPP_
