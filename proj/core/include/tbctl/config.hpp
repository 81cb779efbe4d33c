#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tbctl/scenario.hpp"

namespace tbctl {

// Scenario files are INI-like:
//
//   # comment
//   [scenario]
//   name = fig1-baseline
//   [parameters]
//   beta = 100
//
// Sections: scenario, parameters, weights, grid, sweep. Keys are unique across
// sections, so `--set beta=150` and `--set parameters.beta=150` are the same.
// Keys absent from the file keep their defaults. Unknown keys, unknown
// sections, duplicates and malformed values are errors.

struct ConfigKey {
  std::string_view section;
  std::string_view key;
};

const std::vector<ConfigKey>& config_keys();

/// Applies one `key = value` assignment. `key` may be bare or
/// `section.key`. Throws ConfigError naming the key.
void set_config_value(ScenarioSpec& spec, std::string_view key, std::string_view value);

/// Current value of a key, formatted as it would be written.
std::string get_config_value(const ScenarioSpec& spec, std::string_view key);

ScenarioSpec parse_config(std::string_view text, std::string_view source = "<string>");
ScenarioSpec load_config(const std::filesystem::path& path);

/// Every key of every section; reading the text back yields an equal spec.
std::string format_config(const ScenarioSpec& spec);
void save_config(const ScenarioSpec& spec, const std::filesystem::path& path);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace tbctl
