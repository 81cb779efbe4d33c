#include "tbctl/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "tbctl/error.hpp"

namespace tbctl {
namespace {

std::vector<ConfigKey> build_keys() {
  std::vector<ConfigKey> keys = {
      {"scenario", "name"}, {"scenario", "description"},
      {"scenario", "cost"}, {"scenario", "controls"},
  };
  for (std::string_view n : parameter_names()) keys.push_back({"parameters", n});
  keys.insert(keys.end(), {{"weights", "w1"},
                           {"weights", "w2"},
                           {"grid", "t_start"},
                           {"grid", "t_end"},
                           {"grid", "n_steps"},
                           {"sweep", "relaxation"},
                           {"sweep", "tolerance"},
                           {"sweep", "max_iterations"},
                           {"sweep", "initial_u1"},
                           {"sweep", "initial_u2"}});
  return keys;
}

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Resolves a bare or dotted key to its canonical entry.
const ConfigKey& resolve(std::string_view key) {
  std::string_view section;
  std::string_view bare = key;
  if (const auto dot = key.find('.'); dot != std::string_view::npos) {
    section = key.substr(0, dot);
    bare = key.substr(dot + 1);
  }
  for (const ConfigKey& k : config_keys()) {
    if (k.key == bare && (section.empty() || k.section == section)) return k;
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

double parse_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError("key '" + std::string(key) + "': expected a number, got '" +
                      std::string(v) + "'");
  }
  return out;
}

std::size_t parse_count(std::string_view key, std::string_view v) {
  std::size_t out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + std::string(key) + "': expected a non-negative integer, got '" +
                      std::string(v) + "'");
  }
  return out;
}

bool valid_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
  }) && s != "." && s != "..";
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = build_keys();
  return keys;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw InvalidInput("format_double: conversion failed");
  return std::string(buf, ptr);
}

void set_config_value(ScenarioSpec& spec, std::string_view key, std::string_view raw) {
  const ConfigKey& k = resolve(key);
  const std::string_view v = trim(raw);
  const std::string_view name = k.key;
  try {
    if (k.section == "scenario") {
      if (name == "name") {
        if (!valid_name(v)) {
          throw ConfigError("key 'name': use letters, digits, '-', '_' or '.'");
        }
        spec.name = std::string(v);
      } else if (name == "description") {
        spec.description = std::string(v);
      } else if (name == "cost") {
        spec.kind = cost_kind_from_string(v);
      } else {
        spec.controls = control_mode_from_string(v);
      }
    } else if (k.section == "parameters") {
      set_parameter(spec.params, name, parse_double(name, v));
    } else if (name == "w1") {
      spec.weights.w1 = parse_double(name, v);
    } else if (name == "w2") {
      spec.weights.w2 = parse_double(name, v);
    } else if (name == "t_start") {
      spec.grid.t_start = parse_double(name, v);
    } else if (name == "t_end") {
      spec.grid.t_end = parse_double(name, v);
    } else if (name == "n_steps") {
      spec.grid.n_steps = parse_count(name, v);
    } else if (name == "relaxation") {
      spec.solver.relaxation = parse_double(name, v);
    } else if (name == "tolerance") {
      spec.solver.tolerance = parse_double(name, v);
    } else if (name == "max_iterations") {
      spec.solver.max_iterations = parse_count(name, v);
    } else if (name == "initial_u1") {
      spec.solver.initial_guess.u1 = parse_double(name, v);
    } else if (name == "initial_u2") {
      spec.solver.initial_guess.u2 = parse_double(name, v);
    }
  } catch (const InvalidInput& e) {
    throw ConfigError("key '" + std::string(name) + "': " + e.what());
  }
}

std::string get_config_value(const ScenarioSpec& spec, std::string_view key) {
  const ConfigKey& k = resolve(key);
  const std::string_view name = k.key;
  if (name == "name") return spec.name;
  if (name == "description") return spec.description;
  if (name == "cost") return std::string(to_string(spec.kind));
  if (name == "controls") return std::string(to_string(spec.controls));
  if (k.section == "parameters") return format_double(get_parameter(spec.params, name));
  if (name == "w1") return format_double(spec.weights.w1);
  if (name == "w2") return format_double(spec.weights.w2);
  if (name == "t_start") return format_double(spec.grid.t_start);
  if (name == "t_end") return format_double(spec.grid.t_end);
  if (name == "n_steps") return std::to_string(spec.grid.n_steps);
  if (name == "relaxation") return format_double(spec.solver.relaxation);
  if (name == "tolerance") return format_double(spec.solver.tolerance);
  if (name == "max_iterations") return std::to_string(spec.solver.max_iterations);
  if (name == "initial_u1") return format_double(spec.solver.initial_guess.u1);
  return format_double(spec.solver.initial_guess.u2);
}

ScenarioSpec parse_config(std::string_view text, std::string_view source) {
  ScenarioSpec spec;
  std::string section;
  std::set<std::string_view> seen;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ConfigError(std::string(source) + ":" + std::to_string(line_no) + ": " + msg);
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      const auto& keys = config_keys();
      if (std::none_of(keys.begin(), keys.end(),
                       [&](const ConfigKey& k) { return k.section == section; })) {
        fail("unknown section '" + section + "'");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty()) fail("key '" + std::string(key) + "' appears before any section");

    const ConfigKey* entry = nullptr;
    try {
      entry = &resolve(key);
    } catch (const ConfigError& e) {
      fail(e.what());
    }
    if (entry->section != section) {
      fail("key '" + std::string(key) + "' belongs in section [" +
           std::string(entry->section) + "], not [" + section + "]");
    }
    if (!seen.insert(entry->key).second) fail("duplicate key '" + std::string(key) + "'");
    try {
      set_config_value(spec, entry->key, value);
    } catch (const ConfigError& e) {
      fail(e.what());
    }
  }
  return spec;
}

ScenarioSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string format_config(const ScenarioSpec& spec) {
  std::ostringstream os;
  std::string_view section;
  for (const ConfigKey& k : config_keys()) {
    if (k.section != section) {
      if (!section.empty()) os << '\n';
      section = k.section;
      os << '[' << section << "]\n";
    }
    os << k.key << " = " << get_config_value(spec, k.key) << '\n';
  }
  return os.str();
}

void save_config(const ScenarioSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write config file '" + path.string() + "'");
  out << format_config(spec);
}

}  // namespace tbctl
