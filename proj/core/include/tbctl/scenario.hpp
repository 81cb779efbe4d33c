#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tbctl/integrator.hpp"
#include "tbctl/model.hpp"
#include "tbctl/optimizer.hpp"
#include "tbctl/reproduction.hpp"

namespace tbctl {

enum class ControlMode { kBoth, kU1Only, kU2Only, kNone };

std::string_view to_string(ControlMode mode);
ControlMode control_mode_from_string(std::string_view s);
ControlMask to_mask(ControlMode mode);

/// Solver knobs a scenario may override. Grid and control mask live on
/// ScenarioSpec itself.
struct SolverSettings {
  double relaxation = 0.5;
  double tolerance = 1e-4;
  std::size_t max_iterations = 500;
  ControlValue initial_guess{};

  bool operator==(const SolverSettings&) const = default;
};

struct ScenarioSpec {
  std::string name = "custom";
  std::string description;
  Parameters params{};
  CostWeights weights{};
  CostKind kind = CostKind::kJ;
  ControlMode controls = ControlMode::kBoth;
  TimeGrid grid{};
  SolverSettings solver{};

  bool operator==(const ScenarioSpec&) const = default;

  SweepConfig sweep_config() const;
  void validate() const;
};

enum class OutputFormat { kCsv, kJson };

OutputFormat output_format_from_string(std::string_view s);

struct OutputOptions {
  std::filesystem::path directory;
  OutputFormat format = OutputFormat::kCsv;
};

struct ScenarioOutcome {
  ScenarioSpec spec;
  R0Report r0_uncontrolled;
  R0Report r0_full_control;
  SolveResult result;
  std::vector<std::filesystem::path> files;
};

/// Thrown with the scenario name prepended when a run fails numerically.
class ScenarioFailure : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// Runs the sweep (or a plain forward simulation when every control is
/// disabled), evaluates R0(0,0) and R0(1,1) and writes outputs when `out`
/// is given.
ScenarioOutcome run_scenario(const ScenarioSpec& spec,
                             const std::optional<OutputOptions>& out = std::nullopt);

struct SweepEntry {
  double value = 0.0;
  std::optional<ScenarioOutcome> outcome;
  std::string error;

  bool ok() const { return outcome.has_value(); }
};

/// One scenario per value of `key` (any config key accepted by --set that
/// holds a number). Entries keep the order of `values` regardless of
/// `threads`; a failing entry records its error and the sweep carries on.
std::vector<SweepEntry> run_sweep(const ScenarioSpec& base, std::string_view key,
                                  const std::vector<double>& values,
                                  const std::optional<OutputOptions>& out = std::nullopt,
                                  std::size_t threads = 1);

/// Builtin scenarios, one or more per numerical experiment.
const std::vector<ScenarioSpec>& builtin_catalog();
std::optional<ScenarioSpec> find_scenario(std::string_view name);

}  // namespace tbctl
