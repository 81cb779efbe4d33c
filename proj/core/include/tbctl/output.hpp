#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tbctl/scenario.hpp"

namespace tbctl {

inline constexpr std::string_view kTrajectoryHeader =
    "t,S,L1,I,L2,R,u1,u2,lambda1,lambda2,lambda3,lambda4,lambda5";

inline constexpr std::string_view kFractionsHeader = "t,S_frac,L1_frac,I_frac,L2_frac,R_frac";

/// One row per grid node, absolute persons.
void write_trajectory_csv(std::ostream& os, const SolveResult& result);

/// Compartments divided by N.
void write_fractions_csv(std::ostream& os, const SolveResult& result, double n_total);

/// Per-scenario summary: R0 pair, cost, iterations, convergence, terminal
/// populations and upper-bound durations.
std::string summary_json(const ScenarioOutcome& outcome, int indent = 2);

/// Full trajectory as JSON arrays keyed like the CSV columns.
std::string trajectory_json(const SolveResult& result, int indent = -1);

/// Writes the outcome's files into `out.directory` (created if missing):
///   csv:  <name>.csv, <name>_fractions.csv, <name>.summary.json
///   json: <name>.json (trajectory), <name>.summary.json
std::vector<std::filesystem::path> write_outputs(const ScenarioOutcome& outcome,
                                                 const OutputOptions& out);

}  // namespace tbctl
