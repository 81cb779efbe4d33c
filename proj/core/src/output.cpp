#include "tbctl/output.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tbctl/config.hpp"
#include "tbctl/error.hpp"

namespace tbctl {
namespace {

using ordered_json = nlohmann::ordered_json;

void write_row(std::ostream& os, std::initializer_list<double> cells) {
  bool first = true;
  for (double v : cells) {
    if (!first) os << ',';
    os << format_double(v);
    first = false;
  }
  os << '\n';
}

ordered_json r0_json(const R0Report& r) {
  return {{"u1", r.u1},
          {"u2", r.u2},
          {"value", r.value},
          {"method", to_string(r.method)},
          {"class", to_string(r.endemic_class())}};
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << body;
  if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const SolveResult& r) {
  const TimeGrid& g = r.states.grid;
  if (r.states.values.size() != g.nodes() || r.controls.values.size() != g.nodes() ||
      r.adjoints.values.size() != g.nodes()) {
    throw InvalidInput("write_trajectory_csv: result arrays are not aligned with the grid");
  }
  os << kTrajectoryHeader << '\n';
  for (std::size_t k = 0; k < g.nodes(); ++k) {
    const State& x = r.states.values[k];
    const ControlValue& u = r.controls.values[k];
    const Costate& l = r.adjoints.values[k];
    write_row(os, {g.time(k), x.s, x.l1, x.i, x.l2, x.r, u.u1, u.u2, l[0], l[1], l[2], l[3],
                   l[4]});
  }
}

void write_fractions_csv(std::ostream& os, const SolveResult& r, double n_total) {
  const TimeGrid& g = r.states.grid;
  os << kFractionsHeader << '\n';
  for (std::size_t k = 0; k < r.states.values.size(); ++k) {
    const State& x = r.states.values[k];
    write_row(os, {g.time(k), x.s / n_total, x.l1 / n_total, x.i / n_total, x.l2 / n_total,
                   x.r / n_total});
  }
}

std::string summary_json(const ScenarioOutcome& o, int indent) {
  const SolveResult& r = o.result;
  const State& end = r.states.values.back();
  const double n = o.spec.params.n_total;
  ordered_json j;
  j["scenario"] = o.spec.name;
  j["description"] = o.spec.description;
  j["cost_kind"] = to_string(o.spec.kind);
  j["controls"] = to_string(o.spec.controls);
  j["r0"] = {{"uncontrolled", r0_json(o.r0_uncontrolled)},
             {"full_control", r0_json(o.r0_full_control)}};
  j["cost"] = r.cost;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["terminal"] = {{"S", end.s},   {"L1", end.l1}, {"I", end.i},
                   {"L2", end.l2}, {"R", end.r},   {"I_plus_L2", r.summary.terminal_i_plus_l2},
                   {"I_plus_L2_fraction", r.summary.terminal_i_plus_l2 / n}};
  j["upper_bound_duration"] = {{"threshold", kUpperBoundThreshold},
                               {"u1", r.summary.u1_upper_duration},
                               {"u2", r.summary.u2_upper_duration}};
  j["grid"] = {{"t_start", r.states.grid.t_start},
               {"t_end", r.states.grid.t_end},
               {"n_steps", r.states.grid.n_steps}};
  return j.dump(indent) + "\n";
}

std::string trajectory_json(const SolveResult& r, int indent) {
  static constexpr std::string_view kColumns[] = {"t",  "S",  "L1", "I", "L2",
                                                  "R",  "u1", "u2", "lambda1", "lambda2",
                                                  "lambda3", "lambda4", "lambda5"};
  std::vector<std::vector<double>> cols(std::size(kColumns));
  const TimeGrid& g = r.states.grid;
  for (std::size_t k = 0; k < r.states.values.size(); ++k) {
    const State& x = r.states.values[k];
    const ControlValue& u = r.controls.values[k];
    const Costate& l = r.adjoints.values[k];
    const double row[] = {g.time(k), x.s, x.l1, x.i, x.l2, x.r, u.u1,
                          u.u2,      l[0], l[1], l[2], l[3], l[4]};
    for (std::size_t c = 0; c < cols.size(); ++c) cols[c].push_back(row[c]);
  }
  ordered_json j;
  for (std::size_t c = 0; c < cols.size(); ++c) j[std::string(kColumns[c])] = cols[c];
  return j.dump(indent) + "\n";
}

std::vector<std::filesystem::path> write_outputs(const ScenarioOutcome& o,
                                                 const OutputOptions& out) {
  namespace fs = std::filesystem;
  fs::create_directories(out.directory);
  std::vector<fs::path> files;
  const std::string& name = o.spec.name;

  if (out.format == OutputFormat::kCsv) {
    std::ostringstream traj;
    write_trajectory_csv(traj, o.result);
    files.push_back(out.directory / (name + ".csv"));
    write_file(files.back(), traj.str());

    std::ostringstream frac;
    write_fractions_csv(frac, o.result, o.spec.params.n_total);
    files.push_back(out.directory / (name + "_fractions.csv"));
    write_file(files.back(), frac.str());
  } else {
    files.push_back(out.directory / (name + ".json"));
    write_file(files.back(), trajectory_json(o.result));
  }
  files.push_back(out.directory / (name + ".summary.json"));
  write_file(files.back(), summary_json(o));
  return files;
}

}  // namespace tbctl
