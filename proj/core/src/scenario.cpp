#include "tbctl/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <string>
#include <thread>

#include "tbctl/config.hpp"
#include "tbctl/error.hpp"
#include "tbctl/output.hpp"

namespace tbctl {

std::string_view to_string(ControlMode mode) {
  switch (mode) {
    case ControlMode::kBoth: return "both";
    case ControlMode::kU1Only: return "u1";
    case ControlMode::kU2Only: return "u2";
    case ControlMode::kNone: return "none";
  }
  return "both";
}

ControlMode control_mode_from_string(std::string_view s) {
  if (s == "both") return ControlMode::kBoth;
  if (s == "u1") return ControlMode::kU1Only;
  if (s == "u2") return ControlMode::kU2Only;
  if (s == "none") return ControlMode::kNone;
  throw InvalidInput("unknown control mode '" + std::string(s) +
                     "' (expected both, u1, u2 or none)");
}

ControlMask to_mask(ControlMode mode) {
  return {mode == ControlMode::kBoth || mode == ControlMode::kU1Only,
          mode == ControlMode::kBoth || mode == ControlMode::kU2Only};
}

OutputFormat output_format_from_string(std::string_view s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  throw InvalidInput("unknown output format '" + std::string(s) + "' (expected csv or json)");
}

SweepConfig ScenarioSpec::sweep_config() const {
  SweepConfig c;
  c.relaxation = solver.relaxation;
  c.tolerance = solver.tolerance;
  c.max_iterations = solver.max_iterations;
  c.initial_guess = solver.initial_guess;
  c.grid = grid;
  c.enabled = to_mask(controls);
  return c;
}

void ScenarioSpec::validate() const {
  params.validate();
  sweep_config().validate();
  if (!(weights.w1 > 0.0) || !(weights.w2 > 0.0)) {
    throw InvalidInput("scenario '" + name + "': weights must be > 0");
  }
}

ScenarioOutcome run_scenario(const ScenarioSpec& spec, const std::optional<OutputOptions>& out) {
  spec.validate();
  ScenarioOutcome outcome;
  outcome.spec = spec;
  try {
    outcome.r0_uncontrolled = r0_report(spec.params, 0.0, 0.0, R0Method::kClosedForm);
    outcome.r0_full_control = r0_report(spec.params, 1.0, 1.0, R0Method::kClosedForm);
    const State x0 = initial_state(spec.params);
    if (spec.controls == ControlMode::kNone) {
      outcome.result = simulate(spec.params, x0, spec.weights, spec.kind,
                                ControlGrid::constant(spec.grid, {}));
    } else {
      outcome.result =
          fbs_solve(spec.params, x0, spec.weights, spec.kind, spec.sweep_config());
    }
  } catch (const NumericalFailure& e) {
    throw ScenarioFailure("scenario '" + spec.name + "': " + e.what());
  }
  if (out) outcome.files = write_outputs(outcome, *out);
  return outcome;
}

std::vector<SweepEntry> run_sweep(const ScenarioSpec& base, std::string_view key,
                                  const std::vector<double>& values,
                                  const std::optional<OutputOptions>& out, std::size_t threads) {
  if (values.empty()) throw InvalidInput("sweep: need at least one value");

  // "eps1+eps2" moves several keys together.
  std::vector<std::string> keys;
  std::string label;
  for (std::size_t pos = 0; pos <= key.size();) {
    const std::size_t plus = std::min(key.find('+', pos), key.size());
    const std::string part(key.substr(pos, plus - pos));
    get_config_value(base, part);  // throws ConfigError for unknown keys
    keys.push_back(part);
    if (!label.empty()) label += '+';
    label += part.substr(part.find('.') == std::string::npos ? 0 : part.find('.') + 1);
    pos = plus + 1;
  }

  std::vector<SweepEntry> entries(values.size());
  auto run_one = [&](std::size_t idx) {
    SweepEntry& entry = entries[idx];
    entry.value = values[idx];
    try {
      ScenarioSpec spec = base;
      const std::string text = format_double(values[idx]);
      for (const std::string& k : keys) set_config_value(spec, k, text);
      spec.name = base.name + "_" + label + "-" + text;
      entry.outcome = run_scenario(spec, out);
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, values.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < values.size(); ++i) run_one(i);
    return entries;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < values.size(); i = next++) run_one(i);
    });
  }
  pool.clear();
  return entries;
}

namespace {

ScenarioSpec make(std::string name, std::string description) {
  ScenarioSpec s;
  s.name = std::move(name);
  s.description = std::move(description);
  return s;
}

std::vector<ScenarioSpec> build_catalog() {
  std::vector<ScenarioSpec> c;

  // Baseline: beta = 100, N = 30000, eps = 0.5, W1 = 500, W2 = 50.
  c.push_back(make("fig1-baseline", "I + L2 with optimal controls u1 and u2"));
  {
    auto s = make("fig1-nocontrol", "I + L2 without controls");
    s.controls = ControlMode::kNone;
    c.push_back(s);
  }
  for (double beta : {75.0, 100.0, 150.0, 175.0}) {
    auto s = make("fig4-beta-" + format_double(beta), "transmission coefficient sweep");
    s.params.beta = beta;
    c.push_back(s);
  }
  for (double n : {30000.0, 40000.0, 60000.0}) {
    auto s = make("fig5-n-" + format_double(n), "population size sweep");
    s.params.n_total = n;
    c.push_back(s);
  }
  for (double w2 : {50.0, 150.0, 250.0}) {
    auto s = make("fig6-w2-" + format_double(w2), "W1 = 500 fixed, W2 varies");
    s.weights = {500.0, w2};
    c.push_back(s);
  }
  for (double w1 : {500.0, 250.0, 150.0}) {
    auto s = make("fig7-w1-" + format_double(w1), "W2 = 50 fixed, W1 decreases");
    s.weights = {w1, 50.0};
    c.push_back(s);
  }
  for (double w : {50.0, 150.0, 250.0}) {
    auto s = make("fig8-w-" + format_double(w), "equal weights W1 = W2");
    s.weights = {w, w};
    c.push_back(s);
  }
  for (double eps : {0.25, 0.5, 0.75}) {
    auto s = make("fig9-eps-" + format_double(eps), "control efficacy sweep, eps1 = eps2");
    s.params.eps1 = eps;
    s.params.eps2 = eps;
    c.push_back(s);
  }
  {
    auto s = make("fig9-nocontrol-b200", "beta = 200 without controls: I and L2 grow");
    s.params.beta = 200.0;
    s.controls = ControlMode::kNone;
    c.push_back(s);
  }
  {
    auto s = make("fig10-b200", "beta = 200 with controls, W1 = W2 = 500");
    s.params.beta = 200.0;
    s.weights = {500.0, 500.0};
    c.push_back(s);
  }
  {
    auto s = make("fig11-b250", "beta = 250 with controls, W1 = W2 = 500");
    s.params.beta = 250.0;
    s.weights = {500.0, 500.0};
    c.push_back(s);
  }
  {
    auto s = make("fig11-b250-nocontrol", "beta = 250 without controls");
    s.params.beta = 250.0;
    s.weights = {500.0, 500.0};
    s.controls = ControlMode::kNone;
    c.push_back(s);
  }
  for (double beta : {100.0, 175.0}) {
    for (CostKind kind : {CostKind::kJ, CostKind::kC}) {
      const bool j = kind == CostKind::kJ;
      auto s = make(std::string(beta == 100.0 ? "fig12" : "fig14") + "-cost-" +
                        (j ? "j" : "c") + "-b" + format_double(beta),
                    j ? "cost J (I + L2), W1 = W2 = 500" : "cost C (I only), W1 = W2 = 500");
      s.params.beta = beta;
      s.weights = {500.0, 500.0};
      s.kind = kind;
      c.push_back(s);
    }
  }
  {
    auto s = make("fig16-u1-only", "only u1 applied");
    s.controls = ControlMode::kU1Only;
    c.push_back(s);
  }
  return c;
}

}  // namespace

const std::vector<ScenarioSpec>& builtin_catalog() {
  static const std::vector<ScenarioSpec> catalog = build_catalog();
  return catalog;
}

std::optional<ScenarioSpec> find_scenario(std::string_view name) {
  for (const ScenarioSpec& s : builtin_catalog()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

}  // namespace tbctl
