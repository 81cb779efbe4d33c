// tbctl: scenario runner for the controlled TB model.
//
//   tbctl catalog
//   tbctl solve --scenario fig1-baseline --out results/
//   tbctl simulate --config my.ini --set beta=200
//   tbctl r0 --set beta=250
//   tbctl sensitivity --u1 0.5
//   tbctl sweep --scenario fig1-baseline --param beta --values 75,100,150,175
//
// Exit codes: 0 success, 1 usage/config error, 2 non-convergence under
// --strict, 3 numerical failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "tbctl/config.hpp"
#include "tbctl/error.hpp"
#include "tbctl/output.hpp"
#include "tbctl/reproduction.hpp"
#include "tbctl/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
  std::string config;
  std::string scenario;
  std::string out;
  std::size_t steps = 0;
  std::vector<std::string> sets;
  std::string format = "csv";
  bool strict = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "Scenario config file")->check(CLI::ExistingFile);
  cmd->add_option("--scenario", o.scenario, "Builtin scenario name (see `catalog`)");
  cmd->add_option("--out", o.out, "Output directory for CSV/JSON files");
  cmd->add_option("--steps", o.steps, "Grid steps over [t_start, t_end]")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--set", o.sets, "Override a config key: key=value (repeatable)");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--strict", o.strict, "Exit with code 2 if the sweep does not converge");
}

tbctl::ScenarioSpec resolve_spec(const CommonOptions& o) {
  tbctl::ScenarioSpec spec;
  if (!o.config.empty() && !o.scenario.empty()) {
    throw tbctl::ConfigError("--config and --scenario are mutually exclusive");
  }
  if (!o.config.empty()) {
    spec = tbctl::load_config(o.config);
  } else if (!o.scenario.empty()) {
    auto found = tbctl::find_scenario(o.scenario);
    if (!found) throw tbctl::ConfigError("unknown scenario '" + o.scenario + "'");
    spec = *found;
  } else {
    spec = *tbctl::find_scenario("fig1-baseline");
  }
  for (const std::string& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw tbctl::ConfigError("--set expects key=value, got '" + kv + "'");
    }
    tbctl::set_config_value(spec, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.steps > 0) spec.grid.n_steps = o.steps;
  spec.validate();
  return spec;
}

std::optional<tbctl::OutputOptions> output_options(const CommonOptions& o) {
  if (o.out.empty()) return std::nullopt;
  return tbctl::OutputOptions{o.out, tbctl::output_format_from_string(o.format)};
}

void print_outcome(const tbctl::ScenarioOutcome& oc, const CommonOptions& o) {
  if (o.format == "json") {
    std::cout << tbctl::summary_json(oc);
    return;
  }
  const auto& r = oc.result;
  std::printf("scenario            %s\n", oc.spec.name.c_str());
  std::printf("R0(0,0)             %.6g (%s)\n", oc.r0_uncontrolled.value,
              std::string(to_string(oc.r0_uncontrolled.endemic_class())).c_str());
  std::printf("R0(1,1)             %.6g (%s)\n", oc.r0_full_control.value,
              std::string(to_string(oc.r0_full_control.endemic_class())).c_str());
  std::printf("cost (%s)            %.8g\n", std::string(to_string(oc.spec.kind)).c_str(),
              r.cost);
  std::printf("iterations          %zu%s\n", r.iterations, r.converged ? "" : " (NOT converged)");
  std::printf("terminal I + L2     %.6g\n", r.summary.terminal_i_plus_l2);
  std::printf("u1 at upper bound   %.4g yr\n", r.summary.u1_upper_duration);
  std::printf("u2 at upper bound   %.4g yr\n", r.summary.u2_upper_duration);
  for (const auto& f : oc.files) std::printf("wrote               %s\n", f.string().c_str());
}

int run_solve(const CommonOptions& o, bool plain_simulation) {
  tbctl::ScenarioSpec spec = resolve_spec(o);
  if (plain_simulation) spec.controls = tbctl::ControlMode::kNone;
  const auto oc = tbctl::run_scenario(spec, output_options(o));
  print_outcome(oc, o);
  if (o.strict && !oc.result.converged) return kExitNotConverged;
  return kExitOk;
}

int run_r0(const CommonOptions& o, const std::vector<double>& u1s,
           const std::vector<double>& u2s) {
  const tbctl::ScenarioSpec spec = resolve_spec(o);
  std::vector<std::pair<double, double>> points;
  if (u1s.empty() && u2s.empty()) {
    points = {{0.0, 0.0}, {1.0, 1.0}};
  } else {
    const double u1 = u1s.empty() ? 0.0 : u1s.front();
    const double u2 = u2s.empty() ? 0.0 : u2s.front();
    points = {{u1, u2}};
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (auto [u1, u2] : points) {
    const double cf = tbctl::r0_closed_form(spec.params, u1, u2);
    const double ngm = tbctl::r0_ngm(spec.params, u1, u2);
    const auto cls = std::string(to_string(tbctl::classify(cf)));
    if (o.format == "json") {
      arr.push_back({{"u1", u1}, {"u2", u2}, {"closed_form", cf}, {"ngm", ngm},
                     {"class", cls}});
    } else {
      std::printf("R0(%g,%g) = %.10g  [ngm %.10g]  %s\n", u1, u2, cf, ngm, cls.c_str());
    }
  }
  if (o.format == "json") std::cout << arr.dump(2) << '\n';
  return kExitOk;
}

int run_sensitivity(const CommonOptions& o, double u1, double u2, double step) {
  const tbctl::ScenarioSpec spec = resolve_spec(o);
  std::vector<std::string> names;
  for (auto n : tbctl::parameter_names()) names.emplace_back(n);
  names.emplace_back("u1");
  names.emplace_back("u2");

  const auto beta = tbctl::sensitivity_beta(spec.params, u1, u2);
  const auto cu1 = tbctl::sensitivity_u1(spec.params, u1, u2);
  nlohmann::ordered_json j;
  j["closed_form"] = {{"beta", beta.value}, {"u1", cu1.value}};
  nlohmann::ordered_json num = nlohmann::ordered_json::object();
  if (o.format != "json") {
    std::printf("closed form: beta %.10g  u1 %.10g\n", beta.value, cu1.value);
    std::printf("%-10s %s\n", "parameter", "index (central difference)");
  }
  for (const std::string& n : names) {
    try {
      const auto s = tbctl::sensitivity_numeric(spec.params, n, u1, u2, step);
      num[n] = s.value;
      if (o.format != "json") std::printf("%-10s %.10g\n", n.c_str(), s.value);
    } catch (const tbctl::InvalidInput&) {
      num[n] = nullptr;  // parameter at zero: relative step undefined
      if (o.format != "json") std::printf("%-10s n/a\n", n.c_str());
    }
  }
  j["numeric"] = num;
  if (o.format == "json") std::cout << j.dump(2) << '\n';
  return kExitOk;
}

int run_sweep(const CommonOptions& o, const std::string& param, const std::vector<double>& values,
              std::size_t threads) {
  const tbctl::ScenarioSpec base = resolve_spec(o);
  const auto entries = tbctl::run_sweep(base, param, values, output_options(o), threads);
  int code = kExitOk;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    if (!e.ok()) {
      std::fprintf(stderr, "%s = %g failed: %s\n", param.c_str(), e.value, e.error.c_str());
      code = kExitNumerical;
      continue;
    }
    const auto& r = e.outcome->result;
    if (o.format == "json") {
      arr.push_back(nlohmann::ordered_json::parse(tbctl::summary_json(*e.outcome)));
    } else {
      std::printf("%s=%-10g R0(0,0) %-8.4g I+L2(T) %-10.5g u1@ub %-6.3g u2@ub %-6.3g iters %zu%s\n",
                  param.c_str(), e.value, e.outcome->r0_uncontrolled.value,
                  r.summary.terminal_i_plus_l2, r.summary.u1_upper_duration,
                  r.summary.u2_upper_duration, r.iterations, r.converged ? "" : " NOT converged");
    }
    if (o.strict && !r.converged && code == kExitOk) code = kExitNotConverged;
  }
  if (o.format == "json") std::cout << arr.dump(2) << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal control of a TB model with reinfection and post-exposure treatment"};
  app.require_subcommand(1);

  CommonOptions common;

  auto* catalog = app.add_subcommand("catalog", "List builtin scenarios");
  auto* simulate = app.add_subcommand("simulate", "Forward simulation without controls");
  auto* solve = app.add_subcommand("solve", "Optimal controls by forward-backward sweep");
  auto* r0 = app.add_subcommand("r0", "Basic reproduction number");
  auto* sens = app.add_subcommand("sensitivity", "Sensitivity indices of R0");
  auto* sweep = app.add_subcommand("sweep", "Solve once per value of one config key");
  for (auto* cmd : {simulate, solve, r0, sens, sweep}) add_common(cmd, common);
  catalog->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  std::vector<double> r0_u1, r0_u2;
  r0->add_option("--u1", r0_u1, "u1 in [0,1]")->expected(1);
  r0->add_option("--u2", r0_u2, "u2 in [0,1]")->expected(1);

  double sens_u1 = 0.5, sens_u2 = 0.5, sens_step = tbctl::kDefaultRelativeStep;
  sens->add_option("--u1", sens_u1, "u1 in [0,1]")->capture_default_str();
  sens->add_option("--u2", sens_u2, "u2 in [0,1]")->capture_default_str();
  sens->add_option("--step", sens_step, "Relative finite-difference step")->capture_default_str();

  std::string sweep_param;
  std::vector<double> sweep_values;
  std::size_t sweep_threads = 1;
  sweep->add_option("--param", sweep_param, "Config key to vary; join keys with '+'")
      ->required();
  sweep->add_option("--values", sweep_values, "Comma-separated values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--threads", sweep_threads, "Scenarios run in parallel")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (catalog->parsed()) {
      if (common.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& s : tbctl::builtin_catalog()) {
          arr.push_back({{"name", s.name}, {"description", s.description}});
        }
        std::cout << arr.dump(2) << '\n';
      } else {
        for (const auto& s : tbctl::builtin_catalog()) {
          std::printf("%-22s %s\n", s.name.c_str(), s.description.c_str());
        }
      }
      return kExitOk;
    }
    if (simulate->parsed()) return run_solve(common, true);
    if (solve->parsed()) return run_solve(common, false);
    if (r0->parsed()) return run_r0(common, r0_u1, r0_u2);
    if (sens->parsed()) return run_sensitivity(common, sens_u1, sens_u2, sens_step);
    if (sweep->parsed()) return run_sweep(common, sweep_param, sweep_values, sweep_threads);
  } catch (const tbctl::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitUsage;
  } catch (const tbctl::InvalidInput& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kExitUsage;
  } catch (const tbctl::NumericalFailure& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitUsage;
}
