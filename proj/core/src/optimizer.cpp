#include "tbctl/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tbctl/error.hpp"

namespace tbctl {
namespace {

void check_aligned(const Trajectory& states, const ControlGrid& controls) {
  if (!(states.grid == controls.grid) || states.values.size() != states.grid.nodes() ||
      controls.values.size() != controls.grid.nodes()) {
    throw InvalidInput("cost: state and control grids are not aligned");
  }
}

double running_cost(const State& x, const ControlValue& u, const CostWeights& w,
                    CostKind kind) {
  const double burden = kind == CostKind::kJ ? x.i + x.l2 : x.i;
  return burden + 0.5 * w.w1 * u.u1 * u.u1 + 0.5 * w.w2 * u.u2 * u.u2;
}

Costate adjoint_rhs_unchecked(const State& x, const Costate& l, const ControlValue& u,
                              const Parameters& p, CostKind kind) {
  const double b = p.beta / p.n_total;
  const double treat_i = p.tau0 + p.eps1 * u.u1;
  const double treat_l2 = p.tau2 + p.eps2 * u.u2;
  const double l2_source = kind == CostKind::kJ ? -1.0 : 0.0;
  Costate d;
  d[0] = l[0] * (b * x.i + p.mu) - l[1] * b * x.i;
  d[1] = l[1] * (p.delta + p.tau1 + p.mu) - l[2] * p.phi * p.delta -
         l[3] * (1.0 - p.phi) * p.delta - l[4] * p.tau1;
  d[2] = -1.0 + l[0] * b * x.s - l[1] * b * (x.s + p.sigma * x.l2 + p.sigma_r * x.r) +
         l[2] * (treat_i + p.mu) + l[3] * p.sigma * b * x.l2 -
         l[4] * (treat_i - p.sigma_r * b * x.r);
  d[3] = l2_source - l[1] * b * x.i * p.sigma - l[2] * p.omega +
         l[3] * (p.sigma * b * x.i + p.omega + treat_l2 + p.mu) - l[4] * treat_l2;
  d[4] = -l[1] * p.sigma_r * b * x.i - l[2] * p.omega_r +
         l[4] * (p.sigma_r * b * x.i + p.omega_r + p.mu);
  return d;
}

ControlValue characterize_unchecked(const State& x, const Costate& l, const Parameters& p,
                                    const CostWeights& w) {
  const double u1 = p.eps1 * x.i * (l[2] - l[4]) / w.w1;
  const double u2 = p.eps2 * x.l2 * (l[3] - l[4]) / w.w2;
  return {std::clamp(u1, 0.0, 1.0), std::clamp(u2, 0.0, 1.0)};
}

bool finite(const Costate& l) {
  return std::all_of(l.begin(), l.end(), [](double v) { return std::isfinite(v); });
}

// Sum |new - old| <= tol * Sum |new| for every tracked component.
template <std::size_t D, class Get>
bool settled(std::size_t n, Get&& get, double tol) {
  std::array<double, D> diff{};
  std::array<double, D> mag{};
  for (std::size_t k = 0; k < n; ++k) {
    const auto [now, before] = get(k);
    for (std::size_t j = 0; j < D; ++j) {
      diff[j] += std::fabs(now[j] - before[j]);
      mag[j] += std::fabs(now[j]);
    }
  }
  for (std::size_t j = 0; j < D; ++j) {
    if (diff[j] > tol * mag[j]) return false;
  }
  return true;
}

SolveSummary summarize(const Trajectory& states, const ControlGrid& controls) {
  SolveSummary s;
  const State& end = states.values.back();
  s.terminal_i = end.i;
  s.terminal_l2 = end.l2;
  s.terminal_i_plus_l2 = end.i + end.l2;
  s.u1_upper_duration = upper_bound_duration(controls, ControlChannel::kU1);
  s.u2_upper_duration = upper_bound_duration(controls, ControlChannel::kU2);
  return s;
}

void check_initial(const Parameters& p, const State& initial) {
  if (!initial.finite()) throw InvalidInput("initial state is not finite");
  if (std::fabs(initial.total() - p.n_total) > 1e-6 * p.n_total) {
    throw InvalidInput("initial state does not sum to n_total");
  }
}

}  // namespace

std::string_view to_string(CostKind kind) { return kind == CostKind::kJ ? "J" : "C"; }

CostKind cost_kind_from_string(std::string_view s) {
  if (s == "J" || s == "j") return CostKind::kJ;
  if (s == "C" || s == "c") return CostKind::kC;
  throw InvalidInput("unknown cost kind '" + std::string(s) + "' (expected J or C)");
}

void SweepConfig::validate() const {
  grid.validate();
  if (!(relaxation > 0.0 && relaxation <= 1.0)) {
    throw InvalidInput("sweep: relaxation must lie in (0,1]");
  }
  if (!(tolerance > 0.0)) throw InvalidInput("sweep: tolerance must be > 0");
  if (max_iterations < 1) throw InvalidInput("sweep: max_iterations must be >= 1");
  if (!initial_guess.admissible()) throw InvalidInput("sweep: initial guess outside [0,1]^2");
}

double cost(const Trajectory& states, const ControlGrid& controls, const CostWeights& weights,
            CostKind kind) {
  check_aligned(states, controls);
  const std::size_t n = states.grid.n_steps;
  double sum = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double g = running_cost(states.values[k], controls.values[k], weights, kind);
    sum += (k == 0 || k == n) ? 0.5 * g : g;
  }
  return sum * states.grid.step();
}

double hamiltonian(const State& x, const Costate& lambda, const ControlValue& u,
                   const Parameters& p, const CostWeights& weights, CostKind kind) {
  const std::array<double, 5> f = rhs_unchecked(x, u, p).to_array();
  double h = running_cost(x, u, weights, kind);
  for (std::size_t j = 0; j < 5; ++j) h += lambda[j] * f[j];
  return h;
}

Costate adjoint_rhs(const State& x, const Costate& lambda, const ControlValue& u,
                    const Parameters& p, CostKind kind) {
  if (!x.finite() || !finite(lambda) || !std::isfinite(u.u1) || !std::isfinite(u.u2)) {
    throw InvalidInput("adjoint_rhs: non-finite input");
  }
  return adjoint_rhs_unchecked(x, lambda, u, p, kind);
}

ControlValue characterize_controls(const State& x, const Costate& lambda, const Parameters& p,
                                   const CostWeights& weights) {
  if (!(weights.w1 > 0.0) || !(weights.w2 > 0.0)) {
    throw InvalidInput("characterize_controls: weights must be > 0");
  }
  return characterize_unchecked(x, lambda, p, weights);
}

SolveResult fbs_solve(const Parameters& p, const State& initial, const CostWeights& weights,
                      CostKind kind, const SweepConfig& config) {
  p.validate();
  config.validate();
  check_initial(p, initial);
  if (!(weights.w1 > 0.0) || !(weights.w2 > 0.0)) {
    throw InvalidInput("fbs_solve: weights must be > 0");
  }

  const TimeGrid& grid = config.grid;
  const std::size_t nodes = grid.nodes();
  const ControlMask mask = config.enabled;
  const StateRhs state_rhs = [&p](const State& x, const ControlValue& u) {
    return rhs_unchecked(x, u, p);
  };
  const AdjointRhs costate_rhs = [&p, kind](const State& x, const Costate& l,
                                            const ControlValue& u) {
    return adjoint_rhs_unchecked(x, l, u, p, kind);
  };
  const Costate terminal{};

  ControlValue guess = config.initial_guess;
  if (!mask.u1) guess.u1 = 0.0;
  if (!mask.u2) guess.u2 = 0.0;
  ControlGrid controls = ControlGrid::constant(grid, guess);
  Trajectory states = rk4_forward(state_rhs, initial, grid, controls);
  AdjointTrajectory adjoints = rk4_backward(costate_rhs, terminal, grid, states, controls);

  const double theta = config.relaxation;
  std::size_t iterations = 0;
  bool converged = false;
  while (iterations < config.max_iterations && !converged) {
    ++iterations;
    ControlGrid previous_controls = controls;
    for (std::size_t k = 0; k < nodes; ++k) {
      const ControlValue fresh =
          characterize_unchecked(states.values[k], adjoints.values[k], p, weights);
      ControlValue& u = controls.values[k];
      u.u1 = mask.u1 ? std::clamp(theta * fresh.u1 + (1.0 - theta) * u.u1, 0.0, 1.0) : 0.0;
      u.u2 = mask.u2 ? std::clamp(theta * fresh.u2 + (1.0 - theta) * u.u2, 0.0, 1.0) : 0.0;
    }
    Trajectory next_states = rk4_forward(state_rhs, initial, grid, controls);
    AdjointTrajectory next_adjoints =
        rk4_backward(costate_rhs, terminal, grid, next_states, controls);

    const double tol = config.tolerance;
    converged =
        settled<5>(nodes,
                   [&](std::size_t k) {
                     return std::pair{next_states.values[k].to_array(),
                                      states.values[k].to_array()};
                   },
                   tol) &&
        settled<5>(nodes,
                   [&](std::size_t k) {
                     return std::pair{next_adjoints.values[k], adjoints.values[k]};
                   },
                   tol) &&
        settled<2>(nodes,
                   [&](std::size_t k) {
                     const ControlValue& a = controls.values[k];
                     const ControlValue& b = previous_controls.values[k];
                     return std::pair{std::array<double, 2>{a.u1, a.u2},
                                      std::array<double, 2>{b.u1, b.u2}};
                   },
                   tol);
    states = std::move(next_states);
    adjoints = std::move(next_adjoints);
  }

  SolveResult result;
  result.cost = cost(states, controls, weights, kind);
  result.summary = summarize(states, controls);
  result.iterations = iterations;
  result.converged = converged;
  result.controls = std::move(controls);
  result.states = std::move(states);
  result.adjoints = std::move(adjoints);
  return result;
}

SolveResult simulate(const Parameters& p, const State& initial, const CostWeights& weights,
                     CostKind kind, const ControlGrid& controls) {
  p.validate();
  check_initial(p, initial);
  const StateRhs state_rhs = [&p](const State& x, const ControlValue& u) {
    return rhs_unchecked(x, u, p);
  };
  SolveResult result;
  result.states = rk4_forward(state_rhs, initial, controls.grid, controls);
  result.controls = controls;
  result.adjoints = {controls.grid, std::vector<Costate>(controls.grid.nodes(), Costate{})};
  result.cost = cost(result.states, result.controls, weights, kind);
  result.summary = summarize(result.states, result.controls);
  result.iterations = 0;
  result.converged = true;
  return result;
}

double upper_bound_duration(std::span<const double> track, const TimeGrid& grid,
                            double threshold) {
  grid.validate();
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw InvalidInput("upper_bound_duration: threshold must lie in (0,1)");
  }
  if (track.size() != grid.nodes()) {
    throw InvalidInput("upper_bound_duration: track length does not match grid");
  }
  std::size_t count = 0;
  for (std::size_t k = 0; k < grid.n_steps; ++k) {
    if (track[k] >= threshold) ++count;
  }
  return static_cast<double>(count) * grid.step();
}

double upper_bound_duration(const ControlGrid& controls, ControlChannel which,
                            double threshold) {
  std::vector<double> track;
  track.reserve(controls.values.size());
  for (const ControlValue& u : controls.values) {
    track.push_back(which == ControlChannel::kU1 ? u.u1 : u.u2);
  }
  return upper_bound_duration(track, controls.grid, threshold);
}

}  // namespace tbctl
