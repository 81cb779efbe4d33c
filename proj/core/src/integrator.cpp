#include "tbctl/integrator.hpp"

#include <cmath>
#include <string>

namespace tbctl {

void TimeGrid::validate() const {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start)) {
    throw InvalidInput("time grid: need finite t_end > t_start");
  }
  if (n_steps < 1) throw InvalidInput("time grid: n_steps must be >= 1");
}

ControlGrid ControlGrid::constant(const TimeGrid& grid, ControlValue u) {
  grid.validate();
  return {grid, std::vector<ControlValue>(grid.nodes(), u)};
}

void ControlGrid::validate() const {
  grid.validate();
  if (values.size() != grid.nodes()) {
    throw InvalidInput("control grid: expected " + std::to_string(grid.nodes()) +
                       " nodes, got " + std::to_string(values.size()));
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!values[k].admissible()) {
      throw InvalidInput("control grid: node " + std::to_string(k) + " outside [0,1]^2");
    }
  }
}

State sample(const std::vector<State>& nodes, const StepPoint& at) {
  if (at.frac == 0.0) return nodes[at.left];
  if (at.frac == 1.0) return nodes[at.left + 1];
  const State& a = nodes[at.left];
  const State& b = nodes[at.left + 1];
  const double w = at.frac;
  return {a.s + w * (b.s - a.s), a.l1 + w * (b.l1 - a.l1), a.i + w * (b.i - a.i),
          a.l2 + w * (b.l2 - a.l2), a.r + w * (b.r - a.r)};
}

ControlValue sample(const std::vector<ControlValue>& nodes, const StepPoint& at) {
  if (at.frac == 0.0) return nodes[at.left];
  if (at.frac == 1.0) return nodes[at.left + 1];
  const ControlValue& a = nodes[at.left];
  const ControlValue& b = nodes[at.left + 1];
  const double w = at.frac;
  return {a.u1 + w * (b.u1 - a.u1), a.u2 + w * (b.u2 - a.u2)};
}

Trajectory rk4_forward(const StateRhs& f, const State& initial, const TimeGrid& grid,
                       const ControlGrid& controls) {
  grid.validate();
  if (!(controls.grid == grid)) throw InvalidInput("rk4_forward: control grid mismatch");
  controls.validate();
  if (!initial.finite()) throw InvalidInput("rk4_forward: non-finite initial state");

  auto step = [&](const StepPoint& at, const Vec<5>& y) {
    return f(State::from_array(y), sample(controls.values, at)).to_array();
  };
  const auto ys = rk4_forward<5>(step, initial.to_array(), grid);

  Trajectory out{grid, {}};
  out.values.reserve(ys.size());
  for (const auto& y : ys) out.values.push_back(State::from_array(y));
  return out;
}

AdjointTrajectory rk4_backward(const AdjointRhs& f, const Costate& terminal,
                               const TimeGrid& grid, const Trajectory& states,
                               const ControlGrid& controls) {
  grid.validate();
  if (!(controls.grid == grid) || !(states.grid == grid)) {
    throw InvalidInput("rk4_backward: state/control grid mismatch");
  }
  if (states.values.size() != grid.nodes()) {
    throw InvalidInput("rk4_backward: state trajectory has wrong node count");
  }
  controls.validate();
  if (!detail::all_finite(terminal)) {
    throw InvalidInput("rk4_backward: non-finite terminal value");
  }

  auto step = [&](const StepPoint& at, const Vec<5>& lambda) {
    return f(sample(states.values, at), lambda, sample(controls.values, at));
  };
  return {grid, rk4_backward<5>(step, terminal, grid)};
}

}  // namespace tbctl
