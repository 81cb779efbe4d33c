#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "tbctl/error.hpp"
#include "tbctl/model.hpp"

namespace tbctl {

/// Uniform grid of n_steps + 1 nodes on [t_start, t_end], in years.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 5.0;
  std::size_t n_steps = 5000;

  bool operator==(const TimeGrid&) const = default;

  void validate() const;
  std::size_t nodes() const { return n_steps + 1; }
  double step() const { return (t_end - t_start) / static_cast<double>(n_steps); }
  double time(std::size_t node) const {
    return node == n_steps ? t_end : t_start + step() * static_cast<double>(node);
  }
};

/// A point inside an RK4 step: `frac` of the way from node `left` to node
/// `left + 1`. Stages only ever land on frac 0, 1/2 or 1.
struct StepPoint {
  double t = 0.0;
  std::size_t left = 0;
  double frac = 0.0;
};

template <std::size_t D>
using Vec = std::array<double, D>;

namespace detail {

template <std::size_t D>
Vec<D> axpy(const Vec<D>& y, double a, const Vec<D>& k) {
  Vec<D> out;
  for (std::size_t j = 0; j < D; ++j) out[j] = y[j] + a * k[j];
  return out;
}

template <std::size_t D>
Vec<D> rk4_combine(const Vec<D>& y, double h, const Vec<D>& k1, const Vec<D>& k2,
                   const Vec<D>& k3, const Vec<D>& k4) {
  Vec<D> out;
  for (std::size_t j = 0; j < D; ++j) {
    out[j] = y[j] + h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  return out;
}

template <std::size_t D>
bool all_finite(const Vec<D>& y) {
  for (double v : y) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace detail

/// Classic fixed-step RK4 for y' = f(point, y), marching from t_start to
/// t_end. Node 0 of the result is `y0`.
template <std::size_t D, class Rhs>
std::vector<Vec<D>> rk4_forward(Rhs&& f, const Vec<D>& y0, const TimeGrid& grid) {
  grid.validate();
  const double h = grid.step();
  std::vector<Vec<D>> ys(grid.nodes());
  ys[0] = y0;
  for (std::size_t k = 0; k < grid.n_steps; ++k) {
    const double t = grid.time(k);
    const Vec<D>& y = ys[k];
    const StepPoint a{t, k, 0.0};
    const StepPoint m{t + 0.5 * h, k, 0.5};
    const StepPoint b{grid.time(k + 1), k, 1.0};
    const Vec<D> k1 = f(a, y);
    const Vec<D> k2 = f(m, detail::axpy(y, 0.5 * h, k1));
    const Vec<D> k3 = f(m, detail::axpy(y, 0.5 * h, k2));
    const Vec<D> k4 = f(b, detail::axpy(y, h, k3));
    ys[k + 1] = detail::rk4_combine(y, h, k1, k2, k3, k4);
    if (!detail::all_finite(ys[k + 1])) {
      throw DivergenceError(k + 1, "forward RK4 produced a non-finite value");
    }
  }
  return ys;
}

/// Classic fixed-step RK4 for y' = f(point, y), marching from t_end down to
/// t_start. The last node of the result is `y_end`.
template <std::size_t D, class Rhs>
std::vector<Vec<D>> rk4_backward(Rhs&& f, const Vec<D>& y_end, const TimeGrid& grid) {
  grid.validate();
  const double h = grid.step();
  std::vector<Vec<D>> ys(grid.nodes());
  ys[grid.n_steps] = y_end;
  for (std::size_t k = grid.n_steps; k > 0; --k) {
    const double t = grid.time(k);
    const Vec<D>& y = ys[k];
    const StepPoint a{t, k - 1, 1.0};
    const StepPoint m{t - 0.5 * h, k - 1, 0.5};
    const StepPoint b{grid.time(k - 1), k - 1, 0.0};
    const Vec<D> k1 = f(a, y);
    const Vec<D> k2 = f(m, detail::axpy(y, -0.5 * h, k1));
    const Vec<D> k3 = f(m, detail::axpy(y, -0.5 * h, k2));
    const Vec<D> k4 = f(b, detail::axpy(y, -h, k3));
    ys[k - 1] = detail::rk4_combine(y, -h, k1, k2, k3, k4);
    if (!detail::all_finite(ys[k - 1])) {
      throw DivergenceError(k - 1, "backward RK4 produced a non-finite value");
    }
  }
  return ys;
}

using Costate = std::array<double, 5>;

struct Trajectory {
  TimeGrid grid;
  std::vector<State> values;
};

struct AdjointTrajectory {
  TimeGrid grid;
  std::vector<Costate> values;
};

struct ControlGrid {
  TimeGrid grid;
  std::vector<ControlValue> values;

  static ControlGrid constant(const TimeGrid& grid, ControlValue u);

  /// Throws InvalidInput if the node count is wrong or a node leaves [0,1]^2.
  void validate() const;
};

/// Gridded inputs evaluated at a stage point by linear interpolation between
/// the two adjacent nodes.
State sample(const std::vector<State>& nodes, const StepPoint& at);
ControlValue sample(const std::vector<ControlValue>& nodes, const StepPoint& at);

using StateRhs = std::function<StateDerivative(const State&, const ControlValue&)>;
using AdjointRhs =
    std::function<Costate(const State&, const Costate&, const ControlValue&)>;

Trajectory rk4_forward(const StateRhs& f, const State& initial, const TimeGrid& grid,
                       const ControlGrid& controls);

AdjointTrajectory rk4_backward(const AdjointRhs& f, const Costate& terminal,
                               const TimeGrid& grid, const Trajectory& states,
                               const ControlGrid& controls);

}  // namespace tbctl
