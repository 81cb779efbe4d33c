#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "tbctl/integrator.hpp"
#include "tbctl/model.hpp"

namespace tbctl {

/// Relative costs of the two interventions in the running cost.
struct CostWeights {
  double w1 = 500.0;
  double w2 = 50.0;

  bool operator==(const CostWeights&) const = default;
};

/// kJ penalizes I + L2; kC penalizes I only.
enum class CostKind { kJ, kC };

std::string_view to_string(CostKind kind);
CostKind cost_kind_from_string(std::string_view s);

/// Which controls the optimizer may move. A disabled control is held at 0.
struct ControlMask {
  bool u1 = true;
  bool u2 = true;

  bool operator==(const ControlMask&) const = default;
  bool none() const { return !u1 && !u2; }
};

struct SweepConfig {
  double relaxation = 0.5;   // weight of the newly characterized control
  double tolerance = 1e-4;   // relative L1 change per tracked vector
  std::size_t max_iterations = 500;
  TimeGrid grid{};
  ControlValue initial_guess{};
  ControlMask enabled{};

  bool operator==(const SweepConfig&) const = default;
  void validate() const;
};

struct SolveSummary {
  double terminal_i = 0.0;
  double terminal_l2 = 0.0;
  double terminal_i_plus_l2 = 0.0;
  double u1_upper_duration = 0.0;
  double u2_upper_duration = 0.0;
};

struct SolveResult {
  ControlGrid controls;
  Trajectory states;
  AdjointTrajectory adjoints;
  double cost = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  SolveSummary summary;
};

/// Composite-trapezoid value of the cost functional on the shared grid.
double cost(const Trajectory& states, const ControlGrid& controls,
            const CostWeights& weights, CostKind kind);

double hamiltonian(const State& x, const Costate& lambda, const ControlValue& u,
                   const Parameters& p, const CostWeights& weights, CostKind kind);

/// lambda' = -dH/dx. Under kC the L2 running-cost source is absent.
Costate adjoint_rhs(const State& x, const Costate& lambda, const ControlValue& u,
                    const Parameters& p, CostKind kind);

/// Pointwise minimizer of the Hamiltonian over [0,1]^2.
ControlValue characterize_controls(const State& x, const Costate& lambda,
                                   const Parameters& p, const CostWeights& weights);

/// Forward-backward sweep. Non-convergence is reported through
/// SolveResult::converged; integration blow-up throws DivergenceError.
SolveResult fbs_solve(const Parameters& p, const State& initial,
                      const CostWeights& weights, CostKind kind,
                      const SweepConfig& config);

/// Forward run with the given controls plus the summary metrics; adjoints are
/// left at zero.
SolveResult simulate(const Parameters& p, const State& initial,
                     const CostWeights& weights, CostKind kind,
                     const ControlGrid& controls);

inline constexpr double kUpperBoundThreshold = 0.99;

/// Total length, in years, of the grid intervals whose left node is at or
/// above `threshold`.
double upper_bound_duration(std::span<const double> track, const TimeGrid& grid,
                            double threshold = kUpperBoundThreshold);

enum class ControlChannel { kU1, kU2 };

double upper_bound_duration(const ControlGrid& controls, ControlChannel which,
                            double threshold = kUpperBoundThreshold);

}  // namespace tbctl
