#include "tbctl/integrator.hpp"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "tbctl/error.hpp"
#include "tbctl/optimizer.hpp"

namespace tbctl {
namespace {

using Scalar = Vec<1>;

auto decay = [](const StepPoint&, const Scalar& y) { return Scalar{-y[0]}; };

double decay_error(std::size_t n) {
  const TimeGrid g{0.0, 1.0, n};
  const auto ys = rk4_forward<1>(decay, Scalar{1.0}, g);
  return std::fabs(ys.back()[0] - std::exp(-1.0));
}

StateRhs tb_rhs(const Parameters& p) {
  return [p](const State& x, const ControlValue& u) { return rhs(x, u, p); };
}

AdjointRhs tb_adjoint(const Parameters& p) {
  return [p](const State& x, const Costate& l, const ControlValue& u) {
    return adjoint_rhs(x, l, u, p, CostKind::kJ);
  };
}

TEST(TimeGrid, NodesAndSpacing) {
  const TimeGrid g{0.0, 5.0, 5000};
  EXPECT_EQ(g.nodes(), 5001u);
  EXPECT_DOUBLE_EQ(g.step(), 0.001);
  EXPECT_EQ(g.time(0), 0.0);
  EXPECT_EQ(g.time(5000), 5.0);
  EXPECT_THROW((TimeGrid{1.0, 1.0, 10}).validate(), InvalidInput);
  EXPECT_THROW((TimeGrid{0.0, 1.0, 0}).validate(), InvalidInput);
}

TEST(Rk4, ScalarDecayMatchesAnalyticSolution) {
  EXPECT_LT(decay_error(10), 1e-6);
}

TEST(Rk4, FourthOrderConvergence) {
  for (std::size_t n : {10u, 20u, 40u}) {
    const double ratio = decay_error(n) / decay_error(2 * n);
    EXPECT_GE(ratio, 12.0) << n;
    EXPECT_LE(ratio, 20.0) << n;
  }
}

TEST(Rk4, BackwardRecoversForwardInitialValue) {
  const TimeGrid g{0.0, 1.0, 10};
  const auto fwd = rk4_forward<1>(decay, Scalar{1.0}, g);
  const auto back = rk4_backward<1>(decay, fwd.back(), g);
  EXPECT_EQ(back.back()[0], fwd.back()[0]);
  EXPECT_NEAR(back.front()[0], 1.0, 1e-6);
}

TEST(Rk4, BackwardConstantRhsIsExact) {
  const TimeGrid g{0.0, 5.0, 500};
  auto constant = [](const StepPoint&, const Vec<2>&) { return Vec<2>{-1.0, 2.5}; };
  const auto ys = rk4_backward<2>(constant, Vec<2>{0.0, 0.0}, g);
  for (std::size_t k = 0; k < g.nodes(); ++k) {
    const double remaining = g.t_end - g.time(k);
    EXPECT_NEAR(ys[k][0], remaining, 1e-12);
    EXPECT_NEAR(ys[k][1], -2.5 * remaining, 1e-12);
  }
}

TEST(Rk4, StagePointsLandOnNodesAndMidpoints) {
  const TimeGrid g{0.0, 1.0, 4};
  std::vector<StepPoint> seen;
  auto spy = [&](const StepPoint& at, const Scalar& y) {
    seen.push_back(at);
    return Scalar{0.0 * y[0]};
  };
  rk4_forward<1>(spy, Scalar{0.0}, g);
  ASSERT_EQ(seen.size(), 16u);
  EXPECT_EQ(seen[4].left, 1u);
  EXPECT_EQ(seen[4].frac, 0.0);
  EXPECT_EQ(seen[5].frac, 0.5);
  EXPECT_DOUBLE_EQ(seen[5].t, 0.375);
  EXPECT_EQ(seen[7].frac, 1.0);

  seen.clear();
  rk4_backward<1>(spy, Scalar{0.0}, g);
  EXPECT_EQ(seen[0].left, 3u);
  EXPECT_EQ(seen[0].frac, 1.0);
  EXPECT_EQ(seen[3].frac, 0.0);
}

TEST(Rk4, DivergenceNamesTheStep) {
  const TimeGrid g{0.0, 1.0, 10};
  auto poison = [](const StepPoint& at, const Scalar&) {
    return Scalar{at.left >= 3 ? std::numeric_limits<double>::quiet_NaN() : 1.0};
  };
  try {
    rk4_forward<1>(poison, Scalar{0.0}, g);
    FAIL() << "expected DivergenceError";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.step(), 4u);
  }
}

TEST(Sample, LinearInterpolationOfControls) {
  const std::vector<ControlValue> u = {{0.0, 1.0}, {1.0, 0.5}};
  const ControlValue mid = sample(u, {0.0, 0, 0.5});
  EXPECT_EQ(mid.u1, 0.5);
  EXPECT_EQ(mid.u2, 0.75);
  EXPECT_EQ(sample(u, {0.0, 0, 1.0}), u[1]);
}

TEST(TbForward, DiseaseFreeStaysPut) {
  const Parameters p;
  const TimeGrid g{0.0, 5.0, 500};
  const auto controls = ControlGrid::constant(g, {0.7, 0.2});
  const Trajectory tr = rk4_forward(tb_rhs(p), dfe(p), g, controls);
  ASSERT_EQ(tr.values.size(), g.nodes());
  for (const State& x : tr.values) EXPECT_EQ(x, dfe(p));
}

TEST(TbForward, ConservesPopulationUncontrolled) {
  const Parameters p;  // beta = 100, N = 30000
  const TimeGrid g{};
  const Trajectory tr = rk4_forward(tb_rhs(p), initial_state(p), g, ControlGrid::constant(g, {}));
  EXPECT_EQ(tr.values.front(), initial_state(p));
  for (const State& x : tr.values) {
    EXPECT_LT(std::fabs(x.total() - p.n_total), 1e-6 * p.n_total);
  }
}

TEST(TbForward, RejectsMismatchedGrids) {
  const Parameters p;
  const TimeGrid g{0.0, 5.0, 100};
  EXPECT_THROW(rk4_forward(tb_rhs(p), initial_state(p), g,
                           ControlGrid::constant(TimeGrid{0.0, 5.0, 50}, {})),
               InvalidInput);
  ControlGrid bad = ControlGrid::constant(g, {});
  bad.values[10].u1 = 1.5;
  EXPECT_THROW(rk4_forward(tb_rhs(p), initial_state(p), g, bad), InvalidInput);
}

TEST(TbBackward, TerminalNodeIsExactlyTheTerminalValue) {
  const Parameters p;
  const TimeGrid g{0.0, 5.0, 200};
  const auto controls = ControlGrid::constant(g, {0.5, 0.5});
  const Trajectory tr = rk4_forward(tb_rhs(p), initial_state(p), g, controls);
  const AdjointTrajectory adj = rk4_backward(tb_adjoint(p), Costate{}, g, tr, controls);
  EXPECT_EQ(adj.values.back(), Costate{});
}

TEST(TbBackward, ZeroStateReducesToScalarDecay) {
  // With omega_r = 0 the lambda3 equation decouples on the zero trajectory:
  // lambda3' = -1 + a * lambda3, a = tau0 + mu, lambda3(T) = 0.
  Parameters p;
  p.omega_r = 0.0;
  const TimeGrid g{};
  const Trajectory zero{g, std::vector<State>(g.nodes())};
  const auto controls = ControlGrid::constant(g, {});
  const AdjointTrajectory adj = rk4_backward(tb_adjoint(p), Costate{}, g, zero, controls);
  const double a = p.tau0 + p.mu;
  for (std::size_t k = 0; k < g.nodes(); k += 250) {
    const double t = g.time(k);
    EXPECT_NEAR(adj.values[k][2], (1.0 - std::exp(a * (t - g.t_end))) / a, 1e-8) << t;
    EXPECT_EQ(adj.values[k][4], 0.0);
  }
}

TEST(TbBackward, ZeroStateMatchesMatrixExponential) {
  // Frozen from expm of the constant-coefficient 5x5 adjoint system at x = 0.
  const Parameters p;
  const TimeGrid g{};
  const Trajectory zero{g, std::vector<State>(g.nodes())};
  const auto controls = ControlGrid::constant(g, {});
  const AdjointTrajectory adj = rk4_backward(tb_adjoint(p), Costate{}, g, zero, controls);
  const Costate want = {0.0, 0.8177898923846305, 0.4964712798786874, 0.9796737001389284,
                        4.329134140839727e-05};
  for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(adj.values.front()[j], want[j], 1e-8) << j;
  EXPECT_NEAR(adj.values[2500][2], 0.4932410701900872, 1e-8);
}

}  // namespace
}  // namespace tbctl
