#include "tbctl/reproduction.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tbctl/error.hpp"

namespace tbctl {
namespace {

using testing::ParameterSampler;
using testing::rel_err;

Parameters with_beta(double beta) {
  Parameters p;
  p.beta = beta;
  return p;
}

TEST(R0, ReportedValuesForTableParameters) {
  EXPECT_NEAR(r0_closed_form(with_beta(100), 0, 0), 2.2, 0.05);
  EXPECT_NEAR(r0_closed_form(with_beta(100), 1, 1), 1.76, 0.05);
  EXPECT_NEAR(r0_closed_form(with_beta(200), 0, 0), 4.4, 0.05);
  EXPECT_NEAR(r0_closed_form(with_beta(250), 0, 0), 5.5, 0.05);
  EXPECT_NEAR(r0_closed_form(with_beta(250), 1, 1), 4.4, 0.05);
}

TEST(R0, WorkedExampleCrossesThreshold) {
  Parameters p;
  p.beta = 55;
  p.delta = 12;
  p.omega = 0.0002;
  p.omega_r = 0.00002;
  p.mu = 1.0 / 70;
  p.phi = 0.05;
  p.eps1 = p.eps2 = 0.5;
  p.tau0 = 2;
  p.tau1 = 2;
  p.tau2 = 1;
  EXPECT_GT(r0_closed_form(p, 0, 0), 1.21);
  EXPECT_LT(r0_closed_form(p, 1, 1), 0.97);
  EXPECT_EQ(classify(r0_closed_form(p, 0, 0)), EndemicClass::kMayBecomeEndemic);
  EXPECT_EQ(classify(r0_closed_form(p, 1, 1)), EndemicClass::kDiesOut);
}

TEST(R0, ClassifyThreshold) {
  EXPECT_EQ(classify(1.0), EndemicClass::kThreshold);
  EXPECT_EQ(classify(0.999), EndemicClass::kDiesOut);
  EXPECT_EQ(classify(1.001), EndemicClass::kMayBecomeEndemic);
  EXPECT_EQ(r0_report(Parameters{}, 0, 0, R0Method::kNextGeneration).method,
            R0Method::kNextGeneration);
}

TEST(R0, ReducesToUntreatedFormWithoutPostExposureTreatment) {
  ParameterSampler gen(21);
  for (int k = 0; k < 100; ++k) {
    Parameters p = gen.draw();
    p.tau1 = p.tau2 = 0.0;
    const double want = testing::r0_without_post_exposure(p);
    EXPECT_LE(rel_err(r0_closed_form(p, 0, 0), want), 1e-12);
    EXPECT_LE(rel_err(r0_untreated_latents(p), want), 1e-12);
  }
}

TEST(R0, NextGenerationMatchesClosedForm) {
  ParameterSampler gen(22);
  for (int k = 0; k < 1000; ++k) {
    const Parameters p = gen.draw();
    const double u1 = gen.uni(0, 1), u2 = gen.uni(0, 1);
    EXPECT_LE(rel_err(r0_ngm(p, u1, u2), r0_closed_form(p, u1, u2)), 1e-9) << "draw " << k;
  }
  EXPECT_NEAR(r0_ngm(with_beta(100), 0, 0), 2.2, 0.05);
}

TEST(R0, NextGenerationIndependentOfPopulationSize) {
  Parameters p;
  const double base = r0_ngm(p, 0.3, 0.6);
  for (double n : {1.0, 1e3, 1e7}) {
    p.n_total = n;
    EXPECT_LE(rel_err(r0_ngm(p, 0.3, 0.6), base), 1e-12);
  }
}

TEST(R0, JacobiansAtDiseaseFreeEquilibrium) {
  const Parameters p;
  const Matrix5 f = new_infection_jacobian(p);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      EXPECT_EQ(f[i][j], (i == 1 && j == 2) ? p.beta : 0.0) << i << "," << j;
    }
  }
  const Matrix5 v = transition_jacobian(p, 1, 1);
  EXPECT_EQ(v[0][0], p.mu);
  EXPECT_EQ(v[0][2], p.beta);
  EXPECT_EQ(v[2][2], p.tau0 + p.eps1 + p.mu);
  EXPECT_EQ(v[3][3], p.omega + p.eps2 + p.tau2 + p.mu);
  EXPECT_EQ(v[4][2], -p.tau0 - p.eps1);
  EXPECT_EQ(v[4][4], p.omega_r + p.mu);
}

TEST(R0, ZeroTransmissionGivesZero) {
  const Parameters p = with_beta(0.0);
  EXPECT_EQ(r0_closed_form(p, 0, 0), 0.0);
  EXPECT_EQ(r0_ngm(p, 0, 0), 0.0);
}

TEST(R0, RejectsControlsOutsideUnitBox) {
  EXPECT_THROW(r0_closed_form(Parameters{}, 1.1, 0), InvalidInput);
  EXPECT_THROW(r0_ngm(Parameters{}, 0, -0.1), InvalidInput);
}

TEST(R0, NonIncreasingInU1) {
  ParameterSampler gen(23);
  for (int k = 0; k < 1000; ++k) {
    const Parameters p = gen.draw();
    double a = gen.uni(0, 1), b = gen.uni(0, 1);
    if (a > b) std::swap(a, b);
    const double u2 = gen.uni(0, 1);
    EXPECT_LE(r0_closed_form(p, b, u2), r0_closed_form(p, a, u2));
  }
}

TEST(R0, IncreasingInBeta) {
  ParameterSampler gen(24);
  for (int k = 0; k < 1000; ++k) {
    Parameters p = gen.draw();
    const double u1 = gen.uni(0, 1), u2 = gen.uni(0, 1);
    const double lo = r0_closed_form(p, u1, u2);
    p.beta *= 1.0 + gen.uni(0.001, 1.0);
    EXPECT_GT(r0_closed_form(p, u1, u2), lo);
  }
}

// R0 is not monotone in u2; both directions occur. Parameter sets found by
// random search and pinned.
TEST(R0, U2CanRaiseOrLowerR0) {
  Parameters up;
  up.beta = 122.0046; up.mu = 0.0206; up.delta = 1.5606; up.phi = 0.1298;
  up.omega = 0.0354; up.omega_r = 0.3704; up.tau0 = 1.3524; up.tau1 = 0.8162;
  up.tau2 = 0.4224; up.eps1 = 0.8071; up.eps2 = 0.8335;
  EXPECT_NEAR(r0_closed_form(up, 0, 0), 1225.638229267893, 1e-8);
  EXPECT_NEAR(r0_closed_form(up, 0, 1), 1243.2745444852173, 1e-8);
  EXPECT_GT(r0_closed_form(up, 0, 1), r0_closed_form(up, 0, 0));

  Parameters down;
  down.beta = 215.082; down.mu = 0.0446; down.delta = 8.0956; down.phi = 0.3261;
  down.omega = 0.4924; down.omega_r = 0.0747; down.tau0 = 3.6484; down.tau1 = 3.2161;
  down.tau2 = 0.2189; down.eps1 = 0.8018; down.eps2 = 0.8527;
  EXPECT_NEAR(r0_closed_form(down, 0, 0), 123.66163180380727, 1e-9);
  EXPECT_NEAR(r0_closed_form(down, 0, 1), 115.62852167455434, 1e-9);
  EXPECT_LT(r0_closed_form(down, 0, 1), r0_closed_form(down, 0, 0));
}

TEST(Sensitivity, BetaIndexIsOne) {
  ParameterSampler gen(31);
  for (int k = 0; k < 100; ++k) {
    const Parameters p = gen.draw();
    const double u1 = gen.uni(0, 1), u2 = gen.uni(0, 1);
    EXPECT_EQ(sensitivity_beta(p, u1, u2).value, 1.0);
    EXPECT_NEAR(sensitivity_numeric(p, "beta", u1, u2).value, 1.0, 1e-6);
  }
}

TEST(Sensitivity, U1ClosedForm) {
  const Parameters p;
  EXPECT_EQ(sensitivity_u1(p, 0, 0.3).value, 0.0);
  const double want = -0.5 / (0.00002 + 2 + 1.0 / 70 + 0.5);
  const auto got = sensitivity_u1(p, 1, 0);
  EXPECT_EQ(got.parameter, "u1");
  EXPECT_NEAR(got.value, want, 1e-15);
  EXPECT_NEAR(sensitivity_numeric(p, "u1", 1, 0).value, want, 1e-6);
  EXPECT_NEAR(sensitivity_numeric(p, "u1", 0.5, 0.5).value, sensitivity_u1(p, 0.5, 0.5).value,
              1e-6);
}

TEST(Sensitivity, U1ClosedFormMatchesFiniteDifferences) {
  ParameterSampler gen(32);
  for (int k = 0; k < 100; ++k) {
    const Parameters p = gen.draw();
    const double u1 = gen.uni(0.01, 1), u2 = gen.uni(0, 1);
    EXPECT_NEAR(sensitivity_numeric(p, "u1", u1, u2).value, sensitivity_u1(p, u1, u2).value,
                1e-6);
  }
}

TEST(Sensitivity, StepRefinementBarelyMoves) {
  const Parameters p;
  for (const char* name : {"beta", "u1"}) {
    const double coarse = sensitivity_numeric(p, name, 0.5, 0.5, 1e-3).value;
    const double fine = sensitivity_numeric(p, name, 0.5, 0.5, 1e-4).value;
    EXPECT_LT(std::fabs(coarse - fine), 1e-7) << name;
  }
}

// Curved directions: the change shrinks 100x per decade of step.
TEST(Sensitivity, CentralDifferenceIsSecondOrder) {
  const Parameters p;
  for (const char* name : {"delta", "tau0", "tau1"}) {
    const double a = sensitivity_numeric(p, name, 0.5, 0.5, 1e-2).value;
    const double b = sensitivity_numeric(p, name, 0.5, 0.5, 1e-3).value;
    const double c = sensitivity_numeric(p, name, 0.5, 0.5, 1e-4).value;
    const double ratio = (a - b) / (b - c);
    EXPECT_GT(ratio, 80.0) << name;
    EXPECT_LT(ratio, 120.0) << name;
  }
}

TEST(Sensitivity, PopulationSizeHasNoInfluence) {
  EXPECT_NEAR(sensitivity_numeric(Parameters{}, "n_total", 0.2, 0.2).value, 0.0, 1e-9);
}

TEST(Sensitivity, NumericRejectsBadInput) {
  const Parameters p;
  EXPECT_THROW(sensitivity_numeric(p, "beta", 0, 0, 0.0), InvalidInput);
  EXPECT_THROW(sensitivity_numeric(p, "beta", 0, 0, -1e-5), InvalidInput);
  EXPECT_THROW(sensitivity_numeric(p, "beta", 0, 0, 1e-20), InvalidInput);  // underflow
  EXPECT_THROW(sensitivity_numeric(p, "u1", 0, 0), InvalidInput);           // value zero
  EXPECT_THROW(sensitivity_numeric(p, "nope", 0, 0), InvalidInput);
}

}  // namespace
}  // namespace tbctl
