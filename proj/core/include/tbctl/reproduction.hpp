#pragma once

#include <array>
#include <string>
#include <string_view>

#include "tbctl/model.hpp"

namespace tbctl {

enum class R0Method { kClosedForm, kNextGeneration };

enum class EndemicClass { kDiesOut, kThreshold, kMayBecomeEndemic };

std::string_view to_string(R0Method m);
std::string_view to_string(EndemicClass c);

/// R0 < 1 dies out, R0 > 1 may become endemic, exactly 1 is the threshold.
EndemicClass classify(double r0);

struct R0Report {
  double value = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
  R0Method method = R0Method::kClosedForm;

  EndemicClass endemic_class() const { return classify(value); }
};

/// Explicit basic reproduction number R0(u1, u2), valid for arbitrary
/// post-exposure rates tau1 and tau2.
double r0_closed_form(const Parameters& p, double u1, double u2);

/// R0 without post-exposure treatment (tau1 = tau2 = 0) and without controls.
/// Kept as an independent check of the general expression.
double r0_untreated_latents(const Parameters& p);

R0Report r0_report(const Parameters& p, double u1, double u2, R0Method method);

using Matrix5 = std::array<std::array<double, 5>, 5>;

/// Jacobians of the new-infection (F) and transition (V) terms evaluated at
/// the disease-free equilibrium. Rows and columns are ordered (S, L1, I, L2, R).
Matrix5 new_infection_jacobian(const Parameters& p);
Matrix5 transition_jacobian(const Parameters& p, double u1, double u2);

/// Spectral radius of F * V^-1 at the DFE, computed numerically (LU inverse
/// and power iteration). Throws NumericalFailure if V is singular or the
/// iteration does not settle.
double r0_ngm(const Parameters& p, double u1, double u2);

struct SensitivityIndex {
  std::string parameter;
  double value = 0.0;
};

/// Normalized forward sensitivity of R0 with respect to beta; identically 1.
SensitivityIndex sensitivity_beta(const Parameters& p, double u1, double u2);

/// -eps1*u1 / (omega_r + tau0 + mu + eps1*u1).
SensitivityIndex sensitivity_u1(const Parameters& p, double u1, double u2);

inline constexpr double kDefaultRelativeStep = 1e-5;

/// Central-difference estimate of (dR0/dp) * p / |R0| with an absolute step of
/// `relative_step * |p|`. `name` is a Parameters field name, "u1" or "u2".
SensitivityIndex sensitivity_numeric(const Parameters& p, std::string_view name,
                                     double u1, double u2,
                                     double relative_step = kDefaultRelativeStep);

}  // namespace tbctl
