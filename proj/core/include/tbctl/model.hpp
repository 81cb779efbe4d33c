#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tbctl {

/// Epidemiological rates (per year) and control efficacies of the TB model
/// with exogenous reinfection and post-exposure treatment of latents.
struct Parameters {
  double beta = 100.0;        // transmission coefficient
  double mu = 1.0 / 70.0;     // birth = death rate
  double delta = 12.0;        // rate of leaving L1
  double phi = 0.05;          // fraction of L1 exits going to I
  double omega = 0.0002;      // reactivation of persistent latents
  double omega_r = 0.00002;   // reactivation of treated individuals
  double sigma = 0.25;        // reinfection risk factor for L2
  double sigma_r = 0.25;      // reinfection risk factor for R
  double tau0 = 2.0;          // recovery under active-TB treatment
  double tau1 = 2.0;          // post-exposure recovery of L1
  double tau2 = 1.0;          // post-exposure recovery of L2
  double eps1 = 0.5;          // efficacy of u1
  double eps2 = 0.5;          // efficacy of u2
  double n_total = 30000.0;   // constant population size

  bool operator==(const Parameters&) const = default;

  /// Throws InvalidInput if any invariant is violated.
  void validate() const;
};

/// Names accepted by get_parameter / set_parameter, in declaration order.
std::span<const std::string_view> parameter_names();
bool is_parameter_name(std::string_view name);
double get_parameter(const Parameters& p, std::string_view name);
void set_parameter(Parameters& p, std::string_view name, double value);

/// Compartment populations in persons. Also used for their time derivatives.
struct State {
  double s = 0.0;
  double l1 = 0.0;
  double i = 0.0;
  double l2 = 0.0;
  double r = 0.0;

  static constexpr std::size_t kSize = 5;

  bool operator==(const State&) const = default;

  std::array<double, kSize> to_array() const { return {s, l1, i, l2, r}; }
  static State from_array(const std::array<double, kSize>& a) {
    return {a[0], a[1], a[2], a[3], a[4]};
  }
  double total() const { return s + l1 + i + l2 + r; }
  bool finite() const;
};

using StateDerivative = State;

/// Control intensities, each in [0, 1].
struct ControlValue {
  double u1 = 0.0;
  double u2 = 0.0;

  bool operator==(const ControlValue&) const = default;
  bool admissible() const { return u1 >= 0.0 && u1 <= 1.0 && u2 >= 0.0 && u2 <= 1.0; }
};

/// Right-hand side of the controlled five-compartment system.
StateDerivative rhs(const State& x, const ControlValue& u, const Parameters& p);

/// Same equations without input checks; used on the integration hot path.
StateDerivative rhs_unchecked(const State& x, const ControlValue& u, const Parameters& p);

/// The unique disease-free equilibrium (N, 0, 0, 0, 0).
State dfe(const Parameters& p);

Parameters default_parameters();

/// Initial populations (76, 37, 4, 2, 1) / 120 of N.
State initial_state(const Parameters& p);

}  // namespace tbctl
