#include "tbctl/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "tbctl/error.hpp"

namespace tbctl {
namespace {

constexpr std::array<std::string_view, 14> kNames = {
    "beta",  "mu",    "delta", "phi",  "omega", "omega_r", "sigma",
    "sigma_r", "tau0", "tau1", "tau2", "eps1",  "eps2",    "n_total"};

template <class P>
auto* field(P& p, std::string_view name) {
  if (name == "beta") return &p.beta;
  if (name == "mu") return &p.mu;
  if (name == "delta") return &p.delta;
  if (name == "phi") return &p.phi;
  if (name == "omega") return &p.omega;
  if (name == "omega_r") return &p.omega_r;
  if (name == "sigma") return &p.sigma;
  if (name == "sigma_r") return &p.sigma_r;
  if (name == "tau0") return &p.tau0;
  if (name == "tau1") return &p.tau1;
  if (name == "tau2") return &p.tau2;
  if (name == "eps1") return &p.eps1;
  if (name == "eps2") return &p.eps2;
  if (name == "n_total") return &p.n_total;
  throw InvalidInput("unknown parameter '" + std::string(name) + "'");
}

void require(bool ok, const char* what) {
  if (!ok) throw InvalidInput(std::string("invalid parameters: ") + what);
}

}  // namespace

void Parameters::validate() const {
  for (std::string_view n : kNames) {
    require(std::isfinite(*field(*this, n)), "non-finite value");
  }
  require(beta >= 0.0 && delta >= 0.0 && omega >= 0.0 && omega_r >= 0.0 &&
              tau0 >= 0.0 && tau1 >= 0.0 && tau2 >= 0.0,
          "rates must be >= 0");
  require(mu > 0.0, "mu must be > 0");
  require(phi >= 0.0 && phi <= 1.0, "phi must lie in [0,1]");
  require(sigma >= 0.0 && sigma <= 1.0, "sigma must lie in [0,1]");
  require(sigma_r >= 0.0 && sigma_r <= 1.0, "sigma_r must lie in [0,1]");
  require(eps1 > 0.0 && eps1 < 1.0, "eps1 must lie in (0,1)");
  require(eps2 > 0.0 && eps2 < 1.0, "eps2 must lie in (0,1)");
  require(n_total > 0.0, "n_total must be > 0");
}

std::span<const std::string_view> parameter_names() { return kNames; }

bool is_parameter_name(std::string_view name) {
  return std::find(kNames.begin(), kNames.end(), name) != kNames.end();
}

double get_parameter(const Parameters& p, std::string_view name) {
  return *field(p, name);
}

void set_parameter(Parameters& p, std::string_view name, double value) {
  *field(p, name) = value;
}

bool State::finite() const {
  return std::isfinite(s) && std::isfinite(l1) && std::isfinite(i) &&
         std::isfinite(l2) && std::isfinite(r);
}

StateDerivative rhs_unchecked(const State& x, const ControlValue& u, const Parameters& p) {
  const double force = p.beta / p.n_total * x.i;  // per-capita force of infection
  StateDerivative d;
  d.s = p.mu * p.n_total - force * x.s - p.mu * x.s;
  d.l1 = force * (x.s + p.sigma * x.l2 + p.sigma_r * x.r) -
         (p.delta + p.tau1 + p.mu) * x.l1;
  d.i = p.phi * p.delta * x.l1 + p.omega * x.l2 + p.omega_r * x.r -
        (p.tau0 + p.eps1 * u.u1 + p.mu) * x.i;
  d.l2 = (1.0 - p.phi) * p.delta * x.l1 - p.sigma * force * x.l2 -
         (p.omega + p.eps2 * u.u2 + p.tau2 + p.mu) * x.l2;
  d.r = (p.tau0 + p.eps1 * u.u1) * x.i + p.tau1 * x.l1 + (p.tau2 + p.eps2 * u.u2) * x.l2 -
        p.sigma_r * force * x.r - (p.omega_r + p.mu) * x.r;
  return d;
}

StateDerivative rhs(const State& x, const ControlValue& u, const Parameters& p) {
  if (!x.finite() || !std::isfinite(u.u1) || !std::isfinite(u.u2)) {
    throw InvalidInput("rhs: non-finite state or control");
  }
  p.validate();
  return rhs_unchecked(x, u, p);
}

State dfe(const Parameters& p) { return {p.n_total, 0.0, 0.0, 0.0, 0.0}; }

Parameters default_parameters() { return Parameters{}; }

State initial_state(const Parameters& p) {
  const double n = p.n_total;
  return {n * 76.0 / 120.0, n * 37.0 / 120.0, n * 4.0 / 120.0, n * 2.0 / 120.0,
          n * 1.0 / 120.0};
}

}  // namespace tbctl
