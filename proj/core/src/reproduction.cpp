#include "tbctl/reproduction.hpp"

#include <cmath>
#include <string>

#include "tbctl/error.hpp"

namespace tbctl {
namespace {

void check_controls(double u1, double u2) {
  if (!(u1 >= 0.0 && u1 <= 1.0 && u2 >= 0.0 && u2 <= 1.0)) {
    throw InvalidInput("R0: controls must lie in [0,1]");
  }
}

double closed_form(const Parameters& p, double u1, double u2) {
  const double treated_l2 = p.tau2 + p.eps2 * u2;
  const double l2_exit = p.omega + p.mu + treated_l2;
  const double num =
      p.omega_r * l2_exit * p.tau1 +
      p.delta * ((p.omega + p.phi * p.mu) * (p.omega_r + p.mu) +
                 (p.omega_r + p.phi * p.mu) * treated_l2);
  const double den =
      (p.omega_r + p.tau0 + p.mu + p.eps1 * u1) * (p.delta + p.tau1 + p.mu) * l2_exit;
  return num / den * p.beta / p.mu;
}

// Jacobians of F and V at an arbitrary state; only the DFE is used.
void jacobians(const Parameters& p, const State& x, double u1, double u2, Matrix5& jf,
               Matrix5& jv) {
  const double b = p.beta / p.n_total;
  jf = Matrix5{};
  jf[1] = {b * x.i, 0.0, b * (x.s + p.sigma * x.l2 + p.sigma_r * x.r), b * x.i * p.sigma,
           b * x.i * p.sigma_r};

  jv = Matrix5{};
  jv[0] = {b * x.i + p.mu, 0.0, b * x.s, 0.0, 0.0};
  jv[1] = {0.0, p.delta + p.tau1 + p.mu, 0.0, 0.0, 0.0};
  jv[2] = {0.0, -p.phi * p.delta, p.tau0 + p.eps1 * u1 + p.mu, -p.omega, -p.omega_r};
  jv[3] = {0.0, -(1.0 - p.phi) * p.delta, p.sigma * b * x.l2,
           b * x.i * p.sigma + p.omega + p.eps2 * u2 + p.tau2 + p.mu, 0.0};
  jv[4] = {0.0, -p.tau1, -p.tau0 - p.eps1 * u1 + p.sigma_r * b * x.r, -p.tau2 - p.eps2 * u2,
           b * x.i * p.sigma_r + p.omega_r + p.mu};
}

// Gauss-Jordan with partial pivoting.
Matrix5 inverse(Matrix5 a) {
  Matrix5 inv{};
  for (std::size_t k = 0; k < 5; ++k) inv[k][k] = 1.0;
  double scale = 0.0;
  for (const auto& row : a) {
    for (double v : row) scale = std::fmax(scale, std::fabs(v));
  }
  for (std::size_t col = 0; col < 5; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < 5; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    }
    if (!(std::fabs(a[piv][col]) > 1e-14 * scale)) {
      throw NumericalFailure("next-generation: transition Jacobian is singular");
    }
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const double d = a[col][col];
    for (std::size_t c = 0; c < 5; ++c) {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (std::size_t r = 0; r < 5; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < 5; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

Matrix5 multiply(const Matrix5& a, const Matrix5& b) {
  Matrix5 c{};
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t k = 0; k < 5; ++k) {
      if (a[i][k] == 0.0) continue;
      for (std::size_t j = 0; j < 5; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

double inf_norm(const std::array<double, 5>& v) {
  double m = 0.0;
  for (double x : v) m = std::fmax(m, std::fabs(x));
  return m;
}

double spectral_radius(const Matrix5& k) {
  constexpr double kTol = 1e-12;
  constexpr int kMaxIter = 10000;
  // Two starts so a start vector orthogonal to the dominant direction cannot
  // masquerade as a zero radius.
  const std::array<std::array<double, 5>, 2> starts = {
      std::array<double, 5>{1.0, 1.0, 1.0, 1.0, 1.0},
      std::array<double, 5>{1.0, -0.5, 0.25, -0.125, 0.0625}};
  double best = 0.0;
  for (const auto& start : starts) {
    std::array<double, 5> v = start;
    double lambda = 0.0;
    bool settled = false;
    for (int it = 0; it < kMaxIter; ++it) {
      std::array<double, 5> w{};
      for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) w[i] += k[i][j] * v[j];
      }
      const double norm = inf_norm(w);
      if (norm == 0.0) {
        lambda = 0.0;
        settled = true;
        break;
      }
      const double next = norm / inf_norm(v);
      for (double& x : w) x /= norm;
      v = w;
      if (it > 0 && std::fabs(next - lambda) <= kTol * std::fabs(next)) {
        lambda = next;
        settled = true;
        break;
      }
      lambda = next;
    }
    if (!settled) throw NumericalFailure("next-generation: power iteration did not settle");
    best = std::fmax(best, lambda);
  }
  return best;
}

}  // namespace

std::string_view to_string(R0Method m) {
  return m == R0Method::kClosedForm ? "closed-form" : "ngm";
}

std::string_view to_string(EndemicClass c) {
  switch (c) {
    case EndemicClass::kDiesOut: return "dies out";
    case EndemicClass::kThreshold: return "threshold";
    case EndemicClass::kMayBecomeEndemic: return "may become endemic";
  }
  return "unknown";
}

EndemicClass classify(double r0) {
  if (r0 < 1.0) return EndemicClass::kDiesOut;
  if (r0 > 1.0) return EndemicClass::kMayBecomeEndemic;
  return EndemicClass::kThreshold;
}

double r0_closed_form(const Parameters& p, double u1, double u2) {
  p.validate();
  check_controls(u1, u2);
  return closed_form(p, u1, u2);
}

double r0_untreated_latents(const Parameters& p) {
  p.validate();
  return p.delta * (p.omega + p.phi * p.mu) * (p.omega_r + p.mu) /
         ((p.omega_r + p.tau0 + p.mu) * (p.delta + p.mu) * (p.omega + p.mu)) * p.beta / p.mu;
}

R0Report r0_report(const Parameters& p, double u1, double u2, R0Method method) {
  const double v =
      method == R0Method::kClosedForm ? r0_closed_form(p, u1, u2) : r0_ngm(p, u1, u2);
  return {v, u1, u2, method};
}

Matrix5 new_infection_jacobian(const Parameters& p) {
  p.validate();
  Matrix5 jf, jv;
  jacobians(p, dfe(p), 0.0, 0.0, jf, jv);
  return jf;
}

Matrix5 transition_jacobian(const Parameters& p, double u1, double u2) {
  p.validate();
  check_controls(u1, u2);
  Matrix5 jf, jv;
  jacobians(p, dfe(p), u1, u2, jf, jv);
  return jv;
}

double r0_ngm(const Parameters& p, double u1, double u2) {
  p.validate();
  check_controls(u1, u2);
  Matrix5 jf, jv;
  jacobians(p, dfe(p), u1, u2, jf, jv);
  return spectral_radius(multiply(jf, inverse(jv)));
}

SensitivityIndex sensitivity_beta(const Parameters& p, double u1, double u2) {
  p.validate();
  check_controls(u1, u2);
  // R0 is linear in beta with no other beta dependence.
  return {"beta", 1.0};
}

SensitivityIndex sensitivity_u1(const Parameters& p, double u1, double u2) {
  p.validate();
  check_controls(u1, u2);
  const double a = p.eps1 * u1;
  return {"u1", -a / (p.omega_r + p.tau0 + p.mu + a)};
}

SensitivityIndex sensitivity_numeric(const Parameters& p, std::string_view name, double u1,
                                     double u2, double relative_step) {
  p.validate();
  check_controls(u1, u2);
  if (!(relative_step > 0.0) || !std::isfinite(relative_step)) {
    throw InvalidInput("sensitivity: step must be a positive finite number");
  }

  const bool is_u1 = name == "u1";
  const bool is_u2 = name == "u2";
  if (!is_u1 && !is_u2 && !is_parameter_name(name)) {
    throw InvalidInput("sensitivity: unknown parameter '" + std::string(name) + "'");
  }
  const double x = is_u1 ? u1 : is_u2 ? u2 : get_parameter(p, name);
  if (x == 0.0) {
    throw InvalidInput("sensitivity: relative step undefined for '" + std::string(name) +
                       "' = 0");
  }
  const double h = relative_step * std::fabs(x);
  if (x + h == x || x - h == x) {
    throw InvalidInput("sensitivity: step underflows for '" + std::string(name) + "'");
  }

  auto eval = [&](double v) {
    Parameters q = p;
    double a = u1;
    double b = u2;
    if (is_u1) {
      a = v;
    } else if (is_u2) {
      b = v;
    } else {
      set_parameter(q, name, v);
    }
    return closed_form(q, a, b);
  };

  const double r0 = closed_form(p, u1, u2);
  const double slope = (eval(x + h) - eval(x - h)) / (2.0 * h);
  return {std::string(name), slope * x / std::fabs(r0)};
}

}  // namespace tbctl
