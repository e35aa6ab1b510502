#pragma once

#include "fluxks/grid.hpp"

namespace fluxks {

// Decay rate of the lower solution envelope: kappa = chi mu (1 + 2(n-1)/(3 sqrt(3) n)).
double kappa(int dim, double chi, double mu);

// phi(xi) = xi / (1 + xi)^(3/2); global max 2/(3 sqrt(3)) at xi = 2.
double phi(double xi);

// Mass threshold separating bounded from potentially unbounded regimes in the
// one-dimensional setting: 1/sqrt(chi^2 - 1) for chi > 1, +infinity otherwise.
double critical_mass(double chi);

// Gradient-term prefactor in the Lp differential inequality:
// m/sqrt(1+m^2) in one dimension, 1 otherwise.
double lambda_factor(int dim, double m);

// Pointwise integrand of the elementary inequality
//   u^(p-1) |u_r|  <=  u^(p-1) u_r^2 / sqrt(u^2 + u_r^2) + u^p,
// returned as (right side - left side) >= 0.
double gradient_inequality_integrand(double u, double ur, double p);

// Integral of the integrand above over the ball; nonnegative up to roundoff
// for positive u.
double gradient_inequality_gap(const RadialGrid& grid, std::span<const double> u,
                               std::span<const double> ur, double p);

// One stored density profile along a run.
struct Snapshot {
  double t = 0.0;
  std::vector<double> u;
};

// Residual of the Lp differential inequality
//   d/dt int u^p + int u^p + p(p-1)(1 - chi Lambda) int u^(p-1) |u_r|  <=  p^2 int u^p
// at interior snapshots (centered time differences).  residual >= -tol is the
// expected outcome with tol = 1e-6 * scale; scale = p^2 int u^p.
struct OdiSample {
  double t = 0.0;
  double residual = 0.0;
  double scale = 0.0;
};

std::vector<OdiSample> lp_ode_residual(const RadialGrid& grid,
                                       std::span<const Snapshot> trajectory, double p,
                                       double chi, double lambda);

struct DiagnosticsRecord {
  double t = 0.0;
  double mass_value = 0.0;
  double mu = 0.0;
  double min_u = 0.0;
  double max_u = 0.0;
  double min_ur = 0.0;
  double max_abs_ur = 0.0;
  double max_z = 0.0;               // sup over the grid of u_t / u
  double max_zplus_history = 0.0;   // running sup of max(z, 0) over [0, t]
  double lower_envelope = 0.0;      // (min u0) * exp(-kappa t)
  double lp2 = 0.0;                 // int u^2
  double lp4 = 0.0;                 // int u^4
  double dt_current = 0.0;
  double ur_over_zplus_ratio = 0.0; // max_abs_ur / (1 + max_zplus_history)
};

// Per-run constants plus the single piece of mutable history (running sup of
// z+).  Owned by one run; record() updates it in place.
struct DiagContext {
  double chi = 0.0;
  double kappa_rate = 0.0;
  double min_u0 = 0.0;
  double initial_mass = 0.0;
  double max_zplus = 0.0;
};

DiagnosticsRecord record(const RadialGrid& grid, double t, std::span<const double> u,
                         double dt_current, DiagContext& ctx);

}  // namespace fluxks
