#include "fluxks/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fluxks/operators.hpp"

namespace fluxks {

double kappa(int dim, double chi, double mu) {
  if (dim < 1) throw ValidationError("kappa: dimension must be >= 1");
  const double root27 = 3.0 * std::sqrt(3.0);
  return chi * mu + 2.0 * (dim - 1) * chi * mu / (root27 * dim);
}

double phi(double xi) {
  if (xi < 0.0) throw ValidationError("phi: argument must be nonnegative");
  const double b = 1.0 + xi;
  return xi / (b * std::sqrt(b));
}

double critical_mass(double chi) {
  if (chi > 1.0) return 1.0 / std::sqrt(chi * chi - 1.0);
  return std::numeric_limits<double>::infinity();
}

double lambda_factor(int dim, double m) {
  if (dim == 1) return m / std::sqrt(1.0 + m * m);
  return 1.0;
}

double gradient_inequality_integrand(double u, double ur, double p) {
  const double s = std::sqrt(u * u + ur * ur);
  const double up1 = std::pow(u, p - 1.0);
  return up1 * ur * ur / s + up1 * u - up1 * std::abs(ur);
}

namespace {

double weighted_integral(const RadialGrid& grid, std::span<const double> f) {
  double sum = 0.0;
  double c = 0.0;
  for (int i = 0; i < grid.ncells; ++i) {
    const double y = f[i] * grid.cell_measures[i] - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double lp_integral(const RadialGrid& grid, std::span<const double> u, double p) {
  double sum = 0.0;
  double c = 0.0;
  for (int i = 0; i < grid.ncells; ++i) {
    const double y = std::pow(u[i], p) * grid.cell_measures[i] - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

double gradient_inequality_gap(const RadialGrid& grid, std::span<const double> u,
                               std::span<const double> ur, double p) {
  if (u.size() != ur.size() || static_cast<int>(u.size()) != grid.ncells)
    throw ValidationError("gradient_inequality_gap: field sizes disagree");
  std::vector<double> integrand(grid.ncells);
  for (int i = 0; i < grid.ncells; ++i)
    integrand[i] = gradient_inequality_integrand(u[i], ur[i], p);
  return weighted_integral(grid, integrand);
}

std::vector<OdiSample> lp_ode_residual(const RadialGrid& grid,
                                       std::span<const Snapshot> trajectory, double p,
                                       double chi, double lambda) {
  if (chi * lambda >= 1.0)
    throw ValidationError("lp_ode_residual: requires chi * lambda < 1");
  if (!(p > 1.0)) throw ValidationError("lp_ode_residual: requires p > 1");
  if (trajectory.size() < 3)
    throw ValidationError("lp_ode_residual: need at least 3 snapshots");

  const size_t M = trajectory.size();
  std::vector<double> ip(M);
  for (size_t k = 0; k < M; ++k) ip[k] = lp_integral(grid, trajectory[k].u, p);

  std::vector<OdiSample> out;
  out.reserve(M - 2);
  for (size_t k = 1; k + 1 < M; ++k) {
    const double h1 = trajectory[k].t - trajectory[k - 1].t;
    const double h2 = trajectory[k + 1].t - trajectory[k].t;
    if (!(h1 > 0.0) || !(h2 > 0.0))
      throw ValidationError("lp_ode_residual: snapshot times must strictly increase");
    // three-point derivative on a possibly non-uniform stencil
    const double didt = -h2 / (h1 * (h1 + h2)) * ip[k - 1] +
                        (h2 - h1) / (h1 * h2) * ip[k] +
                        h1 / (h2 * (h1 + h2)) * ip[k + 1];
    const std::vector<double> ur = gradient(grid, trajectory[k].u);
    std::vector<double> integrand(grid.ncells);
    for (int i = 0; i < grid.ncells; ++i)
      integrand[i] = std::pow(trajectory[k].u[i], p - 1.0) * std::abs(ur[i]);
    const double grad_term = weighted_integral(grid, integrand);

    OdiSample s;
    s.t = trajectory[k].t;
    s.scale = p * p * ip[k];
    s.residual = s.scale - (didt + ip[k] + p * (p - 1.0) * (1.0 - chi * lambda) * grad_term);
    out.push_back(s);
  }
  return out;
}

DiagnosticsRecord record(const RadialGrid& grid, double t, std::span<const double> u,
                         double dt_current, DiagContext& ctx) {
  DiagnosticsRecord rec;
  rec.t = t;
  rec.mass_value = mass(grid, u);
  rec.mu = rec.mass_value / grid.domain_measure;
  rec.min_u = *std::min_element(u.begin(), u.end());
  rec.max_u = *std::max_element(u.begin(), u.end());

  const std::vector<double> ur = gradient(grid, u);
  rec.min_ur = *std::min_element(ur.begin(), ur.end());
  rec.max_abs_ur = 0.0;
  for (double g : ur) rec.max_abs_ur = std::max(rec.max_abs_ur, std::abs(g));

  const std::vector<double> z = z_from_formula(grid, u, ctx.chi);
  rec.max_z = *std::max_element(z.begin(), z.end());
  ctx.max_zplus = std::max(ctx.max_zplus, std::max(rec.max_z, 0.0));
  rec.max_zplus_history = ctx.max_zplus;

  rec.lower_envelope = ctx.min_u0 * std::exp(-ctx.kappa_rate * t);
  rec.lp2 = lp_integral(grid, u, 2.0);
  rec.lp4 = lp_integral(grid, u, 4.0);
  rec.dt_current = dt_current;
  rec.ur_over_zplus_ratio = rec.max_abs_ur / (1.0 + rec.max_zplus_history);
  return rec;
}

}  // namespace fluxks
