#include "fluxks/chemo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fluxks {

namespace {

void require_size(const RadialGrid& grid, std::span<const double> u, const char* who) {
  if (static_cast<int>(u.size()) != grid.ncells)
    throw ValidationError(std::string(who) + ": field size does not match grid");
}

}  // namespace

double compute_mu(const RadialGrid& grid, std::span<const double> u) {
  return mass(grid, u) / grid.domain_measure;
}

std::vector<double> cumulative_radial_integral(const RadialGrid& grid,
                                               std::span<const double> u) {
  require_size(grid, u, "cumulative_radial_integral");
  std::vector<double> acc(grid.ncells + 1);
  acc[0] = 0.0;
  double sum = 0.0;
  double c = 0.0;  // compensation keeps v_r(R) at roundoff for large N
  for (int i = 0; i < grid.ncells; ++i) {
    const double y = u[i] * grid.radial_weights[i] - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
    acc[i + 1] = sum;
  }
  return acc;
}

VrField compute_vr(const RadialGrid& grid, std::span<const double> u, double mu) {
  require_size(grid, u, "compute_vr");
  const int n = grid.dim;
  const int N = grid.ncells;
  const std::vector<double> acc = cumulative_radial_integral(grid, u);

  VrField out;
  out.face.resize(N + 1);
  out.center.resize(N);

  out.face[0] = 0.0;  // limit value; the formula is 0/0 there for n >= 2
  for (int k = 1; k <= N; ++k) {
    const double r = grid.faces[k];
    out.face[k] = mu * r / n - acc[k] / ipow(r, n - 1);
  }
  for (int i = 0; i < N; ++i) {
    const double r = grid.centers[i];
    const double acc_c = acc[i] + u[i] * (ipow(r, n) - ipow(grid.faces[i], n)) / n;
    out.center[i] = mu * r / n - acc_c / ipow(r, n - 1);
  }
  return out;
}

std::vector<double> compute_vrr(const RadialGrid& grid, std::span<const double> u, double mu) {
  require_size(grid, u, "compute_vrr");
  const int n = grid.dim;
  const int N = grid.ncells;
  const std::vector<double> acc = cumulative_radial_integral(grid, u);

  std::vector<double> out(N);
  for (int i = 0; i < N; ++i) {
    const double r = grid.centers[i];
    const double acc_c = acc[i] + u[i] * (ipow(r, n) - ipow(grid.faces[i], n)) / n;
    out[i] = mu / n - u[i] + (n - 1) * acc_c / ipow(r, n);
  }
  return out;
}

std::vector<double> compute_vrt(std::span<const double> u, std::span<const double> ur,
                                std::span<const double> vr, double chi) {
  if (u.size() != ur.size() || u.size() != vr.size())
    throw ValidationError("compute_vrt: field sizes disagree");
  std::vector<double> out(u.size());
  for (size_t i = 0; i < u.size(); ++i) {
    const double s2 = u[i] * u[i] + ur[i] * ur[i];
    const double diff = s2 > 0.0 ? u[i] * ur[i] / std::sqrt(s2) : 0.0;
    out[i] = -diff + chi * u[i] * vr[i] / std::sqrt(1.0 + vr[i] * vr[i]);
  }
  return out;
}

ChemFields reconstruct(const RadialGrid& grid, std::span<const double> u) {
  ChemFields cf;
  cf.mu = compute_mu(grid, u);
  cf.vr = compute_vr(grid, u, cf.mu);
  cf.vrr = compute_vrr(grid, u, cf.mu);
  return cf;
}

ChemBoundsReport check_chem_bounds(const RadialGrid& grid, std::span<const double> u,
                                   const ChemFields& cf) {
  require_size(grid, u, "check_chem_bounds");
  const int n = grid.dim;
  const int N = grid.ncells;
  const double max_u = *std::max_element(u.begin(), u.end());
  const double lower_coef = -cf.mu * ipow(grid.radius, n) / n;

  ChemBoundsReport rep;
  rep.vr_at_origin = cf.vr.face[0];
  rep.vr_at_boundary = cf.vr.face[N];

  auto visit = [&](double r, double vr) {
    const double upper = cf.mu * r / n;
    const double lower = lower_coef * ipow(1.0 / r, n - 1);
    rep.envelope_violation =
        std::max({rep.envelope_violation, vr - upper, lower - vr});
    rep.vr_bound_violation =
        std::max(rep.vr_bound_violation, std::abs(vr) - max_u * r / n);
  };
  for (int k = 1; k <= N; ++k) visit(grid.faces[k], cf.vr.face[k]);
  for (int i = 0; i < N; ++i) visit(grid.centers[i], cf.vr.center[i]);
  for (int i = 0; i < N; ++i)
    rep.vrr_bound_violation = std::max(rep.vrr_bound_violation, std::abs(cf.vrr[i]) - max_u);

  rep.envelope_violation = std::max(rep.envelope_violation, 0.0);
  rep.vr_bound_violation = std::max(rep.vr_bound_violation, 0.0);
  rep.vrr_bound_violation = std::max(rep.vrr_bound_violation, 0.0);
  return rep;
}

}  // namespace fluxks
