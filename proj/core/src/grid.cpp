#include "fluxks/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fluxks {

double ipow(double x, int p) {
  double y = 1.0;
  for (int k = 0; k < p; ++k) y *= x;
  return y;
}

double kahan_sum(std::span<const double> values) {
  double sum = 0.0;
  double c = 0.0;
  for (double v : values) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double unit_sphere_measure(int dim) {
  switch (dim) {
    case 1:
      return 2.0;
    case 2:
      return 2.0 * std::numbers::pi;
    case 3:
      return 4.0 * std::numbers::pi;
    default:
      return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
  }
}

RadialGrid make_grid(int dim, double radius, int ncells) {
  if (dim < 1)
    throw ValidationError("make_grid: dimension must be >= 1, got " + std::to_string(dim));
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw ValidationError("make_grid: radius must be positive and finite");
  if (ncells < 2)
    throw ValidationError("make_grid: need at least 2 cells, got " + std::to_string(ncells));

  RadialGrid g;
  g.dim = dim;
  g.radius = radius;
  g.ncells = ncells;
  g.dr = radius / ncells;
  g.omega_n = unit_sphere_measure(dim);
  g.domain_measure = g.omega_n * ipow(radius, dim) / dim;

  g.faces.resize(ncells + 1);
  for (int i = 0; i <= ncells; ++i)
    g.faces[i] = radius * (static_cast<double>(i) / ncells);  // endpoints land exactly

  g.centers.resize(ncells);
  for (int i = 0; i < ncells; ++i) g.centers[i] = radius * ((i + 0.5) / ncells);

  g.cell_measures.resize(ncells);
  g.radial_weights.resize(ncells);
  for (int i = 0; i < ncells; ++i) {
    const double w = (ipow(g.faces[i + 1], dim) - ipow(g.faces[i], dim)) / dim;
    g.radial_weights[i] = w;
    g.cell_measures[i] = g.omega_n * w;
  }

  g.face_areas.resize(ncells + 1);
  for (int i = 0; i <= ncells; ++i) g.face_areas[i] = g.omega_n * ipow(g.faces[i], dim - 1);

  return g;
}

double mass(const RadialGrid& grid, std::span<const double> u) {
  if (static_cast<int>(u.size()) != grid.ncells)
    throw ValidationError("mass: field has " + std::to_string(u.size()) + " entries, grid has " +
                          std::to_string(grid.ncells) + " cells");
  double sum = 0.0;
  double c = 0.0;
  for (int i = 0; i < grid.ncells; ++i) {
    const double y = u[i] * grid.cell_measures[i] - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace fluxks
