#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace fluxks {

// Thrown for malformed user input (grid parameters, configs, initial data).
// Anything else escaping the library is a genuine internal failure.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Uniform cell-centered discretization of the ball B_R(0) in the radial
// coordinate.  Cell i covers [faces[i], faces[i+1]] and carries one sample at
// centers[i]; r = 0 is a face, never a sample point, so 1/r factors stay
// finite on every stencil.
struct RadialGrid {
  int dim = 0;          // spatial dimension n >= 1
  double radius = 0.0;  // R > 0
  int ncells = 0;       // N >= 2
  double dr = 0.0;      // R / N

  std::vector<double> faces;    // N+1 entries, faces[0] = 0, faces[N] = R exactly
  std::vector<double> centers;  // N entries, strictly positive

  double omega_n = 0.0;         // surface measure of the unit sphere in R^n
  double domain_measure = 0.0;  // |B_R| = omega_n R^n / n

  // cell_measures[i] = omega_n (faces[i+1]^n - faces[i]^n) / n: the exact
  // n-volume of the shell.  radial_weights strips the omega_n factor; it is
  // the exact integral of rho^(n-1) across the cell, so quadrature of
  // center samples is exact for fields constant on cells.
  std::vector<double> cell_measures;   // N
  std::vector<double> radial_weights;  // N
  std::vector<double> face_areas;      // N+1, omega_n faces[i]^(n-1)
};

RadialGrid make_grid(int dim, double radius, int ncells);

// Surface measure of the unit sphere in R^n (2, 2*pi, 4*pi for n = 1,2,3).
double unit_sphere_measure(int dim);

// sum_i u[i] * cell_measures[i], compensated so the reduction stays at a few
// ulp even for N in the thousands.  Exact for fields constant on cells.
double mass(const RadialGrid& grid, std::span<const double> u);

// x^p for small nonnegative integer p, by repeated multiplication.
double ipow(double x, int p);

double kahan_sum(std::span<const double> values);

}  // namespace fluxks
