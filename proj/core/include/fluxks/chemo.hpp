#pragma once

#include "fluxks/grid.hpp"

namespace fluxks {

// Radial derivative of the chemoattractant, reconstructed from the cell
// density through the closed-form solution of the quasi-static equation
//   0 = Delta v - mu + u,  integral of (u - mu) over the ball = 0:
//   v_r(r) = mu r / n - r^(1-n) * int_0^r rho^(n-1) u(rho) drho.
struct VrField {
  std::vector<double> face;    // N+1; face[0] = 0, face[N] = 0 up to roundoff
  std::vector<double> center;  // N
};

struct ChemFields {
  VrField vr;
  std::vector<double> vrr;  // second derivative at centers
  double mu = 0.0;          // mean density used in the construction
};

// mass / |Omega| with the same quadrature on both sides, so the closed-form
// v_r vanishes at r = R to roundoff.
double compute_mu(const RadialGrid& grid, std::span<const double> u);

// I(faces[k]) = int_0^{faces[k]} rho^(n-1) u drho for u piecewise constant on
// cells, exact per cell.  N+1 entries, first is 0.
std::vector<double> cumulative_radial_integral(const RadialGrid& grid, std::span<const double> u);

VrField compute_vr(const RadialGrid& grid, std::span<const double> u, double mu);

// v_rr(r) = mu/n - u(r) + (n-1) r^(-n) * int_0^r rho^(n-1) u drho, at centers.
std::vector<double> compute_vrr(const RadialGrid& grid, std::span<const double> u, double mu);

// Time derivative of v_r obtained by differentiating the closed-form solution
// along the evolution:
//   v_rt = -u u_r / sqrt(u^2 + u_r^2) + chi u v_r / sqrt(1 + v_r^2).
// The degenerate quotient extends by 0 where u = u_r = 0.
std::vector<double> compute_vrt(std::span<const double> u, std::span<const double> ur,
                                std::span<const double> vr, double chi);

// mu + v_r + v_rr in one pass over the cumulative integral.
ChemFields reconstruct(const RadialGrid& grid, std::span<const double> u);

// Worst-case slack of the pointwise bounds the reconstruction must satisfy
// for nonnegative u.  All violations are <= a few ulp of the bound scale:
//   -mu R^n / n * r^(1-n)  <=  v_r  <=  mu r / n          (envelope)
//   |v_r|  <=  (max u) r / n                              (vr_bound)
//   |v_rr| <=  max u                                      (vrr_bound)
struct ChemBoundsReport {
  double envelope_violation = 0.0;   // max over faces and centers, 0 if none
  double vr_bound_violation = 0.0;
  double vrr_bound_violation = 0.0;
  double vr_at_origin = 0.0;
  double vr_at_boundary = 0.0;       // should be 0 up to roundoff
};

ChemBoundsReport check_chem_bounds(const RadialGrid& grid, std::span<const double> u,
                                   const ChemFields& cf);

}  // namespace fluxks
