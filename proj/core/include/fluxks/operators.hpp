#pragma once

#include "fluxks/chemo.hpp"
#include "fluxks/grid.hpp"

namespace fluxks {

// Centered difference at cell centers with even reflection across r = 0 and
// across r = R (ghost[-1] = u[0], ghost[N] = u[N-1]).  Exact parity for
// radially symmetric fields keeps the error O(dr^2) uniformly, including the
// first cell.
std::vector<double> gradient(const RadialGrid& grid, std::span<const double> u);

// Second centered difference with the same reflection ghosts.
std::vector<double> second_diff(const RadialGrid& grid, std::span<const double> u);

// The radial evolution, once differentiated in r, can be written as a linear
// parabolic operator acting on w = u_r:
//   w_t = A1 w_rr + A2 w_r + A3 w + A4,
// and equivalently, regrouping the zeroth-order terms,
//   w_t = A1 w_rr + A2 w_r + At3 w + At4.
// Both groupings are evaluated pointwise from (u, u_r, u_rr, v_r, v_rr).
struct ParabPoint {
  double a1, a2, a3, a4;
};
struct QarabPoint {
  double at3, at4;
};

ParabPoint parab_point(double u, double ur, double urr, double vr, double vrr, double mu,
                       double chi, int dim, double r);
QarabPoint qarab_point(double u, double ur, double vr, double vrr, double mu, double chi,
                       int dim, double r);

struct ParabCoeffs {
  std::vector<double> a1, a2, a3, a4;
};
struct QarabCoeffs {
  std::vector<double> at3, at4;
};

ParabCoeffs parab_coeffs(const RadialGrid& grid, std::span<const double> u,
                         std::span<const double> ur, std::span<const double> urr,
                         std::span<const double> vr, std::span<const double> vrr, double mu,
                         double chi);
QarabCoeffs qarab_coeffs(const RadialGrid& grid, std::span<const double> u,
                         std::span<const double> ur, std::span<const double> vr,
                         std::span<const double> vrr, double mu, double chi);

// The relative growth rate z = u_t / u satisfies
//   z_t = B1 z_rr + (B21 + B22 / r) z_r + B3 z + B4.
struct ZPoint {
  double b1, b21, b22, b3, b4;
};

ZPoint z_point(double u, double ur, double urr, double vr, double vrr, double mu, double chi,
               int dim, double r);

struct ZCoeffs {
  std::vector<double> b1, b21, b22, b3, b4;
};

ZCoeffs z_coeffs(const RadialGrid& grid, std::span<const double> u, std::span<const double> ur,
                 std::span<const double> urr, std::span<const double> vr,
                 std::span<const double> vrr, double mu, double chi);

// z expressed directly through the spatial fields (no time derivative):
//   z = u^2 u_rr / s^3 + u_r^4 / (u s^3) + (n-1)/r * u_r / s
//       - chi u_r v_r / (u q) - chi (mu - u) / q^3 - chi (n-1)/r * v_r^3 / q^3
// with s = sqrt(u^2 + u_r^2), q = sqrt(1 + v_r^2).  Requires u > 0.
double z_value(double u, double ur, double urr, double vr, double mu, double chi, int dim,
               double r);

// z over all cells from the density alone (derivatives and chemo fields
// reconstructed internally).
std::vector<double> z_from_formula(const RadialGrid& grid, std::span<const double> u,
                                   double chi);

}  // namespace fluxks
