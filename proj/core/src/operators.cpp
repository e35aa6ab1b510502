#include "fluxks/operators.hpp"

#include <cmath>

namespace fluxks {

std::vector<double> gradient(const RadialGrid& grid, std::span<const double> u) {
  const int N = grid.ncells;
  if (static_cast<int>(u.size()) != N)
    throw ValidationError("gradient: field size does not match grid");
  const double inv2dr = 1.0 / (2.0 * grid.dr);
  std::vector<double> out(N);
  for (int i = 0; i < N; ++i) {
    const double left = (i == 0) ? u[0] : u[i - 1];
    const double right = (i == N - 1) ? u[N - 1] : u[i + 1];
    out[i] = (right - left) * inv2dr;
  }
  return out;
}

std::vector<double> second_diff(const RadialGrid& grid, std::span<const double> u) {
  const int N = grid.ncells;
  if (static_cast<int>(u.size()) != N)
    throw ValidationError("second_diff: field size does not match grid");
  const double invdr2 = 1.0 / (grid.dr * grid.dr);
  std::vector<double> out(N);
  for (int i = 0; i < N; ++i) {
    const double left = (i == 0) ? u[0] : u[i - 1];
    const double right = (i == N - 1) ? u[N - 1] : u[i + 1];
    out[i] = (right - 2.0 * u[i] + left) * invdr2;
  }
  return out;
}

ParabPoint parab_point(double u, double ur, double urr, double vr, double vrr, double mu,
                       double chi, int dim, double r) {
  const double s2 = u * u + ur * ur;
  const double s = std::sqrt(s2);
  const double s3 = s * s2;
  const double s5 = s3 * s2;
  const double q2 = 1.0 + vr * vr;
  const double q = std::sqrt(q2);
  const double q3 = q * q2;
  const double q5 = q3 * q2;
  const double g = (dim - 1) / r;
  const double g2 = (dim - 1) / (r * r);

  ParabPoint p;
  p.a1 = u * u * u / s3;
  p.a2 = 3.0 * u * u * ipow(ur, 3) / s5 - 3.0 * u * u * u * ur * urr / s5 +
         4.0 * u * u * ipow(ur, 3) / s5 + ipow(ur, 5) / s5 + g * u * u * u / s3 -
         chi * vr / q;
  p.a3 = -3.0 * u * ipow(ur, 4) / s5 - g2 * u / s - chi * mu / q3 + 2.0 * chi * u / q3 -
         chi * vrr / q + chi * vr * vr * vrr / q3 - chi * g * ipow(vr, 3) / q3;
  p.a4 = g * ipow(ur, 4) / s3 + 3.0 * chi * mu * u * vr * vrr / q5 -
         3.0 * chi * u * u * vr * vrr / q5 + chi * g2 * u * ipow(vr, 3) / q3 -
         3.0 * chi * g * u * vr * vr * vrr / q5;
  return p;
}

QarabPoint qarab_point(double u, double ur, double vr, double vrr, double mu, double chi,
                       int dim, double r) {
  const double s2 = u * u + ur * ur;
  const double s = std::sqrt(s2);
  const double s3 = s * s2;
  const double s5 = s3 * s2;
  const double q2 = 1.0 + vr * vr;
  const double q = std::sqrt(q2);
  const double q3 = q * q2;
  const double q5 = q3 * q2;
  const double g = (dim - 1) / r;
  const double g2 = (dim - 1) / (r * r);

  QarabPoint p;
  p.at3 = g * ipow(ur, 3) / s3 - chi * mu / q3 + 2.0 * chi * u / q3 - chi * vrr / q +
          chi * vr * vr * vrr / q3 - chi * g * ipow(vr, 3) / q3;
  // The u v_r^3 term carries 1/r^2, matching its counterpart in the first
  // grouping: the two zeroth-order regroupings differ exactly by
  // (a3 - at3) * u_r, which forces it.
  p.at4 = -3.0 * u * ipow(ur, 5) / s5 - g2 * u * ur / s +
          3.0 * chi * mu * u * vr * vrr / q5 - 3.0 * chi * u * u * vr * vrr / q5 +
          chi * g2 * u * ipow(vr, 3) / q3 - 3.0 * chi * g * u * vr * vr * vrr / q5;
  return p;
}

ZPoint z_point(double u, double ur, double urr, double vr, double vrr, double mu, double chi,
               int dim, double r) {
  (void)vrr;
  const double s2 = u * u + ur * ur;
  const double s = std::sqrt(s2);
  const double s3 = s * s2;
  const double s5 = s3 * s2;
  const double q2 = 1.0 + vr * vr;
  const double q = std::sqrt(q2);
  const double q3 = q * q2;
  const double q4 = q2 * q2;
  const double q5 = q3 * q2;
  const double q6 = q4 * q2;
  const double g = (dim - 1) / r;

  ZPoint p;
  p.b1 = u * u * u / s3;
  p.b21 = 2.0 * u * u * ur / s3 - 3.0 * u * u * u * ur * urr / s5 + 4.0 * ipow(ur, 3) / s3 -
          3.0 * ipow(ur, 5) / s5 - chi * vr / q;
  p.b22 = (dim - 1) * u * u * u / s3;
  p.b3 = chi * u / q3;
  p.b4 = -3.0 * chi * u * (mu - u) * ur * vr / (s * q5) +
         3.0 * chi * chi * u * (mu - u) * vr * vr / q6 + chi * ur * ur / (s * q3) -
         chi * chi * ur * vr / q4 + 3.0 * chi * g * u * ur * vr * vr / (s * q5) -
         3.0 * chi * chi * g * u * ipow(vr, 3) / q6;
  return p;
}

ParabCoeffs parab_coeffs(const RadialGrid& grid, std::span<const double> u,
                         std::span<const double> ur, std::span<const double> urr,
                         std::span<const double> vr, std::span<const double> vrr, double mu,
                         double chi) {
  const int N = grid.ncells;
  ParabCoeffs c;
  c.a1.resize(N);
  c.a2.resize(N);
  c.a3.resize(N);
  c.a4.resize(N);
  for (int i = 0; i < N; ++i) {
    const ParabPoint p =
        parab_point(u[i], ur[i], urr[i], vr[i], vrr[i], mu, chi, grid.dim, grid.centers[i]);
    c.a1[i] = p.a1;
    c.a2[i] = p.a2;
    c.a3[i] = p.a3;
    c.a4[i] = p.a4;
  }
  return c;
}

QarabCoeffs qarab_coeffs(const RadialGrid& grid, std::span<const double> u,
                         std::span<const double> ur, std::span<const double> vr,
                         std::span<const double> vrr, double mu, double chi) {
  const int N = grid.ncells;
  QarabCoeffs c;
  c.at3.resize(N);
  c.at4.resize(N);
  for (int i = 0; i < N; ++i) {
    const QarabPoint p =
        qarab_point(u[i], ur[i], vr[i], vrr[i], mu, chi, grid.dim, grid.centers[i]);
    c.at3[i] = p.at3;
    c.at4[i] = p.at4;
  }
  return c;
}

ZCoeffs z_coeffs(const RadialGrid& grid, std::span<const double> u, std::span<const double> ur,
                 std::span<const double> urr, std::span<const double> vr,
                 std::span<const double> vrr, double mu, double chi) {
  const int N = grid.ncells;
  ZCoeffs c;
  c.b1.resize(N);
  c.b21.resize(N);
  c.b22.resize(N);
  c.b3.resize(N);
  c.b4.resize(N);
  for (int i = 0; i < N; ++i) {
    const ZPoint p =
        z_point(u[i], ur[i], urr[i], vr[i], vrr[i], mu, chi, grid.dim, grid.centers[i]);
    c.b1[i] = p.b1;
    c.b21[i] = p.b21;
    c.b22[i] = p.b22;
    c.b3[i] = p.b3;
    c.b4[i] = p.b4;
  }
  return c;
}

double z_value(double u, double ur, double urr, double vr, double mu, double chi, int dim,
               double r) {
  const double s2 = u * u + ur * ur;
  const double s = std::sqrt(s2);
  const double s3 = s * s2;
  const double q2 = 1.0 + vr * vr;
  const double q = std::sqrt(q2);
  const double q3 = q * q2;
  const double g = (dim - 1) / r;

  return u * u * urr / s3 + ipow(ur, 4) / (u * s3) + g * ur / s - chi * ur * vr / (u * q) -
         chi * (mu - u) / q3 - chi * g * ipow(vr, 3) / q3;
}

std::vector<double> z_from_formula(const RadialGrid& grid, std::span<const double> u,
                                   double chi) {
  const ChemFields cf = reconstruct(grid, u);
  const std::vector<double> ur = gradient(grid, u);
  const std::vector<double> urr = second_diff(grid, u);
  std::vector<double> out(grid.ncells);
  for (int i = 0; i < grid.ncells; ++i)
    out[i] = z_value(u[i], ur[i], urr[i], cf.vr.center[i], cf.mu, chi, grid.dim,
                     grid.centers[i]);
  return out;
}

}  // namespace fluxks
