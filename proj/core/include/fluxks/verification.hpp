#pragma once

#include <array>

#include "fluxks/dynamics.hpp"

namespace fluxks {

// Interior max-norm residuals of the four differential identities, measured
// at the middle of three stored profiles (centered differences in time).
// "Interior" excludes 2 cells at each end: the compounded centered stencils
// are reflection-free only there, and the identities hold on the open
// interval, not at the endpoints.
struct IdentityResiduals {
  int ncells = 0;
  double snap_spacing = 0.0;
  double form_equiv = 0.0;  // conservative vs expanded right-hand side
  double parab = 0.0;       // u_r equation, first zeroth-order grouping
  double qarab = 0.0;       // u_r equation, second zeroth-order grouping
  double zeq = 0.0;         // evolution equation for z = u_t / u
};

// triple must hold >= 3 profiles at strictly increasing times; the middle
// three (around index size/2) are used.
IdentityResiduals eval_identity_residuals(const RadialGrid& grid,
                                          std::span<const Snapshot> triple, double chi);

struct ResidualReport {
  std::vector<IdentityResiduals> levels;
  // orders[l] = log2(levels[l] residual / levels[l+1] residual), one entry
  // per identity in struct field order; present only with >= 2 levels.
  std::vector<std::array<double, 4>> orders;
};

// Repeat the run at ncells * 2^l, l = 0..levels-1, with the snapshot spacing
// halved alongside, and measure every identity residual at t_mid.  Joint
// space-time refinement: each second-order error contribution shrinks 4x per
// level, so the reported orders approach 2.
ResidualReport residual_suite(const SimConfig& base, int levels, double t_mid,
                              double snap_spacing);

// Integrate the configuration, storing the profile at exactly the given
// times (strictly increasing; the step is clamped to land on each target).
std::vector<Snapshot> run_snapshots(const SimConfig& config, std::span<const double> times);

}  // namespace fluxks
