#include "fluxks/verification.hpp"

#include <algorithm>
#include <cmath>

#include "fluxks/operators.hpp"

namespace fluxks {

namespace {

// f'(t_mid) from values at t_mid - h1, t_mid, t_mid + h2 (second order).
struct TimeStencil {
  double cm, c0, cp;
};

TimeStencil time_stencil(double h1, double h2) {
  return {-h2 / (h1 * (h1 + h2)), (h2 - h1) / (h1 * h2), h1 / (h2 * (h1 + h2))};
}

double interior_max(std::span<const double> f, int ncells) {
  double m = 0.0;
  for (int i = 2; i <= ncells - 3; ++i) m = std::max(m, std::abs(f[i]));
  return m;
}

}  // namespace

IdentityResiduals eval_identity_residuals(const RadialGrid& grid,
                                          std::span<const Snapshot> triple, double chi) {
  if (triple.size() < 3)
    throw ValidationError("eval_identity_residuals: need at least 3 profiles");
  const size_t k = triple.size() / 2;
  const Snapshot& sm = triple[k - 1];
  const Snapshot& s0 = triple[k];
  const Snapshot& sp = triple[k + 1];
  const double h1 = s0.t - sm.t;
  const double h2 = sp.t - s0.t;
  if (!(h1 > 0.0) || !(h2 > 0.0))
    throw ValidationError("eval_identity_residuals: profile times must strictly increase");
  const TimeStencil ts = time_stencil(h1, h2);
  const int N = grid.ncells;

  IdentityResiduals out;
  out.ncells = N;
  out.snap_spacing = 0.5 * (h1 + h2);

  const ChemFields cf = reconstruct(grid, s0.u);
  const std::vector<double> ur = gradient(grid, s0.u);
  const std::vector<double> urr = second_diff(grid, s0.u);

  // (i) the two forms of the right-hand side at the middle profile
  {
    const std::vector<double> div = rhs_divergence(grid, s0.u, chi);
    const std::vector<double> exp = rhs_expanded(grid, s0.u, chi);
    std::vector<double> d(N);
    for (int i = 0; i < N; ++i) d[i] = div[i] - exp[i];
    out.form_equiv = interior_max(d, N);
  }

  // (ii)/(iii) the linear parabolic equations satisfied by w = u_r
  {
    const std::vector<double> wm = gradient(grid, sm.u);
    const std::vector<double> w0 = gradient(grid, s0.u);
    const std::vector<double> wp = gradient(grid, sp.u);
    const std::vector<double> wr = gradient(grid, w0);
    const std::vector<double> wrr = second_diff(grid, w0);

    const ParabCoeffs pc =
        parab_coeffs(grid, s0.u, ur, urr, cf.vr.center, cf.vrr, cf.mu, chi);
    const QarabCoeffs qc = qarab_coeffs(grid, s0.u, ur, cf.vr.center, cf.vrr, cf.mu, chi);

    std::vector<double> r2(N), r3(N);
    for (int i = 0; i < N; ++i) {
      const double wt = ts.cm * wm[i] + ts.c0 * w0[i] + ts.cp * wp[i];
      const double common = pc.a1[i] * wrr[i] + pc.a2[i] * wr[i];
      r2[i] = wt - (common + pc.a3[i] * w0[i] + pc.a4[i]);
      r3[i] = wt - (common + qc.at3[i] * w0[i] + qc.at4[i]);
    }
    out.parab = interior_max(r2, N);
    out.qarab = interior_max(r3, N);
  }

  // (iv) the equation for z = u_t / u
  {
    const std::vector<double> zm = z_from_formula(grid, sm.u, chi);
    const std::vector<double> z0 = z_from_formula(grid, s0.u, chi);
    const std::vector<double> zp = z_from_formula(grid, sp.u, chi);
    const std::vector<double> zr = gradient(grid, z0);
    const std::vector<double> zrr = second_diff(grid, z0);
    const ZCoeffs zc = z_coeffs(grid, s0.u, ur, urr, cf.vr.center, cf.vrr, cf.mu, chi);

    std::vector<double> r4(N);
    for (int i = 0; i < N; ++i) {
      const double zt = ts.cm * zm[i] + ts.c0 * z0[i] + ts.cp * zp[i];
      r4[i] = zt - (zc.b1[i] * zrr[i] + (zc.b21[i] + zc.b22[i] / grid.centers[i]) * zr[i] +
                    zc.b3[i] * z0[i] + zc.b4[i]);
    }
    out.zeq = interior_max(r4, N);
  }

  return out;
}

std::vector<Snapshot> run_snapshots(const SimConfig& config, std::span<const double> times) {
  if (times.empty()) throw ValidationError("run_snapshots: no target times");
  for (size_t j = 0; j < times.size(); ++j) {
    if (!(times[j] >= 0.0)) throw ValidationError("run_snapshots: times must be nonnegative");
    if (j > 0 && !(times[j] > times[j - 1]))
      throw ValidationError("run_snapshots: times must strictly increase");
  }

  const RadialGrid grid = make_grid(config.dim, config.radius, config.ncells);
  SimState state;
  state.t = 0.0;
  state.u = sample_u0(grid, config.u0);
  state.mu = compute_mu(grid, state.u);

  std::vector<Snapshot> out;
  out.reserve(times.size());

  for (double target : times) {
    const double t_eps = std::max(target, 1.0) * 1e-14;
    while (state.t < target - t_eps) {
      double dt = stable_dt(grid, state.u, config.chi, config.cfl);
      if (dt < config.dt_min)
        throw ValidationError("run_snapshots: time step underflow before reaching target");
      dt = std::min(dt, target - state.t);
      StepResult r = step(grid, state, config.chi, dt);
      int retries = 0;
      while (!r.positive || !r.finite) {
        if (!r.finite || ++retries > 20)
          throw ValidationError("run_snapshots: step failure on a presumed-smooth run");
        dt *= 0.5;
        r = step(grid, state, config.chi, dt);
      }
      state = std::move(r.state);
    }
    out.push_back({state.t, state.u});
  }
  return out;
}

ResidualReport residual_suite(const SimConfig& base, int levels, double t_mid,
                              double snap_spacing) {
  if (levels < 1) throw ValidationError("residual_suite: need at least 1 level");
  if (!(t_mid > 0.0) || !(snap_spacing > 0.0) || !(t_mid - snap_spacing > 0.0))
    throw ValidationError("residual_suite: need 0 < spacing < t_mid");

  ResidualReport rep;
  for (int l = 0; l < levels; ++l) {
    SimConfig cfg = base;
    cfg.ncells = base.ncells << l;
    const double h = snap_spacing / (1 << l);
    const double times[3] = {t_mid - h, t_mid, t_mid + h};
    const RadialGrid grid = make_grid(cfg.dim, cfg.radius, cfg.ncells);
    const std::vector<Snapshot> snaps = run_snapshots(cfg, times);
    IdentityResiduals res = eval_identity_residuals(grid, snaps, cfg.chi);
    res.snap_spacing = h;
    rep.levels.push_back(res);
  }
  for (size_t l = 0; l + 1 < rep.levels.size(); ++l) {
    const IdentityResiduals& a = rep.levels[l];
    const IdentityResiduals& b = rep.levels[l + 1];
    rep.orders.push_back({std::log2(a.form_equiv / b.form_equiv),
                          std::log2(a.parab / b.parab), std::log2(a.qarab / b.qarab),
                          std::log2(a.zeq / b.zeq)});
  }
  return rep;
}

}  // namespace fluxks
