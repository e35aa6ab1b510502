#include "fluxks/dynamics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "fluxks/operators.hpp"

namespace fluxks {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::ReachedTEnd: return "reached_t_end";
    case Termination::BlowupThreshold: return "blowup_threshold";
    case Termination::DtUnderflow: return "dt_underflow";
    case Termination::PositivityLoss: return "positivity_loss";
    case Termination::NonFiniteState: return "non_finite_state";
  }
  return "unknown";
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::GlobalBounded: return "GlobalBounded";
    case Classification::GrowthSuspected: return "GrowthSuspected";
    case Classification::Inconclusive: return "Inconclusive";
  }
  return "unknown";
}

std::vector<double> sample_u0(const RadialGrid& grid, const U0Spec& spec) {
  if (!(spec.mass > 0.0) || !std::isfinite(spec.mass))
    throw ValidationError("sample_u0: target mass must be positive and finite");
  const int N = grid.ncells;
  std::vector<double> u(N);
  if (spec.family == U0Spec::Family::Cosine) {
    if (!(std::abs(spec.amplitude) < 1.0))
      throw ValidationError("sample_u0: cosine amplitude must satisfy |a| < 1");
    std::vector<double> profile(N);
    for (int i = 0; i < N; ++i)
      profile[i] =
          1.0 + spec.amplitude * std::cos(std::numbers::pi * grid.centers[i] / grid.radius);
    const double c0 = spec.mass / mass(grid, profile);
    for (int i = 0; i < N; ++i) u[i] = c0 * profile[i];
  } else {
    if (spec.amplitude < 0.0)
      throw ValidationError("sample_u0: bump amplitude must be nonnegative");
    if (spec.k < 2) throw ValidationError("sample_u0: bump exponent must be >= 2");
    std::vector<double> bump(N);
    for (int i = 0; i < N; ++i)
      bump[i] = std::pow(
          1.0 + std::cos(std::numbers::pi * grid.centers[i] / grid.radius), spec.k);
    const double c0 = (spec.mass - spec.amplitude * mass(grid, bump)) / grid.domain_measure;
    for (int i = 0; i < N; ++i) u[i] = c0 + spec.amplitude * bump[i];
  }
  for (double v : u)
    if (!(v > 0.0))
      throw ValidationError("sample_u0: initial data must be strictly positive; "
                            "reduce amplitude or raise mass");
  return u;
}

double total_flux(double u, double ur, double vr, double chi) {
  const double s2 = u * u + ur * ur;
  const double diffusive = s2 > 0.0 ? u * ur / std::sqrt(s2) : 0.0;
  return diffusive - chi * u * vr / std::sqrt(1.0 + vr * vr);
}

void StepWorkspace::resize(int ncells) {
  acc.resize(ncells + 1);
  flux.resize(ncells + 1);
  k1.resize(ncells);
  umid.resize(ncells);
  k2.resize(ncells);
  unew.resize(ncells);
}

namespace {

// Cumulative radial integral into acc (compensated); returns mu.
double fill_acc(const RadialGrid& g, std::span<const double> u, std::span<double> acc) {
  double sum = 0.0;
  double c = 0.0;
  acc[0] = 0.0;
  for (int i = 0; i < g.ncells; ++i) {
    const double y = u[i] * g.radial_weights[i] - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
    acc[i + 1] = sum;
  }
  return g.omega_n * sum / g.domain_measure;
}

}  // namespace

void rhs_divergence(const RadialGrid& grid, std::span<const double> u, double chi,
                    StepWorkspace& ws, std::span<double> dudt) {
  const int N = grid.ncells;
  const int n = grid.dim;
  if (static_cast<int>(u.size()) != N || static_cast<int>(dudt.size()) != N)
    throw ValidationError("rhs_divergence: field size does not match grid");

  const double mu = fill_acc(grid, u, ws.acc);
  const double invdr = 1.0 / grid.dr;

  ws.flux[0] = 0.0;
  ws.flux[N] = 0.0;
  for (int k = 1; k < N; ++k) {
    const double r = grid.faces[k];
    const double vr = mu * r / n - ws.acc[k] / ipow(r, n - 1);
    const double uf = 0.5 * (u[k - 1] + u[k]);
    const double urf = (u[k] - u[k - 1]) * invdr;
    ws.flux[k] = total_flux(uf, urf, vr, chi);
  }
  for (int i = 0; i < N; ++i)
    dudt[i] = (grid.face_areas[i + 1] * ws.flux[i + 1] - grid.face_areas[i] * ws.flux[i]) /
              grid.cell_measures[i];
}

std::vector<double> rhs_divergence(const RadialGrid& grid, std::span<const double> u,
                                   double chi) {
  StepWorkspace ws;
  ws.resize(grid.ncells);
  std::vector<double> out(grid.ncells);
  rhs_divergence(grid, u, chi, ws, out);
  return out;
}

double expanded_rhs_value(double u, double ur, double urr, double vr, double mu, double chi,
                          int dim, double r) {
  const double s2 = u * u + ur * ur;
  const double s = std::sqrt(s2);
  const double s3 = s * s2;
  const double q2 = 1.0 + vr * vr;
  const double q = std::sqrt(q2);
  const double q3 = q * q2;
  const double g = (dim - 1) / r;
  return u * u * u * urr / s3 + ipow(ur, 4) / s3 + g * u * ur / s - chi * ur * vr / q -
         chi * u * (mu - u) / q3 - chi * g * u * ipow(vr, 3) / q3;
}

std::vector<double> rhs_expanded(const RadialGrid& grid, std::span<const double> u,
                                 double chi) {
  const ChemFields cf = reconstruct(grid, u);
  const std::vector<double> ur = gradient(grid, u);
  const std::vector<double> urr = second_diff(grid, u);
  std::vector<double> out(grid.ncells);
  for (int i = 0; i < grid.ncells; ++i)
    out[i] = expanded_rhs_value(u[i], ur[i], urr[i], cf.vr.center[i], cf.mu, chi, grid.dim,
                                grid.centers[i]);
  return out;
}

namespace {

double stable_dt_impl(const RadialGrid& g, std::span<const double> u, double chi, double cfl,
                      std::span<double> acc) {
  const int N = g.ncells;
  const int n = g.dim;
  const double mu = fill_acc(g, u, acc);
  const double inv2dr = 1.0 / (2.0 * g.dr);

  double max_a1 = 0.0;
  double max_w = 0.0;
  for (int i = 0; i < N; ++i) {
    const double left = (i == 0) ? u[0] : u[i - 1];
    const double right = (i == N - 1) ? u[N - 1] : u[i + 1];
    const double ur = (right - left) * inv2dr;
    const double s2 = u[i] * u[i] + ur * ur;
    if (s2 > 0.0) max_a1 = std::max(max_a1, u[i] * u[i] * u[i] / (s2 * std::sqrt(s2)));
    const double r = g.centers[i];
    const double acc_c = acc[i] + u[i] * (ipow(r, n) - ipow(g.faces[i], n)) / n;
    const double vr = mu * r / n - acc_c / ipow(r, n - 1);
    max_w = std::max(max_w, std::abs(chi * vr / std::sqrt(1.0 + vr * vr)));
  }
  constexpr double eps = 1e-300;
  return cfl * std::min(g.dr * g.dr / (2.0 * max_a1 + eps), g.dr / (max_w + eps));
}

struct StepFlags {
  bool finite = true;
  bool positive = true;
};

StepFlags step_core(const RadialGrid& g, std::span<const double> u, double chi, double dt,
                    StepWorkspace& ws) {
  const int N = g.ncells;
  rhs_divergence(g, u, chi, ws, ws.k1);
  for (int i = 0; i < N; ++i) ws.umid[i] = u[i] + 0.5 * dt * ws.k1[i];
  rhs_divergence(g, ws.umid, chi, ws, ws.k2);
  StepFlags f;
  for (int i = 0; i < N; ++i) {
    const double v = u[i] + dt * ws.k2[i];
    ws.unew[i] = v;
    if (!std::isfinite(v)) f.finite = false;
    if (!(v > 0.0)) f.positive = false;
  }
  return f;
}

}  // namespace

double stable_dt(const RadialGrid& grid, std::span<const double> u, double chi, double cfl) {
  std::vector<double> acc(grid.ncells + 1);
  return stable_dt_impl(grid, u, chi, cfl, acc);
}

StepResult step(const RadialGrid& grid, const SimState& state, double chi, double dt) {
  StepWorkspace ws;
  ws.resize(grid.ncells);
  const StepFlags f = step_core(grid, state.u, chi, dt, ws);
  StepResult r;
  r.finite = f.finite;
  r.positive = f.positive;
  r.state.t = state.t + dt;
  r.state.u = std::move(ws.unew);
  r.state.mu = f.finite ? compute_mu(grid, r.state.u) : state.mu;
  return r;
}

RunResult integrate(const SimConfig& cfg) {
  if (!(cfg.chi >= 0.0) || !std::isfinite(cfg.chi))
    throw ValidationError("config: chi must be finite and >= 0");
  if (!(cfg.t_end > 0.0)) throw ValidationError("config: t_end must be positive");
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0))
    throw ValidationError("config: cfl must lie in (0, 1]");
  if (!(cfg.blowup_factor > 1.0))
    throw ValidationError("config: blowup_factor must exceed 1");
  if (!(cfg.dt_min > 0.0)) throw ValidationError("config: dt_min must be positive");
  if (cfg.sample_stride < 1) throw ValidationError("config: sample_stride must be >= 1");
  if (cfg.snapshot_stride < 0)
    throw ValidationError("config: snapshot_stride must be >= 0");

  const auto clock_start = std::chrono::steady_clock::now();
  const RadialGrid grid = make_grid(cfg.dim, cfg.radius, cfg.ncells);

  RunResult res;
  SimState state;
  state.t = 0.0;
  state.u = sample_u0(grid, cfg.u0);
  state.mu = compute_mu(grid, state.u);

  res.initial_mass = mass(grid, state.u);
  res.initial_max_u = *std::max_element(state.u.begin(), state.u.end());
  res.initial_min_u = *std::min_element(state.u.begin(), state.u.end());
  res.peak_max_u = res.initial_max_u;

  DiagContext ctx;
  ctx.chi = cfg.chi;
  ctx.kappa_rate = kappa(cfg.dim, cfg.chi, state.mu);
  ctx.min_u0 = res.initial_min_u;
  ctx.initial_mass = res.initial_mass;

  StepWorkspace ws;
  ws.resize(grid.ncells);

  res.records.push_back(record(grid, state.t, state.u, 0.0, ctx));
  if (cfg.snapshot_stride > 0) res.snapshots.push_back({state.t, state.u});

  res.termination = Termination::ReachedTEnd;
  const double t_eps = cfg.t_end * 1e-14;
  double dt_last = 0.0;
  bool state_recorded = true;

  while (state.t < cfg.t_end - t_eps) {
    double dt = stable_dt_impl(grid, state.u, cfg.chi, cfg.cfl, ws.acc);
    if (dt < cfg.dt_min) {
      res.termination = Termination::DtUnderflow;
      break;
    }
    dt = std::min(dt, cfg.t_end - state.t);

    bool fatal = false;
    for (int retries = 0;; ++retries) {
      const StepFlags f = step_core(grid, state.u, cfg.chi, dt, ws);
      if (!f.finite) {
        res.termination = Termination::NonFiniteState;
        fatal = true;
        break;
      }
      if (f.positive) break;
      ++res.steps_rejected;
      if (retries >= 20) {
        res.termination = Termination::PositivityLoss;
        fatal = true;
        break;
      }
      dt *= 0.5;
      if (dt < cfg.dt_min) {
        res.termination = Termination::DtUnderflow;
        fatal = true;
        break;
      }
    }
    if (fatal) break;

    std::swap(state.u, ws.unew);
    state.t += dt;
    state.mu = compute_mu(grid, state.u);
    dt_last = dt;
    ++res.steps_total;

    const double mx = *std::max_element(state.u.begin(), state.u.end());
    res.peak_max_u = std::max(res.peak_max_u, mx);

    state_recorded = false;
    if (res.steps_total % cfg.sample_stride == 0) {
      res.records.push_back(record(grid, state.t, state.u, dt, ctx));
      state_recorded = true;
    }
    if (cfg.snapshot_stride > 0 && res.steps_total % cfg.snapshot_stride == 0)
      res.snapshots.push_back({state.t, state.u});

    if (mx > cfg.blowup_factor * res.initial_max_u) {
      res.termination = Termination::BlowupThreshold;
      break;
    }
  }

  if (!state_recorded)
    res.records.push_back(record(grid, state.t, state.u, dt_last, ctx));
  if (cfg.snapshot_stride > 0 && res.snapshots.back().t != state.t)
    res.snapshots.push_back({state.t, state.u});

  res.final_state = std::move(state);
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  return res;
}

}  // namespace fluxks
