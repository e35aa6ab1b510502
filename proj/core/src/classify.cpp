#include "fluxks/classify.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "fluxks/diagnostics.hpp"

namespace fluxks {

namespace {

// Strict growth of max_u over the final quarter of the samples (at least 2).
bool tail_strictly_increasing(std::span<const DiagnosticsRecord> records) {
  const size_t n = records.size();
  if (n < 2) return false;
  size_t tail = std::max<size_t>(2, (n + 3) / 4);
  tail = std::min(tail, n);
  for (size_t i = n - tail; i + 1 < n; ++i)
    if (!(records[i + 1].max_u > records[i].max_u)) return false;
  return true;
}

}  // namespace

ClassificationResult classify(const RunResult& result, const SimConfig& config) {
  (void)config;  // thresholds live in the config already applied by integrate
  ClassificationResult c;
  c.peak_ratio = result.initial_max_u > 0.0 ? result.peak_max_u / result.initial_max_u : 0.0;
  c.t_final = result.final_state.t;

  switch (result.termination) {
    case Termination::BlowupThreshold:
      c.label = Classification::GrowthSuspected;
      c.reason = "sup norm crossed blowup_factor x initial max";
      break;
    case Termination::DtUnderflow:
      if (tail_strictly_increasing(result.records)) {
        c.label = Classification::GrowthSuspected;
        c.reason = "time step underflowed while the sup norm grew strictly over the final "
                   "quarter of samples";
      } else {
        c.label = Classification::Inconclusive;
        c.reason = "time step underflowed without monotone sup-norm growth";
      }
      break;
    case Termination::ReachedTEnd:
      if (c.peak_ratio <= 10.0) {
        c.label = Classification::GlobalBounded;
        c.reason = "reached t_end with peak/initial sup-norm ratio <= 10";
      } else {
        c.label = Classification::Inconclusive;
        c.reason = "reached t_end but peak/initial sup-norm ratio exceeded 10";
      }
      break;
    case Termination::PositivityLoss:
      c.label = Classification::Inconclusive;
      c.reason = "step rejected 20 times running for positivity loss";
      break;
    case Termination::NonFiniteState:
      c.label = Classification::Inconclusive;
      c.reason = "non-finite state encountered";
      break;
  }
  return c;
}

RunResult run(const SimConfig& config) {
  RunResult r = integrate(config);
  r.classification = classify(r, config);
  return r;
}

std::vector<SweepRow> sweep(const SweepSpec& spec, int workers) {
  if (spec.chis.empty() || spec.masses.empty())
    throw ValidationError("sweep: chi and mass lists must be non-empty");
  for (double chi : spec.chis)
    if (!(chi > 0.0)) throw ValidationError("sweep: every chi must be positive");
  for (double m : spec.masses)
    if (!(m > 0.0)) throw ValidationError("sweep: every mass must be positive");

  const size_t total = spec.chis.size() * spec.masses.size();
  std::vector<SweepRow> rows(total);

  auto task = [&](size_t idx) {
    const double chi = spec.chis[idx / spec.masses.size()];
    const double m = spec.masses[idx % spec.masses.size()];
    SweepRow& row = rows[idx];
    row.dim = spec.dim;
    row.chi = chi;
    row.mass_target = m;
    row.m_c = critical_mass(chi);
    SimConfig cfg;
    cfg.dim = spec.dim;
    cfg.radius = spec.radius;
    cfg.ncells = spec.ncells;
    cfg.chi = chi;
    cfg.t_end = spec.t_end;
    cfg.cfl = spec.cfl;
    cfg.blowup_factor = spec.blowup_factor;
    cfg.dt_min = spec.dt_min;
    cfg.sample_stride = spec.sample_stride;
    cfg.u0.family = spec.family;
    cfg.u0.mass = m;
    cfg.u0.amplitude = spec.amplitude;
    cfg.u0.k = spec.k;
    try {
      const RunResult r = run(cfg);
      row.result = r.classification;
    } catch (const std::exception& e) {
      row.run_failed = true;
      row.result.label = Classification::Inconclusive;
      row.result.reason = std::string("run failed: ") + e.what();
    }
  };

  int nw = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
  if (nw < 1) nw = 1;
  nw = std::min<int>(nw, static_cast<int>(total));

  if (nw == 1) {
    for (size_t i = 0; i < total; ++i) task(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) task(i);
      });
    for (auto& th : pool) th.join();
  }
  return rows;
}

}  // namespace fluxks
