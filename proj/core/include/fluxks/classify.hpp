#pragma once

#include "fluxks/dynamics.hpp"

namespace fluxks {

// Label a finished run from its recorded summaries alone (re-running on the
// stored records reproduces the label):
//   GrowthSuspected  - sup norm crossed blowup_factor x initial max, or the
//                      step underflowed while max_u grew strictly over the
//                      final quarter of the samples;
//   GlobalBounded    - t_end reached with peak/initial sup-norm ratio <= 10;
//   Inconclusive     - everything else.
ClassificationResult classify(const RunResult& result, const SimConfig& config);

// integrate() plus classify().
RunResult run(const SimConfig& config);

// One classified run per (chi, mass) pair on a shared grid and initial-data
// shape.
struct SweepSpec {
  int dim = 1;
  double radius = 1.0;
  int ncells = 128;
  std::vector<double> chis;
  std::vector<double> masses;
  double t_end = 20.0;  // engineering default for bounded regimes
  double cfl = 0.9;
  double blowup_factor = 1e3;
  double dt_min = 1e-12;
  int sample_stride = 100;
  U0Spec::Family family = U0Spec::Family::Cosine;
  double amplitude = 0.5;
  int k = 2;
};

struct SweepRow {
  int dim = 0;
  double chi = 0.0;
  double mass_target = 0.0;
  double m_c = 0.0;  // +inf when chi <= 1
  ClassificationResult result;
  bool run_failed = false;  // the run threw; result carries the message
};

// Runs execute concurrently (workers threads; 0 = hardware concurrency);
// rows come back in deterministic (chi, mass) order regardless of
// completion order.  Individual run failures become Inconclusive rows.
std::vector<SweepRow> sweep(const SweepSpec& spec, int workers = 0);

}  // namespace fluxks
