#pragma once

namespace fluxks {

// Full command-line entry point.  Subcommands:
//   simulate --config FILE --out DIR   one run -> diagnostics.csv,
//                                      final_state.csv, summary.json
//   sweep    --config FILE --out FILE  classified (chi, mass) grid -> CSV
//   verify   --levels K --out FILE     identity-residual refinement study
//                                      plus scalar self-checks -> CSV
//   report   --run DIR                 print a stored run's summary
// Exit codes: 0 success, 1 validation error (bad flags, config, input),
// 2 internal failure (including failed verify self-checks).
int run_cli(int argc, char** argv);

}  // namespace fluxks
