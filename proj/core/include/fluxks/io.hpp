#pragma once

#include <filesystem>
#include <string>

#include "fluxks/classify.hpp"
#include "fluxks/verification.hpp"

namespace fluxks {

// Floats rendered with 17 significant digits (round-trip exact);
// infinities as "inf"/"-inf".
std::string format17(double x);

// JSON schema:
//   { n, R, N, chi, t_end, cfl?, blowup_factor?, dt_min?, sample_stride?,
//     u0: { family: "cosine"|"bump", mass, amplitude?, k? } }
// Missing file or malformed fields throw ValidationError naming the problem.
SimConfig load_sim_config(const std::filesystem::path& path);

// Same outer fields, but chi and mass are arrays and u0 has no mass.
SweepSpec load_sweep_spec(const std::filesystem::path& path);

void write_diagnostics_csv(const std::filesystem::path& path,
                           std::span<const DiagnosticsRecord> records);
void write_final_state_csv(const std::filesystem::path& path, const RadialGrid& grid,
                           std::span<const double> u);
void write_summary_json(const std::filesystem::path& path, const SimConfig& config,
                        const RunResult& result);
void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepRow> rows);
void write_residual_csv(const std::filesystem::path& path, const ResidualReport& report);

}  // namespace fluxks
