#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nullwave/config.hpp"
#include "nullwave/evolve.hpp"
#include "nullwave/sweep.hpp"

// Subcommands. Each reads or writes a run directory:
//   meta.json       config echo, code version, wall time, divergence flag
//   radiation.csv   slices.csv   rows.csv   energies.csv
//   constants.json  residuals.csv  residuals_summary.json  energy_summary.json

namespace nullwave {

std::string code_version();

/// Evolves and writes the run directory. On divergence the partial record is
/// still written and meta.json carries diverged = true.
RunResult cmd_evolve(const RunConfig& cfg, const std::string& out_dir);

/// Config echoed in <dir>/meta.json, re-parsed and validated.
RunConfig load_run_config_from_dir(const std::string& dir);

nlohmann::json cmd_constants(const std::string& dir);
nlohmann::json cmd_residuals(const std::string& dir);
nlohmann::json cmd_energies(const std::string& dir);

/// Run directories at h, h/2, h/4 (coarsest first); writes convergence.json to out_dir.
nlohmann::json cmd_convergence(const std::vector<std::string>& dirs, const std::string& out_dir);

/// Writes sweep.csv and sweep.json to out_dir.
SweepReport cmd_generic_sweep(const SweepConfig& cfg, std::uint64_t seed, int threads, const std::string& out_dir);

/// constants, residuals and energies in one pass; writes report.json.
nlohmann::json cmd_report(const std::string& dir);

}  // namespace nullwave
