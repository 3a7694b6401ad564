#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nullwave/energetics.hpp"
#include "nullwave/grid.hpp"
#include "nullwave/record.hpp"

namespace nullwave {

struct ReportPlan {
  std::vector<double> slice_times;   // snapped to t = K h / 2, K even
  std::vector<double> row_us;        // snapped to the nearest u-node in [h, u_max - h]
  bool hyperboloid = false;          // E(s) at s = each slice time
};

struct RunOptions {
  bool nonlinear = true;
  int corrector_passes = 1;
  int threads = 1;
  bool parallel = true;  // OpenMP kernels; false selects the serial reference
};

struct RunResult {
  NullGridSpec grid;
  RadiationRecord radiation;
  std::vector<SliceSet> slices;
  std::vector<RowSample> rows;
  std::vector<HyperboloidSeries> hyperboloids;
  std::vector<energetics::EnergySample> energies;
  bool diverged = false;
  std::string divergence_message;
  double divergence_u = 0.0;
  double divergence_v = 0.0;
  double wall_seconds = 0.0;
  int rows_completed = 0;
};

/// Snaps t to a diagonal index K (even). Throws ConfigError("analysis.report_times")
/// if 2t > v_max or t > u_max.
int snap_report_time(const NullGridSpec& grid, double t);

/// Evolves from cone data at u = 0 to u = u_max. Divergence stops the run and
/// is reported in the result with whatever was recorded up to that row.
RunResult run(const NullGridSpec& grid, const InitialDataSpec& data, const ReportPlan& plan,
              const RunOptions& opts);

struct ConvergenceInput {
  RadiationRecord radiation;
  std::vector<energetics::EnergySample> energies;
};

struct ObservableOrder {
  std::string name;
  std::vector<double> differences;  // ||q_h - q_h/2||, ||q_h/2 - q_h/4||, ...
  std::vector<double> orders;       // log2 of successive ratios; NaN when undefined
  bool defined = true;
  bool monotone = true;
};

/// Orders for Psi(., v_max), Phi(., v_max) and ||phi(t)|| from runs at
/// h, h/2, h/4, ... (coarsest first). Levels at one common h are accepted and
/// reported with defined = false. Throws ConfigError on mismatched grids or
/// fewer than three levels.
std::vector<ObservableOrder> convergence_orders(const std::vector<ConvergenceInput>& levels);

/// Runs n_levels >= 3 resolutions starting at grid.h and returns their orders.
std::vector<ObservableOrder> convergence_suite(const NullGridSpec& grid, const InitialDataSpec& data,
                                               const ReportPlan& plan, const RunOptions& opts,
                                               int n_levels);

}  // namespace nullwave
