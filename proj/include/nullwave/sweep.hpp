#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nullwave/config.hpp"

namespace nullwave {

/// One random data set of the genericity sweep and the constants it produced.
struct SweepSample {
  int index = 0;
  double eps = 0.0;
  double psi_a = 0.0, psi_b = 0.0;
  double phi_a = 0.0, phi_b = 0.0;
  std::vector<ModeWeight> modes;
  double c1 = 0.0, c2 = 0.0;
  double c3_min = 0.0, c3_max = 0.0;
  double c4_min = 0.0, c4_max = 0.0;
  double tau = 0.0;   // tau_scale * eps^2
  double tau2 = 0.0;  // tau^2, the matching scale for c2 ~ c3^2
  bool c1_above = false;
  bool c2_below = false;
  bool diverged = false;
  std::string message;
};

struct SweepReport {
  std::uint64_t seed = 0;
  double tau_scale = 0.0;
  std::vector<SweepSample> samples;
  int completed = 0;
  int diverged = 0;
  double fraction_above = 0.0;  // among completed samples
  int below = 0;
  bool correlation_holds = true;  // every c1 <= tau sample also has |c2| <= tau2
};

/// Draws the data of sample `index`. Each sample owns a generator seeded from
/// (seed, index) only, so samples can be drawn in any order.
SweepSample draw_sample(const SweepConfig& cfg, std::uint64_t seed, int index);

/// The run configuration for a drawn sample (base grid, random data).
RunConfig sample_run_config(const SweepConfig& cfg, const SweepSample& s);

/// Runs every member; divergence of a member is recorded in it, not thrown.
SweepReport generic_sweep(const SweepConfig& cfg, std::uint64_t seed, int threads);

}  // namespace nullwave
