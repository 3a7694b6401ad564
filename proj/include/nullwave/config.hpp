#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nullwave/asympt.hpp"
#include "nullwave/evolve.hpp"
#include "nullwave/grid.hpp"

namespace nullwave {

using Sections = std::map<std::string, std::map<std::string, std::string>>;

struct RunConfig {
  NullGridSpec grid;
  InitialDataSpec data;
  bool sources = true;
  int corrector_passes = 1;

  double delta = 0.1;
  double delta_ell = 0.0;  // 0 selects min(delta/2, 1/(4l+4)) per mode
  std::vector<double> report_times;
  std::vector<double> report_log;  // {t_first, t_last, count}, optional
  std::vector<double> rows;
  std::vector<double> rows_log;    // {u_first, u_last, count}, optional
  bool hyperboloid = false;
  std::vector<double> fit_phi{50.0, 1000.0};
  std::vector<double> fit_dphi{300.0, 1000.0};
  int residual_stride = 10;
  asympt::PhiLimit phi_limit = asympt::PhiLimit::plain;

  int threads = 1;
  std::uint64_t seed = 0;
  std::string out_dir = "run";

  /// Explicit report times merged with the log-spaced ones, sorted, unique.
  std::vector<double> all_report_times() const;
  std::vector<double> all_rows() const;
  ReportPlan report_plan() const;
  RunOptions run_options() const;
  /// Grid, data and report-time checks; throws ConfigError with "section.key".
  void validate() const;
};

struct SweepConfig {
  RunConfig base;
  int samples = 20;
  double eps_min = 0.01;
  double eps_max = 0.05;
  double a_min = 0.3;
  double a_max = 0.8;
  double width_min = 0.8;
  double width_max = 1.2;
  int data_L = 0;          // random angular content up to this degree
  double tau_scale = 1e-12;  // tau = tau_scale * eps^2

  void validate() const;
};

/// Doubles are written in shortest round-trip form.
std::string format_double(double x);

Sections read_ini_file(const std::string& path);
Sections read_ini_string(const std::string& text);

RunConfig run_config_from_sections(const Sections& s);
Sections to_sections(const RunConfig& c);
SweepConfig sweep_config_from_sections(const Sections& s);
Sections to_sections(const SweepConfig& c);

RunConfig load_run_config(const std::string& path);
SweepConfig load_sweep_config(const std::string& path);

}  // namespace nullwave
