#include "nullwave/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "nullwave/asympt.hpp"
#include "nullwave/energetics.hpp"
#include "nullwave/error.hpp"
#include "nullwave/io.hpp"
#include "nullwave/stats.hpp"

#ifndef NULLWAVE_VERSION
#define NULLWAVE_VERSION "dev"
#endif

namespace nullwave {
namespace {

using nlohmann::json;

std::string join(const std::string& dir, const char* file) { return (std::filesystem::path(dir) / file).string(); }

json jnum(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

json series_json(const asympt::ResidualSeries& s) {
  json j;
  j["field"] = s.field;
  j["u"] = s.u;
  j["sup"] = s.sup;
  j["final"] = s.sup.empty() ? json(nullptr) : jnum(s.sup.back());
  // Trend over the last decade of u.
  std::vector<double> u, r;
  if (!s.u.empty()) {
    for (std::size_t n = 0; n < s.u.size(); ++n) {
      if (s.u[n] < s.u.back() / 10.0) continue;
      u.push_back(s.u[n]);
      r.push_back(s.sup[n]);
    }
  }
  j["spearman_final_decade"] = u.size() >= 3 ? jnum(stats::spearman(u, r)) : json(nullptr);
  return j;
}

double data_eps(const RunConfig& cfg) {
  return std::max(std::abs(cfg.data.phi.amplitude), std::abs(cfg.data.psi.amplitude));
}

}  // namespace

std::string code_version() { return NULLWAVE_VERSION; }

RunResult cmd_evolve(const RunConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  io::ensure_directory(out_dir);
  RunResult res = run(cfg.grid, cfg.data, cfg.report_plan(), cfg.run_options());

  io::write_radiation_csv(join(out_dir, "radiation.csv"), res.radiation);
  io::write_slices_csv(join(out_dir, "slices.csv"), res.slices, cfg.grid);
  io::write_rows_csv(join(out_dir, "rows.csv"), res.rows, cfg.grid, cfg.residual_stride);
  io::write_energies_csv(join(out_dir, "energies.csv"), res.energies);

  json meta;
  RunConfig echo = cfg;
  echo.out_dir = out_dir;
  meta["config"] = io::sections_to_json(to_sections(echo));
  meta["code_version"] = code_version();
  meta["wall_seconds"] = res.wall_seconds;
  meta["threads"] = cfg.threads;
  meta["rows_completed"] = res.rows_completed;
  meta["diverged"] = res.diverged;
  if (res.diverged) {
    meta["divergence"] = {{"message", res.divergence_message}, {"u", res.divergence_u}, {"v", res.divergence_v}};
  }
  io::write_json(join(out_dir, "meta.json"), meta);
  return res;
}

RunConfig load_run_config_from_dir(const std::string& dir) {
  const json meta = io::read_json(join(dir, "meta.json"));
  if (!meta.contains("config")) throw SchemaError(join(dir, "meta.json"), "key config");
  RunConfig cfg = run_config_from_sections(io::sections_from_json(meta["config"]));
  cfg.validate();
  return cfg;
}

json cmd_constants(const std::string& dir) {
  const RunConfig cfg = load_run_config_from_dir(dir);
  const RadiationRecord rad = io::read_radiation_csv(join(dir, "radiation.csv"), cfg.grid);
  const auto plain = asympt::compute_constants(rad, asympt::PhiLimit::plain);
  const auto slope = asympt::compute_constants(rad, asympt::PhiLimit::log_slope);
  const auto& chosen = cfg.phi_limit == asympt::PhiLimit::plain ? plain : slope;

  json j;
  j["constants"] = io::constants_to_json(chosen);
  j["constants_plain"] = io::constants_to_json(plain);
  j["constants_log_slope"] = io::constants_to_json(slope);
  j["c1_nonnegative"] = chosen.c1 >= 0.0;
  j["identities"] = {
      {"printed_kappa", io::identities_to_json(asympt::check_identities(rad, plain, asympt::kRelationKappaPrinted))},
      {"consistent_kappa", io::identities_to_json(asympt::check_identities(rad, plain, asympt::kRelationKappa))},
      {"consistent_kappa_log_slope",
       io::identities_to_json(asympt::check_identities(rad, slope, asympt::kRelationKappa))}};
  io::write_json(join(dir, "constants.json"), j);
  return j;
}

json cmd_residuals(const std::string& dir) {
  const RunConfig cfg = load_run_config_from_dir(dir);
  const RadiationRecord rad = io::read_radiation_csv(join(dir, "radiation.csv"), cfg.grid);
  const auto rows = io::read_rows_csv(join(dir, "rows.csv"), cfg.grid, cfg.residual_stride);
  const auto consts = asympt::compute_constants(rad, cfg.phi_limit);

  auto res = asympt::residual_profile(rows, consts, rad, cfg.delta, 1);
  json modes = json::array();
  for (int ell = 1; ell <= cfg.grid.L_max; ++ell) {
    const double d = cfg.delta_ell > 0.0 ? cfg.delta_ell : asympt::default_delta_ell(cfg.delta, ell);
    auto m = asympt::mode_profile_residual(ell, rows, consts, d, 1);
    if (!m) continue;
    res.insert(res.end(), m->begin(), m->end());
    json e = series_json(asympt::residual_series(*m, "phi_l" + std::to_string(ell), false));
    e["ell"] = ell;
    e["delta_ell"] = d;
    modes.push_back(e);
  }
  io::write_residuals_csv(join(dir, "residuals.csv"), res);

  json j;
  j["delta"] = cfg.delta;
  j["phi_l0_region_C_int"] = series_json(asympt::residual_series(res, "phi_l0", true));
  json fields = json::array();
  for (const char* f : {"phi_l0", "psibar_l0", "phi_I", "psibar_I", "phi_II", "psibar_II"})
    fields.push_back(series_json(asympt::residual_series(res, f, false)));
  j["fields"] = fields;
  j["modes"] = modes;
  const auto x = asympt::x_diagnostic(rows, cfg.grid.L_max, cfg.delta, 1);
  j["x_diagnostic"] = {{"sup_scaled", jnum(x.sup_scaled)}, {"samples", x.samples}};
  io::write_json(join(dir, "residuals_summary.json"), j);
  return j;
}

json cmd_energies(const std::string& dir) {
  const RunConfig cfg = load_run_config_from_dir(dir);
  const auto e = io::read_energies_csv(join(dir, "energies.csv"));
  const RadiationRecord rad = io::read_radiation_csv(join(dir, "radiation.csv"), cfg.grid);
  const auto consts = asympt::compute_constants(rad, cfg.phi_limit);
  const auto s = energetics::summarize(e, cfg.fit_phi[0], cfg.fit_phi[1], cfg.fit_dphi[0], cfg.fit_dphi[1]);

  json j;
  j["phi_fit"] = {{"model", "power"},   {"exponent", jnum(s.phi_fit.a)}, {"log_prefactor", jnum(s.phi_fit.b)},
                  {"t_lo", s.phi_fit.t_lo}, {"t_hi", s.phi_fit.t_hi},      {"n", s.phi_fit.n},
                  {"residual_rms", jnum(s.phi_fit.residual_rms)}};
  j["dphi_over_ln_t"] = {{"t_lo", cfg.fit_dphi[0]},
                         {"t_hi", cfg.fit_dphi[1]},
                         {"min", jnum(s.dphi_ratio_min)},
                         {"max", jnum(s.dphi_ratio_max)},
                         {"final", jnum(s.dphi_ratio_final)},
                         {"variation", jnum(s.dphi_variation)},
                         {"n", s.dphi_samples},
                         {"c5", jnum(consts.c5)},
                         {"eps", data_eps(cfg)}};
  j["psi_bound"] = {{"t_ref", s.psi_ref_t}, {"ratio", jnum(s.psi_bound_ratio)}};
  j["cascade"] = {{"spearman_final_decade", jnum(s.cascade_spearman)}, {"n", s.cascade_samples}};
  io::write_json(join(dir, "energy_summary.json"), j);
  return j;
}

json cmd_convergence(const std::vector<std::string>& dirs, const std::string& out_dir) {
  std::vector<ConvergenceInput> levels;
  for (const auto& d : dirs) {
    const RunConfig cfg = load_run_config_from_dir(d);
    ConvergenceInput in;
    in.radiation = io::read_radiation_csv(join(d, "radiation.csv"), cfg.grid);
    in.energies = io::read_energies_csv(join(d, "energies.csv"));
    levels.push_back(std::move(in));
  }
  const auto orders = convergence_orders(levels);
  json j;
  j["runs"] = dirs;
  json obs = json::array();
  for (const auto& o : orders) {
    json a = json::array();
    for (double x : o.orders) a.push_back(jnum(x));
    obs.push_back({{"name", o.name},
                   {"differences", o.differences},
                   {"orders", a},
                   {"degenerate", !o.defined},
                   {"monotone", o.monotone}});
  }
  j["observables"] = obs;
  io::ensure_directory(out_dir);
  io::write_json(join(out_dir, "convergence.json"), j);
  return j;
}

SweepReport cmd_generic_sweep(const SweepConfig& cfg, std::uint64_t seed, int threads, const std::string& out_dir) {
  const SweepReport rep = generic_sweep(cfg, seed, threads);
  io::ensure_directory(out_dir);
  std::ofstream csv(join(out_dir, "sweep.csv"), std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write sweep.csv in " + out_dir);
  csv << "index,eps,psi_a,psi_b,phi_a,phi_b,c1,c2,c3_min,c3_max,c4_min,c4_max,tau,tau2,c1_above,c2_below,diverged\n";
  for (const auto& s : rep.samples) {
    csv << s.index;
    for (double x : {s.eps, s.psi_a, s.psi_b, s.phi_a, s.phi_b, s.c1, s.c2, s.c3_min, s.c3_max, s.c4_min, s.c4_max,
                     s.tau, s.tau2})
      csv << ',' << format_double(x);
    csv << ',' << int(s.c1_above) << ',' << int(s.c2_below) << ',' << int(s.diverged) << '\n';
  }

  json j;
  j["config"] = io::sections_to_json(to_sections(cfg));
  j["seed"] = seed;
  j["samples"] = cfg.samples;
  j["completed"] = rep.completed;
  j["diverged"] = rep.diverged;
  j["tau_scale"] = rep.tau_scale;
  j["fraction_c1_above_tau"] = rep.fraction_above;
  j["below_tau"] = rep.below;
  j["c2_small_whenever_c1_small"] = rep.correlation_holds;
  json pairs = json::array();
  for (const auto& s : rep.samples) {
    json p = {{"index", s.index}, {"c1", s.c1}, {"c2", s.c2}};
    if (s.diverged) p["error"] = s.message;
    pairs.push_back(p);
  }
  j["pairs"] = pairs;
  io::write_json(join(out_dir, "sweep.json"), j);
  return rep;
}

json cmd_report(const std::string& dir) {
  json j;
  j["constants"] = cmd_constants(dir);
  j["residuals"] = cmd_residuals(dir);
  j["energies"] = cmd_energies(dir);
  io::write_json(join(dir, "report.json"), j);
  return j;
}

}  // namespace nullwave
