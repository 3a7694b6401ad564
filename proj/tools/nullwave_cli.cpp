#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "nullwave/commands.hpp"
#include "nullwave/error.hpp"

using namespace nullwave;

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  bool linear = false;
  std::vector<std::string> dirs;
};

void apply(RunConfig& c, const Flags& f) {
  if (!f.out.empty()) c.out_dir = f.out;
  if (f.threads) c.threads = *f.threads;
  if (f.seed) c.seed = *f.seed;
  if (f.linear) c.sources = false;
}

// Analysis commands take the run directory either positionally or via --out.
std::string run_dir(const Flags& f) {
  if (!f.dirs.empty()) return f.dirs.front();
  if (!f.out.empty()) return f.out;
  throw CLI::ValidationError("run directory", "give a run directory or --out DIR");
}

void print(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Null-coordinate evolution of a coupled wave system and its asymptotics"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", f.config, "config file (INI)");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--out", f.out, "output / run directory");
    sub->add_option("--threads", f.threads, "thread count")->check(CLI::PositiveNumber);
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_flag("--linear", f.linear, "switch the nonlinear sources off");
  };

  auto* evolve = app.add_subcommand("evolve", "run the evolution and write a run directory");
  add_common(evolve, true);
  auto* constants = app.add_subcommand("constants", "constants.json from a run directory");
  add_common(constants, false);
  constants->add_option("dir", f.dirs, "run directory");
  auto* residuals = app.add_subcommand("residuals", "residuals.csv from a run directory");
  add_common(residuals, false);
  residuals->add_option("dir", f.dirs, "run directory");
  auto* energies = app.add_subcommand("energies", "energy growth summary from a run directory");
  add_common(energies, false);
  energies->add_option("dir", f.dirs, "run directory");
  auto* convergence = app.add_subcommand("convergence", "observed orders from runs at h, h/2, h/4");
  add_common(convergence, false);
  convergence->add_option("dirs", f.dirs, "run directories, coarsest first")->required()->expected(3, -1);
  auto* sweep = app.add_subcommand("generic-sweep", "random small-data sweep of c1 and c2");
  add_common(sweep, true);
  auto* report = app.add_subcommand("report", "constants, residuals and energies for a run directory");
  add_common(report, false);
  report->add_option("dir", f.dirs, "run directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (evolve->parsed()) {
      RunConfig cfg = load_run_config(f.config);
      apply(cfg, f);
      const RunResult res = cmd_evolve(cfg, cfg.out_dir);
      std::cout << "wrote " << cfg.out_dir << " (" << res.rows_completed << " rows, " << res.wall_seconds << " s)\n";
      if (res.diverged) {
        std::cerr << "diverged at u=" << res.divergence_u << " v=" << res.divergence_v << ": "
                  << res.divergence_message << '\n';
        return 3;
      }
    } else if (constants->parsed()) {
      print(cmd_constants(run_dir(f)));
    } else if (residuals->parsed()) {
      print(cmd_residuals(run_dir(f)));
    } else if (energies->parsed()) {
      print(cmd_energies(run_dir(f)));
    } else if (convergence->parsed()) {
      print(cmd_convergence(f.dirs, f.out.empty() ? std::string(".") : f.out));
    } else if (sweep->parsed()) {
      SweepConfig cfg = load_sweep_config(f.config);
      apply(cfg.base, f);
      const auto rep = cmd_generic_sweep(cfg, cfg.base.seed, cfg.base.threads, cfg.base.out_dir);
      std::cout << "samples " << rep.samples.size() << ", completed " << rep.completed << ", fraction c1 > tau "
                << rep.fraction_above << '\n';
    } else if (report->parsed()) {
      cmd_report(run_dir(f));
      std::cout << "wrote report.json\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
