#include "nullwave/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nullwave/asympt.hpp"
#include "nullwave/evolve.hpp"

namespace nullwave {
namespace {

class SampleRng {
 public:
  SampleRng(std::uint64_t seed, int index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index)};
    gen_.seed(seq);
  }
  // 53-bit mantissa fill; the library distributions are not pinned across platforms.
  double uniform(double lo, double hi) { return lo + (hi - lo) * ((gen_() >> 11) * 0x1.0p-53); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace

SweepSample draw_sample(const SweepConfig& cfg, std::uint64_t seed, int index) {
  SampleRng rng(seed, index);
  SweepSample s;
  s.index = index;
  s.eps = rng.uniform(cfg.eps_min, cfg.eps_max);
  s.psi_a = rng.uniform(cfg.a_min, cfg.a_max);
  s.psi_b = s.psi_a + rng.uniform(cfg.width_min, cfg.width_max);
  s.phi_a = rng.uniform(cfg.a_min, cfg.a_max);
  s.phi_b = s.phi_a + rng.uniform(cfg.width_min, cfg.width_max);
  if (cfg.data_L == 0) {
    s.modes = {{0, 0, 1.0}};
  } else {
    for (int l = 0; l <= cfg.data_L; ++l)
      for (int m = -l; m <= l; ++m) s.modes.push_back({l, m, rng.uniform(-1.0, 1.0)});
  }
  s.tau = cfg.tau_scale * s.eps * s.eps;
  s.tau2 = s.tau * s.tau;
  return s;
}

RunConfig sample_run_config(const SweepConfig& cfg, const SweepSample& s) {
  RunConfig rc = cfg.base;
  rc.data.psi = FieldData{s.eps, s.psi_a, s.psi_b, s.modes};
  rc.data.phi = FieldData{s.eps, s.phi_a, s.phi_b, s.modes};
  rc.report_times.clear();
  rc.report_log.clear();
  rc.rows.clear();
  rc.rows_log.clear();
  rc.hyperboloid = false;
  rc.threads = 1;
  return rc;
}

SweepReport generic_sweep(const SweepConfig& cfg, std::uint64_t seed, int threads) {
  cfg.validate();
  SweepReport rep;
  rep.seed = seed;
  rep.tau_scale = cfg.tau_scale;
  rep.samples.resize(cfg.samples);
  for (int n = 0; n < cfg.samples; ++n) rep.samples[n] = draw_sample(cfg, seed, n);

  const int jobs = std::max(1, std::min(threads, cfg.samples));
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (int n = 0; n < cfg.samples; ++n) {
    SweepSample& s = rep.samples[n];
    const RunConfig rc = sample_run_config(cfg, s);
    try {
      RunOptions opts = rc.run_options();
      opts.threads = 1;
      const RunResult res = run(rc.grid, rc.data, rc.report_plan(), opts);
      if (res.diverged) {
        s.diverged = true;
        s.message = res.divergence_message;
        continue;
      }
      const auto c = asympt::compute_constants(res.radiation, rc.phi_limit);
      s.c1 = c.c1;
      s.c2 = c.c2;
      s.c3_min = *std::min_element(c.c3.begin(), c.c3.end());
      s.c3_max = *std::max_element(c.c3.begin(), c.c3.end());
      s.c4_min = *std::min_element(c.c4.begin(), c.c4.end());
      s.c4_max = *std::max_element(c.c4.begin(), c.c4.end());
      s.c1_above = s.c1 > s.tau;
      s.c2_below = std::abs(s.c2) <= s.tau2;
    } catch (const std::exception& e) {
      s.diverged = true;
      s.message = e.what();
    }
  }

  int above = 0;
  for (const auto& s : rep.samples) {
    if (s.diverged) {
      ++rep.diverged;
      continue;
    }
    ++rep.completed;
    if (s.c1_above) {
      ++above;
    } else {
      ++rep.below;
      if (!s.c2_below) rep.correlation_holds = false;
    }
  }
  rep.fraction_above = rep.completed > 0 ? static_cast<double>(above) / rep.completed : 0.0;
  return rep;
}

}  // namespace nullwave
