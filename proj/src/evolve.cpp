#include "nullwave/evolve.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>

#include "nullwave/error.hpp"
#include "nullwave/kernels.hpp"

namespace nullwave {

void RadiationRecord::compute_UPsi() {
  const int n = size();
  UPsi.assign(Psi.size(), 0.0);
  if (n < 3) return;
  for (int k = 0; k < M; ++k) {
    auto at = [&](int i) { return psi(i, k); };
    UPsi[k] = (-3.0 * at(0) + 4.0 * at(1) - at(2)) / h;
    for (int i = 1; i + 1 < n; ++i) UPsi[static_cast<std::size_t>(i) * M + k] = (at(i + 1) - at(i - 1)) / h;
    UPsi[static_cast<std::size_t>(n - 1) * M + k] = (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / h;
  }
}

int snap_report_time(const NullGridSpec& grid, double t) {
  const int K = 2 * static_cast<int>(std::lround(t / grid.h));
  if (K < 2) throw ConfigError("analysis.report_times", "report time must be at least h");
  if (K > grid.Nv()) throw ConfigError("analysis.report_times", "report time exceeds v_max/2");
  if (K / 2 > grid.Nu()) throw ConfigError("analysis.report_times", "report time exceeds u_max");
  return K;
}

namespace {

SliceDiag make_diag(int d, int M, const NullGridSpec& grid) {
  SliceDiag s;
  s.K = d;
  s.n = d / 2 + 1;
  s.Phi.assign(static_cast<std::size_t>(M) * s.n, 0.0);
  s.Psi.assign(static_cast<std::size_t>(M) * s.n, 0.0);
  s.have.assign(s.n, 0);
  (void)grid;
  return s;
}

void record_diag(SliceDiag& s, const Row& row, int i, int M, int Nv) {
  if (s.K < 0 || i >= s.n) return;
  const int j = s.K - i;
  if (j < i || j > Nv) return;
  for (int k = 0; k < M; ++k) {
    s.Phi[static_cast<std::size_t>(k) * s.n + i] = row.at(kPhi, k, j);
    s.Psi[static_cast<std::size_t>(k) * s.n + i] = row.at(kPsi, k, j);
  }
  s.have[i] = 1;
}

RowSample make_row_sample(const Row& prev, const Row& cur, const Row& next, int i, const NullGridSpec& grid) {
  const int M = grid.n_modes();
  const int Nv = grid.Nv();
  const double h = grid.h;
  RowSample rs;
  rs.u = grid.u(i);
  rs.h = h;
  rs.i = i;
  rs.n = Nv - i + 1;
  const std::size_t total = static_cast<std::size_t>(M) * rs.n;
  rs.Phi.assign(total, 0.0);
  rs.Psi.assign(total, 0.0);
  rs.UPhi.assign(total, 0.0);
  rs.dtPsi.assign(total, 0.0);
  for (int k = 0; k < M; ++k) {
    for (int j = i; j <= Nv; ++j) {
      const std::size_t idx = static_cast<std::size_t>(k) * rs.n + (j - i);
      rs.Phi[idx] = cur.at(kPhi, k, j);
      rs.Psi[idx] = cur.at(kPsi, k, j);
      double du_phi, du_psi, dv_psi;
      if (j > i) {
        du_phi = (next.at(kPhi, k, j) - prev.at(kPhi, k, j)) / (2.0 * h);
        du_psi = (next.at(kPsi, k, j) - prev.at(kPsi, k, j)) / (2.0 * h);
      } else {
        du_phi = (cur.at(kPhi, k, j) - prev.at(kPhi, k, j)) / h;
        du_psi = (cur.at(kPsi, k, j) - prev.at(kPsi, k, j)) / h;
      }
      if (j == i) {
        dv_psi = (cur.at(kPsi, k, j + 1) - cur.at(kPsi, k, j)) / h;
      } else if (j == Nv) {
        dv_psi = (cur.at(kPsi, k, j) - cur.at(kPsi, k, j - 1)) / h;
      } else {
        dv_psi = (cur.at(kPsi, k, j + 1) - cur.at(kPsi, k, j - 1)) / (2.0 * h);
      }
      rs.UPhi[idx] = 2.0 * du_phi;
      rs.dtPsi[idx] = du_psi + dv_psi;
    }
  }
  return rs;
}

}  // namespace

RunResult run(const NullGridSpec& grid, const InitialDataSpec& data, const ReportPlan& plan,
              const RunOptions& opts) {
  grid.validate();
  data.validate(grid);
  if (opts.corrector_passes < 0) throw ConfigError("physics.corrector_passes", "must be >= 0");
  const auto t_start = std::chrono::steady_clock::now();
  omp_set_num_threads(std::max(1, opts.threads));

  const KernelContext ctx(grid, opts.nonlinear);
  const int M = grid.n_modes();
  const int Nv = grid.Nv();
  const int Nu = grid.Nu();
  const double h = grid.h;

  RunResult res;
  res.grid = grid;
  auto& rad = res.radiation;
  rad.h = h;
  rad.v_max = grid.v_max;
  rad.L_max = grid.L_max;
  rad.M = M;
  const int j_inner = Nv / 2;
  rad.v_inner = grid.v(j_inner);
  rad.u.reserve(Nu + 1);
  rad.Psi.reserve(static_cast<std::size_t>(Nu + 1) * M);
  rad.Phi.reserve(static_cast<std::size_t>(Nu + 1) * M);

  for (double t : plan.slice_times) {
    const int K = snap_report_time(grid, t);
    SliceSet s;
    s.t = 0.5 * K * h;
    s.lower = make_diag(K - 1, M, grid);
    s.mid = make_diag(K, M, grid);
    s.upper = make_diag(K + 1, M, grid);
    res.slices.push_back(std::move(s));
  }

  std::vector<int> row_indices;
  for (double u : plan.row_us) {
    int i = static_cast<int>(std::lround(u / h));
    i = std::clamp(i, 1, std::max(1, Nu - 1));
    if (i < Nu) row_indices.push_back(i);
  }
  std::sort(row_indices.begin(), row_indices.end());
  row_indices.erase(std::unique(row_indices.begin(), row_indices.end()), row_indices.end());

  if (plan.hyperboloid) {
    for (const auto& s : res.slices) {
      HyperboloidSeries hs;
      hs.s = s.t;
      res.hyperboloids.push_back(hs);
    }
  }

  std::array<Row, 4> rows;
  for (auto& r : rows) r = Row(M, Nv + 1);
  Row src(M, Nv + 1);
  auto R = [&](int i) -> Row& { return rows[static_cast<std::size_t>(i) & 3u]; };

  {
    const auto phi0 = cone_coefficients(data.phi, grid);
    const auto psi0 = cone_coefficients(data.psi, grid);
    Row& r0 = R(0);
    for (int k = 0; k < M; ++k) {
      std::copy_n(&phi0[static_cast<std::size_t>(k) * (Nv + 1)], Nv + 1, r0.ptr(kPhi, k));
      std::copy_n(&psi0[static_cast<std::size_t>(k) * (Nv + 1)], Nv + 1, r0.ptr(kPsi, k));
      r0.at(kPhi, k, 0) = 0.0;
      r0.at(kPsi, k, 0) = 0.0;
    }
  }

  auto record_row = [&](int i) {
    const Row& row = R(i);
    rad.u.push_back(grid.u(i));
    for (int k = 0; k < M; ++k) {
      rad.Psi.push_back(row.at(kPsi, k, Nv));
      rad.Phi.push_back(row.at(kPhi, k, Nv));
      rad.Phi_inner.push_back(i <= j_inner ? row.at(kPhi, k, j_inner) : std::numeric_limits<double>::quiet_NaN());
    }
    for (auto& s : res.slices) {
      record_diag(s.lower, row, i, M, Nv);
      record_diag(s.mid, row, i, M, Nv);
      record_diag(s.upper, row, i, M, Nv);
    }
  };

  std::size_t next_row_sample = 0;
  auto probe_row = [&](int i) {
    while (next_row_sample < row_indices.size() && row_indices[next_row_sample] == i) {
      res.rows.push_back(make_row_sample(R(i - 1), R(i), R(i + 1), i, grid));
      ++next_row_sample;
    }
    for (auto& hs : res.hyperboloids) {
      const double v_star = hs.s * hs.s / grid.u(i);
      if (grid.u(i) > hs.s || v_star > grid.v_max - h) continue;
      if (hs.i_first < 0) hs.i_first = i;
      hs.phi_density.push_back(
          energetics::hyperboloid_density(R(i - 1), R(i), R(i + 1), i, hs.s, kPhi, h, Nv, ctx.ell));
      hs.psi_density.push_back(
          energetics::hyperboloid_density(R(i - 1), R(i), R(i + 1), i, hs.s, kPsi, h, Nv, ctx.ell));
    }
  };

  record_row(0);
  const int sweeps = opts.nonlinear ? 1 + opts.corrector_passes : 1;
  for (int i = 0; i < Nu; ++i) {
    const Row& cur = R(i);
    Row& nxt = R(i + 1);
    for (int f = 0; f < 2; ++f) {
      for (int k = 0; k < M; ++k) {
        const double* c = cur.ptr(f, k);
        double* n = nxt.ptr(f, k);
        if (i >= 2) {
          const double* p1 = R(i - 1).ptr(f, k);
          const double* p2 = R(i - 2).ptr(f, k);
          for (int j = i + 1; j <= Nv; ++j) n[j] = 3.0 * c[j] - 3.0 * p1[j] + p2[j];
        } else if (i == 1) {
          const double* p1 = R(i - 1).ptr(f, k);
          for (int j = i + 1; j <= Nv; ++j) n[j] = 2.0 * c[j] - p1[j];
        } else {
          for (int j = i + 1; j <= Nv; ++j) n[j] = c[j];
        }
        n[i + 1] = 0.0;
      }
    }

    try {
      for (int pass = 0; pass < sweeps; ++pass) {
        if (opts.nonlinear) {
          if (opts.parallel) {
            assemble_row_omp(ctx, i, cur, nxt, src);
          } else {
            assemble_row_serial(ctx, i, cur, nxt, src);
          }
        }
        diamond_sweep(ctx, i, cur, nxt, src, opts.parallel);
      }
    } catch (const DivergenceError& e) {
      res.diverged = true;
      res.divergence_message = e.what();
      res.divergence_u = e.u();
      res.divergence_v = e.v();
      break;
    }
    res.rows_completed = i + 1;
    record_row(i + 1);
    if (i >= 1) probe_row(i);
  }

  rad.compute_UPsi();
  for (const auto& s : res.slices) {
    const bool complete = std::all_of(s.mid.have.begin(), s.mid.have.end(), [](char c) { return c != 0; });
    if (!complete) continue;
    auto e = energetics::flat_sample(s, h, ctx.ell);
    for (const auto& hs : res.hyperboloids) {
      if (hs.s == s.t && hs.i_first >= 0) {
        e.E_hyp_phi = energetics::hyperboloid_energy(hs, kPhi, h);
        e.E_hyp_psi = energetics::hyperboloid_energy(hs, kPsi, h);
      }
    }
    res.energies.push_back(e);
  }
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return res;
}

std::vector<ObservableOrder> convergence_orders(const std::vector<ConvergenceInput>& levels) {
  if (levels.size() < 3) throw ConfigError("convergence", "need at least three resolutions");
  const auto& base = levels.front().radiation;
  // Equal spacings are accepted so a repeated run can be flagged as degenerate.
  const double ratio0 = base.h / levels[1].radiation.h;
  const bool refined = std::abs(ratio0 - 2.0) <= 1e-9;
  if (!refined && std::abs(ratio0 - 1.0) > 1e-9) throw ConfigError("convergence", "grid spacings must halve");
  for (std::size_t l = 1; l < levels.size(); ++l) {
    const auto& r = levels[l].radiation;
    const double ratio = levels[l - 1].radiation.h / r.h;
    if (std::abs(ratio - ratio0) > 1e-9) throw ConfigError("convergence", "grid spacings must halve");
    if (r.v_max != base.v_max || r.M != base.M) throw ConfigError("convergence", "mismatched grids");
    if (std::abs(r.u.back() - base.u.back()) > 1e-9 * std::max(1.0, base.u.back()))
      throw ConfigError("convergence", "mismatched u ranges");
  }

  const int n_coarse = base.size();
  auto column_diff = [&](std::size_t l, bool psi) {
    const auto& a = levels[l].radiation;
    const auto& b = levels[l + 1].radiation;
    const int sa = refined ? 1 << l : 1;
    const int sb = refined ? 1 << (l + 1) : 1;
    double acc = 0.0;
    for (int i = 0; i < n_coarse; ++i) {
      for (int k = 0; k < base.M; ++k) {
        const double qa = psi ? a.psi(i * sa, k) : a.phi(i * sa, k);
        const double qb = psi ? b.psi(i * sb, k) : b.phi(i * sb, k);
        acc += (qa - qb) * (qa - qb);
      }
    }
    return std::sqrt(acc * base.h);
  };
  auto norm_diff = [&](std::size_t l) {
    const auto& a = levels[l].energies;
    const auto& b = levels[l + 1].energies;
    double acc = 0.0;
    for (const auto& ea : a) {
      for (const auto& eb : b) {
        if (std::abs(ea.t - eb.t) < 1e-9) acc += (ea.L2_phi - eb.L2_phi) * (ea.L2_phi - eb.L2_phi);
      }
    }
    return std::sqrt(acc);
  };

  std::vector<ObservableOrder> out(3);
  out[0].name = "Psi(u,v_max)";
  out[1].name = "Phi(u,v_max)";
  out[2].name = "norm_phi(t)";
  for (std::size_t l = 0; l + 1 < levels.size(); ++l) {
    out[0].differences.push_back(column_diff(l, true));
    out[1].differences.push_back(column_diff(l, false));
    out[2].differences.push_back(norm_diff(l));
  }
  for (auto& o : out) {
    for (std::size_t l = 0; l + 1 < o.differences.size(); ++l) {
      const double d0 = o.differences[l];
      const double d1 = o.differences[l + 1];
      if (!refined || !(d0 > 0.0) || !(d1 > 0.0)) {
        o.defined = false;
        o.orders.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      if (d1 >= d0) o.monotone = false;
      o.orders.push_back(std::log2(d0 / d1));
    }
  }
  return out;
}

std::vector<ObservableOrder> convergence_suite(const NullGridSpec& grid, const InitialDataSpec& data,
                                               const ReportPlan& plan, const RunOptions& opts,
                                               int n_levels) {
  if (n_levels < 3) throw ConfigError("convergence", "need at least three resolutions");
  std::vector<ConvergenceInput> levels;
  NullGridSpec g = grid;
  for (int l = 0; l < n_levels; ++l) {
    RunResult r = run(g, data, plan, opts);
    if (r.diverged) throw DivergenceError(r.divergence_u, r.divergence_v, r.divergence_message);
    levels.push_back({std::move(r.radiation), std::move(r.energies)});
    g.h *= 0.5;
  }
  return convergence_orders(levels);
}

}  // namespace nullwave
