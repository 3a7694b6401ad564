#include "nullwave/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nullwave/error.hpp"

namespace nullwave {

KernelContext::KernelContext(const NullGridSpec& g, bool nonlinear_sources)
    : grid(g), angular(g.L_max), nonlinear(nonlinear_sources) {
  ell.resize(g.n_modes());
  for (int k = 0; k < g.n_modes(); ++k) ell[k] = sphharm::mode_of_slot(k).ell;
}

CellScratch::CellScratch(const KernelContext& ctx) {
  const std::size_t M = ctx.grid.n_modes();
  const std::size_t P = ctx.angular.n_points();
  for (auto* v : {&phi, &lap, &uphi, &vphi, &psit, &a1, &a2, &a3}) v->assign(M, 0.0);
  for (auto* v : {&g_phi, &g_lap, &g_uphi, &g_vphi, &g_psit, &p1, &p2, &p3}) v->assign(P, 0.0);
}

void assemble_cell(const KernelContext& ctx, int i, int j, const Row& cur, const Row& next,
                   CellScratch& s, double* out) {
  const int M = ctx.grid.n_modes();
  const double h = ctx.grid.h;
  const double r = 0.5 * (j - i) * h;
  const double inv_r = 1.0 / r;
  const double inv_r2 = inv_r * inv_r;

  if (!ctx.nonlinear) {
    for (int k = 0; k < 2 * M; ++k) out[k] = 0.0;
    return;
  }

  auto corner_terms = [&](int k, double& c, double& du, double& dv) {
    const double S = cur.at(kPhi, k, j), E = cur.at(kPhi, k, j + 1);
    const double W = next.at(kPhi, k, j), N = next.at(kPhi, k, j + 1);
    c = 0.25 * (S + E + W + N);
    du = (W - S + N - E) / (2.0 * h);
    dv = (E - S + N - W) / (2.0 * h);
  };
  auto psi_dt = [&](int k) { return (next.at(kPsi, k, j + 1) - cur.at(kPsi, k, j)) / h; };

  if (M == 1) {
    const double y = 0.5 / std::sqrt(std::numbers::pi);
    double c, du, dv;
    corner_terms(0, c, du, dv);
    const double uphi = 2.0 * du * inv_r + c * inv_r2;
    const double vphi = 2.0 * dv * inv_r - c * inv_r2;
    const double psit = psi_dt(0) * inv_r;
    out[0] = r * y * psit * psit;
    out[1] = -r * y * uphi * vphi;
    return;
  }

  for (int k = 0; k < M; ++k) {
    double c, du, dv;
    corner_terms(k, c, du, dv);
    s.phi[k] = c * inv_r;
    s.lap[k] = -ctx.ell[k] * (ctx.ell[k] + 1) * s.phi[k];
    s.uphi[k] = 2.0 * du * inv_r + c * inv_r2;
    s.vphi[k] = 2.0 * dv * inv_r - c * inv_r2;
    s.psit[k] = psi_dt(k) * inv_r;
  }
  const auto& ang = ctx.angular;
  ang.synthesize_into(s.phi, s.g_phi);
  ang.synthesize_into(s.lap, s.g_lap);
  ang.synthesize_into(s.uphi, s.g_uphi);
  ang.synthesize_into(s.vphi, s.g_vphi);
  ang.synthesize_into(s.psit, s.g_psit);
  const int P = ang.n_points();
  for (int p = 0; p < P; ++p) {
    s.p1[p] = s.g_psit[p] * s.g_psit[p];
    s.p2[p] = -s.g_uphi[p] * s.g_vphi[p] - s.g_phi[p] * s.g_lap[p] * inv_r2;
    s.p3[p] = s.g_phi[p] * s.g_phi[p];
  }
  ang.analyze_into(s.p1, s.a1);
  ang.analyze_into(s.p2, s.a2);
  ang.analyze_into(s.p3, s.a3);
  // |grad_S phi|^2 projects to -l(l+1)/2 (phi^2)_lm - (phi Lap phi)_lm.
  for (int k = 0; k < M; ++k) {
    out[k] = r * s.a1[k];
    out[M + k] = r * (s.a2[k] - 0.5 * ctx.ell[k] * (ctx.ell[k] + 1) * s.a3[k] * inv_r2);
  }
}

namespace {

void store_cell(Row& src, int M, int j, const double* out) {
  for (int k = 0; k < M; ++k) {
    src.at(kPhi, k, j) = out[k];
    src.at(kPsi, k, j) = out[M + k];
  }
}

}  // namespace

void assemble_row_serial(const KernelContext& ctx, int i, const Row& cur, const Row& next, Row& src) {
  const int M = ctx.grid.n_modes();
  const int Nv = ctx.grid.Nv();
  CellScratch scratch(ctx);
  std::vector<double> out(2 * M);
  for (int j = i + 1; j < Nv; ++j) {
    assemble_cell(ctx, i, j, cur, next, scratch, out.data());
    store_cell(src, M, j, out.data());
  }
}

void assemble_row_omp(const KernelContext& ctx, int i, const Row& cur, const Row& next, Row& src) {
  const int M = ctx.grid.n_modes();
  const int Nv = ctx.grid.Nv();
#pragma omp parallel
  {
    CellScratch scratch(ctx);
    std::vector<double> out(2 * M);
#pragma omp for schedule(static)
    for (int j = i + 1; j < Nv; ++j) {
      assemble_cell(ctx, i, j, cur, next, scratch, out.data());
      store_cell(src, M, j, out.data());
    }
  }
}

void diamond_sweep(const KernelContext& ctx, int i, const Row& cur, Row& next, const Row& src,
                   bool parallel) {
  const int M = ctx.grid.n_modes();
  const int Nv = ctx.grid.Nv();
  const double h = ctx.grid.h;
  std::vector<int> bad(2 * M, -1);

#pragma omp parallel for schedule(static) if (parallel && M > 1)
  for (int fk = 0; fk < 2 * M; ++fk) {
    const int f = fk / M;
    const int k = fk % M;
    const int ell = ctx.ell[k];
    const double* c = cur.ptr(f, k);
    const double* s = src.ptr(f, k);
    double* n = next.ptr(f, k);
    n[i + 1] = 0.0;
    for (int j = i + 1; j < Nv; ++j) {
      const double r_c = 0.5 * (j - i) * h;
      const double val = diamond_cell(c[j + 1], n[j], c[j], s[j], ell, r_c, h);
      n[j + 1] = val;
      if (bad[fk] < 0 && !(std::abs(val) <= kDivergenceThreshold)) bad[fk] = j + 1;
    }
  }

  for (int fk = 0; fk < 2 * M; ++fk) {
    if (bad[fk] >= 0) {
      const double u = (i + 1) * h;
      const double v = bad[fk] * h;
      throw DivergenceError(u, v,
                            std::string(fk / M == kPhi ? "Phi" : "Psi") + " mode slot " +
                                std::to_string(fk % M) + " left the finite range at u=" +
                                std::to_string(u) + " v=" + std::to_string(v));
    }
  }
}

}  // namespace nullwave
