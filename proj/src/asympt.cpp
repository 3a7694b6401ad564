#include "nullwave/asympt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nullwave/error.hpp"
#include "nullwave/profiles.hpp"
#include "nullwave/quadrature.hpp"
#include "nullwave/sphharm.hpp"

namespace nullwave::asympt {
namespace {

constexpr double kPi = std::numbers::pi;

// Field values of U Psi and Phi / ln v on the points of `grid`, laid out [p * n + i].
struct Directional {
  int n = 0;
  int P = 0;
  std::vector<double> upsi;
  std::vector<double> phi_lnv;
  double at_upsi(int p, int i) const { return upsi[static_cast<std::size_t>(p) * n + i]; }
  double at_phi(int p, int i) const { return phi_lnv[static_cast<std::size_t>(p) * n + i]; }
};

double phi_limit_value(const RadiationRecord& rec, int i, int k, PhiLimit mode) {
  if (mode == PhiLimit::log_slope && rec.Phi_inner.size() == rec.Phi.size()) {
    const double s = rec.phi_log_slope(i, k);
    if (std::isfinite(s)) return s;
  }
  return rec.phi_over_lnv(i, k);
}

Directional directional(const RadiationRecord& rec, const sphharm::AngularGrid& grid, PhiLimit mode) {
  Directional d;
  d.n = rec.size();
  d.P = grid.n_points();
  d.upsi.assign(static_cast<std::size_t>(d.P) * d.n, 0.0);
  d.phi_lnv.assign(static_cast<std::size_t>(d.P) * d.n, 0.0);
  const int M = rec.M;
  const int Mg = grid.n_modes();
  std::vector<double> cu(Mg, 0.0), cp(Mg, 0.0), gu(d.P), gp(d.P);
  for (int i = 0; i < d.n; ++i) {
    for (int k = 0; k < M; ++k) {
      cu[k] = rec.upsi(i, k);
      cp[k] = phi_limit_value(rec, i, k, mode);
    }
    grid.synthesize_into(cu, gu);
    grid.synthesize_into(cp, gp);
    for (int p = 0; p < d.P; ++p) {
      d.upsi[static_cast<std::size_t>(p) * d.n + i] = gu[p];
      d.phi_lnv[static_cast<std::size_t>(p) * d.n + i] = gp[p];
    }
  }
  return d;
}

RadiationRecord with_upsi(RadiationRecord rec) {
  if (rec.UPsi.size() != rec.Psi.size()) rec.compute_UPsi();
  return rec;
}

}  // namespace

std::string phi_limit_name(PhiLimit p) { return p == PhiLimit::plain ? "plain" : "log_slope"; }

AsymptoticConstants compute_constants(RadiationRecord rec_in, PhiLimit phi_limit) {
  const RadiationRecord rec = with_upsi(std::move(rec_in));
  const int L = rec.L_max;
  const int n = rec.size();
  const double h = rec.h;
  const sphharm::AngularGrid grid(L);
  const sphharm::AngularGrid fine(2 * L);
  const int P = grid.n_points();

  AsymptoticConstants out;
  out.L_max = L;
  out.meta.phi_limit = phi_limit;
  out.meta.v_max = rec.v_max;
  out.meta.h = h;
  out.meta.u_max = n > 0 ? rec.u.back() : 0.0;
  out.c3.assign(P, 0.0);
  out.c4.assign(P, 0.0);
  out.C_ell.assign(grid.n_modes(), 0.0);
  if (n == 0) return out;

  const Directional d = directional(rec, grid, phi_limit);
  std::vector<double> buf(n);
  for (int p = 0; p < P; ++p) {
    for (int i = 0; i < n; ++i) buf[i] = d.at_upsi(p, i) * d.at_upsi(p, i);
    out.c3[p] = 0.125 * simpson_uniform(buf, h);
    for (int i = 0; i < n; ++i) buf[i] = d.at_phi(p, i) * d.at_upsi(p, i) * d.at_upsi(p, i);
    out.c4[p] = 0.25 * simpson_uniform(buf, h);
  }

  // c1 through Parseval on the mode coefficients.
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = 0; k < rec.M; ++k) s += rec.upsi(i, k) * rec.upsi(i, k);
    buf[i] = s;
  }
  out.c1 = simpson_uniform(buf, h) / (32.0 * kPi);

  // c2 and c5 on the finer grid, independent of c3/c4.
  {
    const Directional f = directional(rec, fine, phi_limit);
    std::vector<double> b2(n, 0.0), b5(n, 0.0);
    for (int i = 0; i < n; ++i) {
      double s2 = 0.0, s5 = 0.0;
      for (int p = 0; p < f.P; ++p) {
        const double w = fine.weight(p);
        const double g = f.at_upsi(p, i);
        s2 += w * f.at_phi(p, i) * g * g;
        const double dt = 0.5 * g;
        s5 += w * dt * dt * dt * dt;
      }
      b2[i] = s2;
      b5[i] = s5;
    }
    out.c2 = simpson_uniform(b2, h) / (16.0 * kPi);
    out.c5 = std::sqrt(std::max(0.0, simpson_uniform(b5, h)));
  }

  // C_ell from the projection of (U Psi / 2)^2, exact for band-limited input.
  {
    const int Mg = grid.n_modes();
    std::vector<double> per_u(static_cast<std::size_t>(Mg) * n);
    std::vector<double> g(P), coeffs(Mg);
    for (int i = 0; i < n; ++i) {
      for (int p = 0; p < P; ++p) g[p] = 0.25 * d.at_upsi(p, i) * d.at_upsi(p, i);
      grid.analyze_into(g, coeffs);
      for (int k = 0; k < Mg; ++k) per_u[static_cast<std::size_t>(k) * n + i] = coeffs[k];
    }
    for (int k = 0; k < Mg; ++k) {
      out.C_ell[k] = simpson_uniform(std::span<const double>(&per_u[static_cast<std::size_t>(k) * n], n), h);
    }
  }

  double peak = 0.0, tail = 0.0;
  for (int p = 0; p < P; ++p) {
    for (int i = 0; i < n; ++i) peak = std::max(peak, d.at_upsi(p, i) * d.at_upsi(p, i));
    tail = std::max(tail, d.at_upsi(p, n - 1) * d.at_upsi(p, n - 1));
  }
  out.meta.tail_fraction = peak > 0.0 ? tail / peak : 0.0;
  out.meta.tail_decayed = out.meta.tail_fraction <= kTailThreshold;
  return out;
}

IdentityReport check_identities(RadiationRecord rec_in, const AsymptoticConstants& c, double kappa) {
  const RadiationRecord rec = with_upsi(std::move(rec_in));
  const int n = rec.size();
  const sphharm::AngularGrid grid(rec.L_max);
  const int P = grid.n_points();
  IdentityReport rep;
  rep.kappa = kappa;
  if (n == 0) return rep;

  const Directional d = directional(rec, grid, c.meta.phi_limit);
  std::vector<std::vector<double>> F(P);
  int iw = 0;
  std::vector<double> buf(n);
  for (int p = 0; p < P; ++p) {
    for (int i = 0; i < n; ++i) buf[i] = d.at_upsi(p, i) * d.at_upsi(p, i);
    F[p] = cumulative_trapezoid(buf, rec.h);
    const double total = F[p].back();
    int ip = 0;
    if (total > 0.0) {
      while (ip < n - 1 && F[p][ip] < (1.0 - 1e-3) * total) ++ip;
    }
    iw = std::max(iw, ip);
  }
  rep.window_end = rec.u[iw];
  for (int p = 0; p < P; ++p) {
    for (int i = 0; i <= iw; ++i) {
      rep.relation_sup = std::max(rep.relation_sup, std::abs(d.at_phi(p, i) - kappa * F[p][i]));
    }
    rep.relation_plateau = std::max(rep.relation_plateau, std::abs(d.at_phi(p, iw)));
  }

  double c4_max = 0.0;
  for (int p = 0; p < P; ++p) {
    rep.c4_gap = std::max(rep.c4_gap, std::abs(c.c4[p] - 8.0 * kappa * c.c3[p] * c.c3[p]));
    c4_max = std::max(c4_max, std::abs(c.c4[p]));
  }
  rep.c4_gap_rel = c4_max > 0.0 ? rep.c4_gap / c4_max : 0.0;
  rep.c1_mean_gap = std::abs(c.c1 - grid.sphere_mean(c.c3));
  rep.c2_mean_gap = std::abs(c.c2 - grid.sphere_mean(c.c4));
  return rep;
}

RegionTag region_classify(double u, double v, double delta) {
  if (!(u > 0.0) || !(v >= u)) throw DomainError("region_classify: need u > 0 and v >= u");
  if (!(delta > 0.0) || !(delta < 1.0)) throw DomainError("region_classify: need 0 < delta < 1");
  const double r = 0.5 * (v - u);
  const double tol = 1e-12;
  const double b_c = 0.5 * std::pow(u, 1.0 - delta);
  const double b_d = 0.5 * std::pow(u, 1.0 + delta);
  const double b_2 = 0.5 * std::exp(std::pow(u, delta));
  RegionTag t;
  t.C_int = r <= b_c * (1.0 + tol);
  t.C_ext = r >= b_c * (1.0 - tol);
  t.D_int = r <= b_d * (1.0 + tol);
  t.D_ext = r >= b_d * (1.0 - tol);
  t.region_I = t.C_int;
  t.region_II = r >= b_2 * (1.0 - tol);
  if (t.region_I && t.region_II) {
    t.primary = Region::Both;
  } else if (t.region_I) {
    t.primary = Region::RegionI;
  } else if (t.region_II) {
    t.primary = Region::RegionII;
  }
  return t;
}

std::string region_name(Region r) {
  switch (r) {
    case Region::RegionI: return "I";
    case Region::RegionII: return "II";
    case Region::Both: return "I+II";
    case Region::Neither: return "none";
  }
  return "none";
}

ResidualSeries residual_series(const std::vector<ResidualRow>& rows, const std::string& field, bool c_int_only) {
  ResidualSeries s;
  s.field = field;
  for (const auto& r : rows) {
    if (r.field != field || (c_int_only && !r.region.C_int)) continue;
    if (s.u.empty() || s.u.back() != r.u) {
      s.u.push_back(r.u);
      s.sup.push_back(r.residual);
    } else {
      s.sup.back() = std::max(s.sup.back(), r.residual);
    }
  }
  return s;
}

double default_delta_ell(double delta, int ell) { return std::min(0.5 * delta, 1.0 / (4.0 * ell + 4.0)); }

std::vector<ResidualRow> residual_profile(const std::vector<RowSample>& rows, const AsymptoticConstants& c,
                                          const RadiationRecord& rec, double delta, int stride) {
  const int L = c.L_max;
  const sphharm::AngularGrid grid(L);
  const int M = grid.n_modes();
  const int P = grid.n_points();
  const double y00 = 0.5 / std::sqrt(kPi);
  stride = std::max(1, stride);

  std::vector<ResidualRow> out;
  std::vector<double> cPhi(M), cPsi(M), cInf(M), gPhi(P), gPsi(P), gInf(P);
  auto push = [&](double u, double v, const RegionTag& tag, const char* field, double lead, double meas,
                  double res) { out.push_back({u, v, tag, field, lead, meas, res}); };

  for (const auto& row : rows) {
    const double u = row.u;
    const double h = row.h;
    const bool have_inf = row.i < rec.size();
    if (have_inf) {
      for (int k = 0; k < M; ++k) cInf[k] = rec.psi(row.i, k);
      grid.synthesize_into(cInf, gInf);
    }
    for (int q = 1; q < row.n; q += stride) {
      const double v = u + q * h;
      const double r = 0.5 * (v - u);
      const RegionTag tag = region_classify(u, v, delta);
      double sum_phi2 = 0.0;
      for (int k = 0; k < M; ++k) {
        cPhi[k] = row.Phi[static_cast<std::size_t>(k) * row.n + q];
        cPsi[k] = row.Psi[static_cast<std::size_t>(k) * row.n + q];
        sum_phi2 += cPhi[k] * cPhi[k];
      }
      const double phiL = profiles::eval_phi_L({u, v});
      const double psiL = u > 1.0 ? profiles::eval_psi_L({u, v}) : 0.0;

      const double lead_phi = c.c1 * phiL;
      const double phi0 = cPhi[0] * y00 / r;
      if (std::abs(lead_phi) > 1e-14) push(u, v, tag, "phi_l0", lead_phi, phi0, std::abs(phi0 - lead_phi) / std::abs(lead_phi));
      const double lead_psi = c.c2 * psiL;
      const double psibar0 = cPsi[0] * y00 / r + sum_phi2 / (8.0 * kPi * r * r);
      if (std::abs(lead_psi) > 1e-14) push(u, v, tag, "psibar_l0", lead_psi, psibar0, std::abs(psibar0 - lead_psi) / std::abs(lead_psi));

      if (!tag.region_I && !tag.region_II) continue;
      grid.synthesize_into(cPhi, gPhi);
      grid.synthesize_into(cPsi, gPsi);
      if (tag.region_I) {
        ResidualRow best_phi{u, v, tag, "phi_I", 0, 0, -1}, best_psi{u, v, tag, "psibar_I", 0, 0, -1};
        for (int p = 0; p < P; ++p) {
          const double phi = gPhi[p] / r;
          const double psibar = gPsi[p] / r + 0.5 * phi * phi;
          if (std::abs(lead_phi) > 1e-14) {
            const double res = std::abs(phi - lead_phi) / std::abs(lead_phi);
            if (res > best_phi.residual) best_phi = {u, v, tag, "phi_I", lead_phi, phi, res};
          }
          if (std::abs(lead_psi) > 1e-14) {
            const double res = std::abs(psibar - lead_psi) / std::abs(lead_psi);
            if (res > best_psi.residual) best_psi = {u, v, tag, "psibar_I", lead_psi, psibar, res};
          }
        }
        if (best_phi.residual >= 0) out.push_back(best_phi);
        if (best_psi.residual >= 0) out.push_back(best_psi);
      }
      if (tag.region_II) {
        ResidualRow best_phi{u, v, tag, "phi_II", 0, 0, -1}, best_psi{u, v, tag, "psibar_II", 0, 0, -1};
        const double scale = r * v * std::pow(u, 0.25 * delta) / std::log(v);
        for (int p = 0; p < P; ++p) {
          const double phi = gPhi[p] / r;
          const double psibar = gPsi[p] / r + 0.5 * phi * phi;
          const double lead3 = c.c3[p] * phiL;
          if (std::abs(lead3) > 1e-14) {
            const double res = std::abs(phi - lead3) / std::abs(lead3);
            if (res > best_phi.residual) best_phi = {u, v, tag, "phi_II", lead3, phi, res};
          }
          if (have_inf) {
            const double lead4 = gInf[p] / r - c.c4[p] * std::log(v) / (r * v);
            const double res = std::abs(psibar - lead4) * scale;
            if (res > best_psi.residual) best_psi = {u, v, tag, "psibar_II", lead4, psibar, res};
          }
        }
        if (best_phi.residual >= 0) out.push_back(best_phi);
        if (best_psi.residual >= 0) out.push_back(best_psi);
      }
    }
  }
  return out;
}

std::optional<std::vector<ResidualRow>> mode_profile_residual(int ell, const std::vector<RowSample>& rows,
                                                              const AsymptoticConstants& c,
                                                              double delta_ell, int stride) {
  if (ell < 0 || ell > c.L_max) throw DomainError("mode_profile_residual: ell outside band limit");
  bool excited = false;
  for (int m = -ell; m <= ell; ++m) excited |= std::abs(c.C_ell[sphharm::mode_slot(ell, m)]) >= 1e-14;
  if (!excited) return std::nullopt;
  stride = std::max(1, stride);
  const std::string field = "phi_l" + std::to_string(ell);

  std::vector<ResidualRow> out;
  for (const auto& row : rows) {
    const double u = row.u;
    if (!(u > 0.0)) continue;
    const double r_min = std::pow(u, 1.0 - delta_ell);
    for (int q = 1; q < row.n; q += stride) {
      const double v = u + q * row.h;
      const double r = 0.5 * (v - u);
      if (r < r_min) continue;
      const double D = profiles::eval_D_ell(ell, u / r);
      double num = 0.0, den = 0.0, lead_sum = 0.0, meas_sum = 0.0;
      for (int m = -ell; m <= ell; ++m) {
        const int k = sphharm::mode_slot(ell, m);
        const double lead = c.C_ell[k] * D / (2.0 * r);
        const double meas = row.Phi[static_cast<std::size_t>(k) * row.n + q] / r;
        num += (meas - lead) * (meas - lead);
        den += lead * lead;
        lead_sum += lead * lead;
        meas_sum += meas * meas;
      }
      if (den < 1e-28) continue;
      out.push_back({u, v, region_classify(u, v, 2.0 * delta_ell), field, std::sqrt(lead_sum), std::sqrt(meas_sum),
                     std::sqrt(num / den)});
    }
  }
  return out;
}

XDiagnostic x_diagnostic(const std::vector<RowSample>& rows, int L_max, double delta, int stride) {
  const sphharm::AngularGrid grid(L_max);
  const int M = grid.n_modes();
  const int P = grid.n_points();
  stride = std::max(1, stride);
  std::vector<double> cU(M), cT(M), gU(P), gT(P);
  XDiagnostic x;
  for (const auto& row : rows) {
    const double u = row.u;
    if (!(u > 1.0) || row.i <= 0) continue;
    for (int q = 1; q < row.n; q += stride) {
      const double v = u + q * row.h;
      if (!region_classify(u, v, 2.0 * delta).D_ext) continue;
      for (int k = 0; k < M; ++k) {
        cU[k] = row.UPhi[static_cast<std::size_t>(k) * row.n + q];
        cT[k] = row.dtPsi[static_cast<std::size_t>(k) * row.n + q];
      }
      grid.synthesize_into(cU, gU);
      grid.synthesize_into(cT, gT);
      const double lv = std::log(v);
      for (int p = 0; p < P; ++p) {
        const double X = gU[p] - lv * gT[p] * gT[p];
        x.sup_scaled = std::max(x.sup_scaled, std::abs(X) * u / std::log(u));
      }
      ++x.samples;
    }
  }
  return x;
}

}  // namespace nullwave::asympt
