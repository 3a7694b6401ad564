#include "nullwave/energetics.hpp"

#include <boost/math/statistics/linear_regression.hpp>
#include <algorithm>
#include <cmath>
#include <limits>

#include "nullwave/error.hpp"
#include "nullwave/quadrature.hpp"
#include "nullwave/sphharm.hpp"
#include "nullwave/stats.hpp"

namespace nullwave::energetics {
namespace {

// Null derivatives of slot k at node i of the middle diagonal, centred where
// both neighbouring diagonals carry the node, one-sided otherwise.
struct NodeDerivs {
  double value = 0.0;
  double du = 0.0;
  double dv = 0.0;
};

NodeDerivs node_derivs(const SliceSet& s, Field f, int k, int i, double h) {
  auto get = [&](const SliceDiag& d, int idx, double& out) {
    if (idx < 0 || idx >= d.n || !d.have[idx]) return false;
    const auto& arr = (f == kPhi) ? d.Phi : d.Psi;
    out = arr[static_cast<std::size_t>(k) * d.n + idx];
    return true;
  };
  NodeDerivs nd;
  get(s.mid, i, nd.value);
  const int j = s.mid.K - i;
  double up = 0.0, lo = 0.0;
  const bool has_up_v = get(s.upper, i, up);
  const bool has_lo_v = (j - 1 >= i) && get(s.lower, i, lo);
  if (has_up_v && has_lo_v) {
    nd.dv = (up - lo) / (2.0 * h);
  } else if (has_up_v) {
    nd.dv = (up - nd.value) / h;
  } else if (has_lo_v) {
    nd.dv = (nd.value - lo) / h;
  }
  const bool has_up_u = (j >= i + 1) && get(s.upper, i + 1, up);
  const bool has_lo_u = get(s.lower, i - 1, lo);
  if (has_up_u && has_lo_u) {
    nd.du = (up - lo) / (2.0 * h);
  } else if (has_up_u) {
    nd.du = (up - nd.value) / h;
  } else if (has_lo_u) {
    nd.du = (nd.value - lo) / h;
  }
  return nd;
}

void require_complete(const SliceSet& s) {
  for (int i = 0; i < s.mid.n; ++i) {
    if (!s.mid.have[i]) throw DomainError("slice at t=" + std::to_string(s.t) + " is incomplete");
  }
}

double lagrange4(const double* y, double x, double& dydx) {
  // Nodes at 0,1,2,3 (unit spacing).
  const double l0 = -(x - 1) * (x - 2) * (x - 3) / 6.0;
  const double l1 = x * (x - 2) * (x - 3) / 2.0;
  const double l2 = -x * (x - 1) * (x - 3) / 2.0;
  const double l3 = x * (x - 1) * (x - 2) / 6.0;
  const double d0 = -((x - 2) * (x - 3) + (x - 1) * (x - 3) + (x - 1) * (x - 2)) / 6.0;
  const double d1 = ((x - 2) * (x - 3) + x * (x - 3) + x * (x - 2)) / 2.0;
  const double d2 = -((x - 1) * (x - 3) + x * (x - 3) + x * (x - 1)) / 2.0;
  const double d3 = ((x - 1) * (x - 2) + x * (x - 2) + x * (x - 1)) / 6.0;
  dydx = d0 * y[0] + d1 * y[1] + d2 * y[2] + d3 * y[3];
  return l0 * y[0] + l1 * y[1] + l2 * y[2] + l3 * y[3];
}

}  // namespace

FlatNorms flat_norms(const SliceSet& s, Field f, double h, std::span<const int> ell) {
  require_complete(s);
  const int n = s.mid.n;
  const int M = static_cast<int>(ell.size());
  // Index q = 0 is the axis (r = 0), q = n-1 the outer edge r = t.
  std::vector<double> g_f2(n, 0.0), g_dt(n, 0.0), g_grad(n, 0.0);
  for (int q = 1; q < n; ++q) {
    const int i = s.mid.K / 2 - q;
    const double r = q * h;
    for (int k = 0; k < M; ++k) {
      const NodeDerivs nd = node_derivs(s, f, k, i, h);
      const double ft = nd.du + nd.dv;
      const double fr = nd.dv - nd.du - nd.value / r;
      g_f2[q] += nd.value * nd.value;
      g_dt[q] += ft * ft;
      g_grad[q] += fr * fr + ell[k] * (ell[k] + 1) * nd.value * nd.value / (r * r);
    }
  }
  return {simpson_uniform(g_f2, h), simpson_uniform(g_dt, h), simpson_uniform(g_grad, h)};
}

FlatNorms flat_norms_collocation(const SliceSet& s, Field f, double h, int L_max) {
  require_complete(s);
  const sphharm::AngularGrid grid(L_max);
  const int M = grid.n_modes();
  const int P = grid.n_points();
  const int n = s.mid.n;
  std::vector<double> g_f2(n, 0.0), g_dt(n, 0.0), g_grad(n, 0.0);
  std::vector<double> val(M), ft(M), fr(M);
  for (int q = 1; q < n; ++q) {
    const int i = s.mid.K / 2 - q;
    const double r = q * h;
    for (int k = 0; k < M; ++k) {
      const NodeDerivs nd = node_derivs(s, f, k, i, h);
      val[k] = nd.value;
      ft[k] = nd.du + nd.dv;
      fr[k] = nd.dv - nd.du - nd.value / r;
    }
    const auto gv = grid.synthesize(val);
    const auto gt = grid.synthesize(ft);
    const auto gr = grid.synthesize(fr);
    const auto gs = grid.angular_gradient_sq(val);
    for (int p = 0; p < P; ++p) {
      const double w = grid.weight(p);
      g_f2[q] += w * gv[p] * gv[p];
      g_dt[q] += w * gt[p] * gt[p];
      g_grad[q] += w * (gr[p] * gr[p] + gs[p] / (r * r));
    }
  }
  return {simpson_uniform(g_f2, h), simpson_uniform(g_dt, h), simpson_uniform(g_grad, h)};
}

EnergySample flat_sample(const SliceSet& s, double h, std::span<const int> ell) {
  const FlatNorms a = flat_norms(s, kPhi, h, ell);
  const FlatNorms b = flat_norms(s, kPsi, h, ell);
  EnergySample e;
  e.t = s.t;
  e.L2_phi = std::sqrt(a.f2);
  e.L2_dphi = std::sqrt(a.dt2 + a.grad2);
  e.L2_psi = std::sqrt(b.f2);
  e.L2_dpsi = std::sqrt(b.dt2 + b.grad2);
  e.cascade_ratio = e.L2_phi > 0.0 ? e.L2_dphi / e.L2_phi : 0.0;
  return e;
}

double hyperboloid_density(const Row& prev, const Row& cur, const Row& next, int i, double s,
                           Field f, double h, int Nv, std::span<const int> ell) {
  const double u = i * h;
  const double v = s * s / u;
  const double r = 0.5 * (v - u);
  const double t = 0.5 * (v + u);
  if (r <= 0.0 || Nv - 3 < i + 1) return 0.0;
  const int j0 = static_cast<int>(std::floor(v / h));
  const int base = std::clamp(j0 - 1, i + 1, Nv - 3);
  const double x = v / h - base;
  double acc = 0.0;
  for (std::size_t k = 0; k < ell.size(); ++k) {
    double dv, dummy;
    const double val = lagrange4(cur.ptr(f, static_cast<int>(k)) + base, x, dv);
    const double vn = lagrange4(next.ptr(f, static_cast<int>(k)) + base, x, dummy);
    const double vp = lagrange4(prev.ptr(f, static_cast<int>(k)) + base, x, dummy);
    dv /= h;
    const double du = (vn - vp) / (2.0 * h);
    const double ft = du + dv;
    const double fr = dv - du - val / r;
    acc += ft * ft + 2.0 * (r / t) * ft * fr + fr * fr + ell[k] * (ell[k] + 1) * val * val / (r * r);
  }
  return acc;
}

double hyperboloid_energy(const HyperboloidSeries& hs, Field f, double h) {
  const auto& dens = (f == kPhi) ? hs.phi_density : hs.psi_density;
  std::vector<double> g(dens.size());
  for (std::size_t q = 0; q < dens.size(); ++q) {
    const double u = (hs.i_first + static_cast<double>(q)) * h;
    g[q] = dens[q] * 0.5 * (1.0 + hs.s * hs.s / (u * u));
  }
  return simpson_uniform(g, h);
}

FitResult fit_growth(std::span<const double> t, std::span<const double> y, FitResult::Model model,
                     double t_lo, double t_hi) {
  if (t.size() != y.size()) throw SizeMismatch("fit_growth: t and y differ in length");
  std::vector<double> xs, ys;
  double lo = INFINITY, hi = 0.0;
  for (std::size_t q = 0; q < t.size(); ++q) {
    if (t[q] < t_lo || t[q] > t_hi || !(t[q] > 0.0)) continue;
    if (model == FitResult::Model::power && !(y[q] > 0.0)) continue;
    xs.push_back(std::log(t[q]));
    ys.push_back(model == FitResult::Model::power ? std::log(y[q]) : y[q]);
    lo = std::min(lo, t[q]);
    hi = std::max(hi, t[q]);
  }
  if (xs.size() < 8) throw DomainError("fit_growth: fewer than 8 samples in window");
  if (hi < 5.0 * lo) throw DomainError("fit_growth: window spans less than a factor 5 in t");

  const auto [c0, c1] = boost::math::statistics::simple_ordinary_least_squares(xs, ys);
  FitResult fr;
  fr.model = model;
  fr.a = c1;
  fr.b = c0;
  fr.t_lo = lo;
  fr.t_hi = hi;
  fr.n = static_cast<int>(xs.size());
  double ss = 0.0;
  for (std::size_t q = 0; q < xs.size(); ++q) {
    const double e = ys[q] - (c0 + c1 * xs[q]);
    ss += e * e;
  }
  fr.residual_rms = std::sqrt(ss / xs.size());
  return fr;
}

std::vector<double> cascade_ratio(std::span<const EnergySample> samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& e : samples) out.push_back(e.L2_phi > 0.0 ? e.L2_dphi / e.L2_phi : 0.0);
  return out;
}

EnergySummary summarize(std::span<const EnergySample> samples, double fit_phi_lo, double fit_phi_hi,
                        double fit_dphi_lo, double fit_dphi_hi) {
  EnergySummary out;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> t, phi;
  for (const auto& e : samples) {
    t.push_back(e.t);
    phi.push_back(e.L2_phi);
  }
  try {
    out.phi_fit = fit_growth(t, phi, FitResult::Model::power, fit_phi_lo, fit_phi_hi);
  } catch (const std::exception&) {
    out.phi_fit.a = nan;
    out.phi_fit.t_lo = fit_phi_lo;
    out.phi_fit.t_hi = fit_phi_hi;
  }

  out.dphi_ratio_min = nan;
  out.dphi_ratio_max = nan;
  out.dphi_ratio_final = nan;
  out.dphi_variation = nan;
  for (const auto& e : samples) {
    if (e.t < fit_dphi_lo || e.t > fit_dphi_hi || e.t <= 1.0) continue;
    const double q = e.L2_dphi / std::log(e.t);
    if (out.dphi_samples == 0) {
      out.dphi_ratio_min = out.dphi_ratio_max = q;
    } else {
      out.dphi_ratio_min = std::min(out.dphi_ratio_min, q);
      out.dphi_ratio_max = std::max(out.dphi_ratio_max, q);
    }
    out.dphi_ratio_final = q;
    ++out.dphi_samples;
  }
  if (out.dphi_samples > 0 && out.dphi_ratio_final > 0.0)
    out.dphi_variation = (out.dphi_ratio_max - out.dphi_ratio_min) / out.dphi_ratio_final;

  out.psi_bound_ratio = nan;
  if (!samples.empty()) {
    const EnergySample* ref = &samples.front();
    double peak = 0.0;
    for (const auto& e : samples) {
      if (std::abs(e.t - 10.0) < std::abs(ref->t - 10.0)) ref = &e;
      peak = std::max(peak, e.L2_psi + e.L2_dpsi);
    }
    out.psi_ref_t = ref->t;
    const double base = ref->L2_psi + ref->L2_dpsi;
    out.psi_bound_ratio = base > 0.0 ? peak / base : (peak > 0.0 ? nan : 1.0);

    const double t_last = samples.back().t;
    std::vector<double> tt, rr;
    for (const auto& e : samples) {
      if (e.t < t_last / 10.0) continue;
      tt.push_back(e.t);
      rr.push_back(e.cascade_ratio);
    }
    out.cascade_samples = static_cast<int>(tt.size());
    out.cascade_spearman = tt.size() >= 3 ? stats::spearman(tt, rr) : nan;
  }
  return out;
}

}  // namespace nullwave::energetics
