#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "nullwave/kernels.hpp"
#include "nullwave/record.hpp"

namespace nullwave::energetics {

struct EnergySample {
  double t = 0.0;
  double L2_phi = 0.0;
  double L2_dphi = 0.0;
  double L2_psi = 0.0;
  double L2_dpsi = 0.0;
  double cascade_ratio = 0.0;
  double E_hyp_phi = std::numeric_limits<double>::quiet_NaN();
  double E_hyp_psi = std::numeric_limits<double>::quiet_NaN();
};

struct FlatNorms {
  double f2 = 0.0;     // ||f||^2
  double dt2 = 0.0;    // ||d_t f||^2
  double grad2 = 0.0;  // ||grad f||^2
};

/// Flat-slice norms of one unknown over the ball r <= t from the recorded
/// diagonals; ell[k] is the degree of slot k. Throws DomainError if the
/// middle diagonal is incomplete.
FlatNorms flat_norms(const SliceSet& slice, Field f, double h, std::span<const int> ell);

/// Both unknowns, with cascade ratio ||d phi|| / ||phi|| (0 when ||phi|| = 0).
EnergySample flat_sample(const SliceSet& slice, double h, std::span<const int> ell);

/// Same norms evaluated directly on the angular collocation grid; used as a
/// Parseval cross-check of flat_norms.
FlatNorms flat_norms_collocation(const SliceSet& slice, Field f, double h, int L_max);

/// Energy density on uv = s^2 at row i, summed over modes and integrated
/// over the sphere: Phi_t^2 + 2(r/t) Phi_t (Phi_r - Phi/r) + (Phi_r - Phi/r)^2
/// + l(l+1) Phi^2/r^2. Rows i-1, i, i+1 must be valid.
double hyperboloid_density(const Row& prev, const Row& cur, const Row& next, int i, double s,
                           Field f, double h, int Nv, std::span<const int> ell);

/// Integral of the density series with Jacobian (1 + s^2/u^2)/2 over u.
double hyperboloid_energy(const HyperboloidSeries& series, Field f, double h);

struct FitResult {
  enum class Model { power, logarithmic } model = Model::power;
  double a = 0.0;  // power: exponent p of c t^p; log: slope of a ln t + b
  double b = 0.0;  // power: ln c; log: intercept
  double t_lo = 0.0;
  double t_hi = 0.0;
  int n = 0;
  double residual_rms = 0.0;
};

/// Least squares in log-log (power) or lin-vs-ln t (logarithmic) coordinates
/// over samples with t in [t_lo, t_hi]. Throws DomainError for fewer than 8
/// samples or a window spanning less than a factor 5.
FitResult fit_growth(std::span<const double> t, std::span<const double> y, FitResult::Model model,
                     double t_lo, double t_hi);

std::vector<double> cascade_ratio(std::span<const EnergySample> samples);

/// Growth-law summary of a series of flat samples.
struct EnergySummary {
  FitResult phi_fit;              // power law of ||phi|| on the fit_phi window
  double dphi_ratio_min = 0.0;    // ||d phi|| / ln t on the fit_dphi window
  double dphi_ratio_max = 0.0;
  double dphi_ratio_final = 0.0;  // value at the last sample of the window
  double dphi_variation = 0.0;    // (max - min) / final
  int dphi_samples = 0;
  double psi_ref_t = 0.0;         // sample nearest t = 10
  double psi_bound_ratio = 0.0;   // max (||psi|| + ||d psi||) / value at psi_ref_t
  double cascade_spearman = 0.0;  // rank correlation with t over [t_last / 10, t_last]
  int cascade_samples = 0;
};

/// Fit failures (too few samples) leave phi_fit.n = 0 and NaN slope.
EnergySummary summarize(std::span<const EnergySample> samples, double fit_phi_lo, double fit_phi_hi,
                        double fit_dphi_lo, double fit_dphi_hi);

}  // namespace nullwave::energetics
