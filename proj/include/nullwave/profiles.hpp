#pragma once

// Closed-form leading-order profiles of the late-time solution and the
// kernel integral D_ell that shapes the higher harmonic modes.

namespace nullwave::profiles {

/// A point of the (u, v) null plane; r and t are derived.
struct Point {
  double u = 0.0;
  double v = 0.0;

  double r() const { return 0.5 * (v - u); }
  double t() const { return 0.5 * (u + v); }
};

enum class Regime { generic, axis_limit_series };

struct ProfileValue {
  double value = 0.0;
  Regime regime = Regime::generic;
};

/// Below this ratio r/u the profiles are evaluated from their axis series.
inline constexpr double kSeriesThreshold = 1e-4;

/// phi_L = r^{-1} (ln v - ln u). Throws DomainError unless u > 0 and v >= u.
ProfileValue phi_L(Point p);

/// psi_L = r^{-1} (ln(u)/u - ln(v)/v). Throws DomainError unless u > 1 and v >= u.
ProfileValue psi_L(Point p);

inline double eval_phi_L(Point p) { return phi_L(p).value; }
inline double eval_psi_L(Point p) { return psi_L(p).value; }

/// D_ell(z) = int_z^inf (s - z)^ell / (s^{ell+1} (1 + s/2)^{ell+1}) ds,
/// absolute accuracy 1e-10. Throws DomainError for z <= 0 or ell < 0.
double eval_D_ell(int ell, double z);

/// Large-z coefficient K_ell with D_ell(z) ~ K_ell z^{-ell-1}, K_ell = 2^{ell+1} B(ell+1, ell+1).
double D_ell_large_z_coefficient(int ell);

/// Leading profile of the ell-th harmonic of phi: C_ell D_ell(u/r) / (2r).
/// The coefficient C_ell is the retarded-time integral of the ell-th harmonic
/// of (d_t Psi)^2 at null infinity, in the same harmonic normalization as the
/// returned value.
double higher_mode_profile(int ell, double C_ell, double u, double r);

}  // namespace nullwave::profiles
