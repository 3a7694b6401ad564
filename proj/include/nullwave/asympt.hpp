#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nullwave/record.hpp"

namespace nullwave::asympt {

/// How (Phi / ln v) at null infinity is estimated from the record: `plain`
/// divides Phi(u, v_max) by ln v_max (error O(1/ln v_max)); `log_slope` uses
/// the slope of Phi against ln v between v_max/2 and v_max (error O(ln v/v)),
/// falling back to `plain` where u exceeds the inner column.
enum class PhiLimit { plain, log_slope };

std::string phi_limit_name(PhiLimit p);

struct TruncationMeta {
  PhiLimit phi_limit = PhiLimit::plain;
  double v_max = 0.0;
  double h = 0.0;
  double u_max = 0.0;
  std::string rule = "simpson";
  double tail_fraction = 0.0;  // |U Psi(u_max)|^2 / peak, worst direction
  bool tail_decayed = true;    // tail_fraction <= 1e-3
};

/// Constants from the radiation field at v = v_max. c3 and c4 are sampled on
/// the AngularGrid(L_max) points; C_ell[slot] is the u-integral of the
/// (l,m) coefficient of (d_t Psi)^2 with d_t Psi = U Psi / 2.
struct AsymptoticConstants {
  int L_max = 0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c5 = 0.0;
  std::vector<double> c3;
  std::vector<double> c4;
  std::vector<double> C_ell;
  TruncationMeta meta;
};

inline constexpr double kTailThreshold = 1e-3;

/// Computes U Psi first if the record does not carry it.
AsymptoticConstants compute_constants(RadiationRecord rec, PhiLimit phi_limit = PhiLimit::plain);

/// Coefficient of the integrated null-infinity relation
/// (Phi / ln v)(u) = kappa * int_0^u (U Psi)^2. kRelationKappa follows from
/// V(U Phi) = (d_t Psi)^2 / r with U = 2 d_u and reproduces Phi / ln v -> c3;
/// kRelationKappaPrinted is the quarter coefficient in the source statement.
inline constexpr double kRelationKappa = 0.125;
inline constexpr double kRelationKappaPrinted = 0.25;

struct IdentityReport {
  double kappa = kRelationKappa;
  double window_end = 0.0;          // u where int (U Psi)^2 reaches 99.9 %
  double relation_sup = 0.0;        // sup over u <= window_end and directions
  double relation_plateau = 0.0;    // max_w (Phi / ln v)(window_end, w)
  double c4_gap = 0.0;              // max_w |c4 - 8 kappa c3^2|
  double c4_gap_rel = 0.0;          // c4_gap / max_w |c4|
  double c1_mean_gap = 0.0;         // |c1 - sphere_mean(c3)|
  double c2_mean_gap = 0.0;         // |c2 - sphere_mean(c4)|
};

/// Uses the same (Phi / ln v) estimator as `consts`.
IdentityReport check_identities(RadiationRecord rec, const AsymptoticConstants& consts,
                                double kappa = kRelationKappa);

enum class Region { RegionI, RegionII, Both, Neither };

/// Region I: r <= u^{1-delta}/2. Region II: r >= exp(u^delta)/2. For moderate
/// u both can hold at once, which `primary = Both` reports.
struct RegionTag {
  Region primary = Region::Neither;
  bool region_I = false;
  bool region_II = false;
  bool C_int = false;  // r <= u^{1-delta}/2
  bool C_ext = false;  // r >= u^{1-delta}/2
  bool D_int = false;  // r <= u^{1+delta}/2
  bool D_ext = false;  // r >= u^{1+delta}/2
};

RegionTag region_classify(double u, double v, double delta);
std::string region_name(Region r);

struct ResidualRow {
  double u = 0.0;
  double v = 0.0;
  RegionTag region;
  std::string field;
  double leading = 0.0;
  double measured = 0.0;
  double residual = 0.0;
};

/// Comparisons against the leading profiles on recorded constant-u rows.
/// Fields: phi_l0 / psibar_l0 (spherical means, whole domain), phi_I /
/// psibar_I (Region I, worst direction), phi_II / psibar_II (Region II).
/// `stride` thins the v-nodes of each row.
std::vector<ResidualRow> residual_profile(const std::vector<RowSample>& rows,
                                          const AsymptoticConstants& consts,
                                          const RadiationRecord& rec, double delta, int stride);

/// phi_lm against C_lm D_l(u/r) / (2r) for r >= u^{1-delta_ell}, aggregated
/// over m as an l2 ratio. Returns nullopt when every |C_lm| < 1e-14.
std::optional<std::vector<ResidualRow>> mode_profile_residual(int ell, const std::vector<RowSample>& rows,
                                                              const AsymptoticConstants& consts,
                                                              double delta_ell, int stride);

/// Per-u supremum of one residual field, in row order.
struct ResidualSeries {
  std::string field;
  std::vector<double> u;
  std::vector<double> sup;
};

/// `c_int_only` keeps nodes with r <= u^{1-delta}/2 (the C_int flag).
ResidualSeries residual_series(const std::vector<ResidualRow>& rows, const std::string& field, bool c_int_only);

/// delta_ell = min(delta/2, 1/(4 ell + 4)).
double default_delta_ell(double delta, int ell);

struct XDiagnostic {
  double sup_scaled = 0.0;  // sup |X| u / ln u
  int samples = 0;
};

/// X = U Phi - ln v (d_t Psi)^2 over nodes of D_ext at 2 delta with u > 1.
XDiagnostic x_diagnostic(const std::vector<RowSample>& rows, int L_max, double delta, int stride);

}  // namespace nullwave::asympt
