#pragma once

#include <span>
#include <vector>

// Real orthonormal spherical harmonics on a Gauss-Legendre x uniform grid.
//
// Mode (l, m) lives at slot l*l + l + m. For m > 0 the harmonic is
// sqrt(2) N P_l^m(cos th) cos(m ph), for m < 0 it is sqrt(2) N P_l^|m| sin(|m| ph),
// without the Condon-Shortley phase, so Y_1^1 is proportional to +sin th cos ph.

namespace nullwave::sphharm {

struct ModeIndex {
  int ell = 0;
  int m = 0;
};

constexpr int mode_slot(int ell, int m) { return ell * ell + ell + m; }
constexpr int mode_count(int L) { return (L + 1) * (L + 1); }
ModeIndex mode_of_slot(int slot);

using ModeCoeffs = std::vector<double>;

/// Collocation grid for band limit L. The grid resolves products of two
/// band-L fields: n_theta = 2L+1 Gauss-Legendre nodes and n_phi = 4L+1
/// uniform nodes, so analysis of any quadratic expression back to band L is
/// alias-free.
class AngularGrid {
 public:
  explicit AngularGrid(int L_max);

  int L_max() const { return L_; }
  int n_modes() const { return mode_count(L_); }
  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  int n_points() const { return n_theta_ * n_phi_; }

  /// Point p = it * n_phi + ip.
  double theta(int p) const { return theta_[p / n_phi_]; }
  double phi(int p) const { return phi_[p % n_phi_]; }
  /// Quadrature weight of point p; all weights sum to 4 pi.
  double weight(int p) const { return weights_[p]; }
  std::span<const double> weights() const { return weights_; }

  /// Value of mode `slot` (any slot up to band 2L) at point p.
  double Y(int slot, int p) const { return table_[static_cast<std::size_t>(slot) * n_points() + p]; }

  ModeCoeffs analyze(std::span<const double> values) const;
  /// Projection onto all modes up to band 2L (exact for products of band-L fields).
  ModeCoeffs analyze_double_band(std::span<const double> values) const;
  std::vector<double> synthesize(std::span<const double> coeffs) const;
  void synthesize_into(std::span<const double> coeffs, std::span<double> out) const;
  void analyze_into(std::span<const double> values, std::span<double> out) const;

  /// |grad_S f|^2 at the grid points from the identity 1/2 Lap(f^2) - f Lap f.
  /// Throws BandwidthError when f has more than (L+1)^2 coefficients.
  std::vector<double> angular_gradient_sq(std::span<const double> f) const;

  double sphere_mean(std::span<const double> values) const;

 private:
  void analyze_band(std::span<const double> values, int band, std::span<double> out) const;
  void synthesize_band(std::span<const double> coeffs, int band, std::span<double> out) const;
  void check_grid_size(std::size_t n) const;

  int L_;
  int n_theta_;
  int n_phi_;
  std::vector<double> theta_;
  std::vector<double> phi_;
  std::vector<double> weights_;
  std::vector<double> table_;  // slot-major, bands up to 2L
};

/// Coefficient-wise multiplication by -l(l+1).
ModeCoeffs laplace_beltrami(std::span<const double> coeffs);

/// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace nullwave::sphharm
