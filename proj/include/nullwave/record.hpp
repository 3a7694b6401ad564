#pragma once

#include <cmath>
#include <vector>

// Data captured during a run: the extraction column at v = v_max, values on
// constant-t diagonals, full constant-u rows, and hyperboloid densities.

namespace nullwave {

struct RadiationRecord {
  double h = 0.0;
  double v_max = 0.0;
  int L_max = 0;
  int M = 1;
  std::vector<double> u;
  std::vector<double> Psi;   // [i * M + k]
  std::vector<double> Phi;   // [i * M + k]
  std::vector<double> UPsi;  // filled by compute_UPsi
  // Phi on the inner column v = v_inner (about v_max / 2); NaN for u > v_inner.
  double v_inner = 0.0;
  std::vector<double> Phi_inner;

  int size() const { return static_cast<int>(u.size()); }
  double psi(int i, int k) const { return Psi[static_cast<std::size_t>(i) * M + k]; }
  double phi(int i, int k) const { return Phi[static_cast<std::size_t>(i) * M + k]; }
  double upsi(int i, int k) const { return UPsi[static_cast<std::size_t>(i) * M + k]; }
  double phi_over_lnv(int i, int k) const { return phi(i, k) / std::log(v_max); }
  double phi_inner(int i, int k) const { return Phi_inner[static_cast<std::size_t>(i) * M + k]; }
  /// Slope of Phi against ln v between the two columns: the v -> infinity
  /// limit of Phi / ln v when Phi = A(u) ln v + B(u) + o(1). NaN where the
  /// inner column is not available.
  double phi_log_slope(int i, int k) const {
    return (phi(i, k) - phi_inner(i, k)) / std::log(v_max / v_inner);
  }

  /// U Psi = 2 d_u Psi by centred differences, second-order one-sided at the ends.
  void compute_UPsi();
};

/// Values on the diagonal i + j = K, indexed by i = 0..n-1 (r = (K - 2i) h / 2).
struct SliceDiag {
  int K = 0;
  int n = 0;
  std::vector<double> Phi;  // [k * n + i]
  std::vector<double> Psi;
  std::vector<char> have;   // node recorded

  double t(double h) const { return 0.5 * K * h; }
};

/// Report time t = K h / 2 with K even, plus the two neighbouring diagonals
/// that supply centred null derivatives.
struct SliceSet {
  double t = 0.0;
  SliceDiag lower, mid, upper;
};

/// A full constant-u row with U Phi and d_t Psi from the neighbouring rows.
struct RowSample {
  double u = 0.0;
  double h = 0.0;
  int i = 0;
  int n = 0;                 // nodes j = i .. i + n - 1
  std::vector<double> Phi;   // [k * n + (j - i)]
  std::vector<double> Psi;
  std::vector<double> UPhi;
  std::vector<double> dtPsi;
};

/// Mode-summed energy density on uv = s^2, one value per u-row i_first..i_first+n-1.
struct HyperboloidSeries {
  double s = 0.0;
  int i_first = -1;
  std::vector<double> phi_density;
  std::vector<double> psi_density;
};

}  // namespace nullwave
