#pragma once

#include <vector>

#include "nullwave/grid.hpp"
#include "nullwave/sphharm.hpp"

// Per-row kernels of the diamond scheme. Row i holds both unknowns (Phi, Psi)
// for every mode at nodes j = i..Nv; cell j of row i has corners
// S=(i,j), E=(i,j+1), W=(i+1,j), N=(i+1,j+1).

namespace nullwave {

enum Field : int { kPhi = 0, kPsi = 1 };

class Row {
 public:
  Row() = default;
  Row(int modes, int nodes) : M_(modes), nv_(nodes), data_(2 * static_cast<std::size_t>(modes) * nodes, 0.0) {}

  int modes() const { return M_; }
  int nodes() const { return nv_; }
  double* ptr(int f, int k) { return &data_[(static_cast<std::size_t>(f) * M_ + k) * nv_]; }
  const double* ptr(int f, int k) const { return &data_[(static_cast<std::size_t>(f) * M_ + k) * nv_]; }
  double& at(int f, int k, int j) { return ptr(f, k)[j]; }
  double at(int f, int k, int j) const { return ptr(f, k)[j]; }
  void fill(double x) { std::fill(data_.begin(), data_.end(), x); }
  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

 private:
  int M_ = 0;
  int nv_ = 0;
  std::vector<double> data_;
};

/// Immutable tables shared by all kernel calls of one run.
struct KernelContext {
  KernelContext(const NullGridSpec& g, bool nonlinear_sources);

  NullGridSpec grid;
  sphharm::AngularGrid angular;
  std::vector<int> ell;  // per slot
  bool nonlinear = true;
};

/// Per-thread work arrays for the collocation-grid products.
struct CellScratch {
  explicit CellScratch(const KernelContext& ctx);
  std::vector<double> phi, lap, uphi, vphi, psit;           // coefficients
  std::vector<double> g_phi, g_lap, g_uphi, g_vphi, g_psit;  // grid values
  std::vector<double> p1, p2, p3;                            // grid products
  std::vector<double> a1, a2, a3;                            // projected products
};

/// Sources r (d_t psi)^2 and r Q0(phi,phi) in mode form at the centre of
/// cell (i, j). `cur` is row i, `next` holds (predicted) row i+1.
/// out[k] is the Phi source of slot k, out[M + k] the Psi source.
void assemble_cell(const KernelContext& ctx, int i, int j, const Row& cur, const Row& next,
                   CellScratch& scratch, double* out);

/// Sources for every cell j in [i+1, Nv-1] of row i, written to src.at(f, k, j).
void assemble_row_serial(const KernelContext& ctx, int i, const Row& cur, const Row& next, Row& src);
void assemble_row_omp(const KernelContext& ctx, int i, const Row& cur, const Row& next, Row& src);

/// One diamond update of 4 d_u d_v F + l(l+1) F / r^2 = src, with the
/// potential term on (N + S)/2:
///   N (1 + a) = E + W - S (1 + a) + (h^2/4) src,  a = l(l+1) h^2 / (8 r_c^2).
/// Averaging on E + W instead amplifies by |1 - a| next to the axis, where
/// a = l(l+1)/2, and blows up for l >= 2.
inline double diamond_cell(double E, double W, double S, double src, int ell, double r_c, double h) {
  if (ell == 0) return E + W - S + 0.25 * h * h * src;
  const double a = static_cast<double>(ell * (ell + 1)) * h * h / (8.0 * r_c * r_c);
  return (E + W + 0.25 * h * h * src) / (1.0 + a) - S;
}

/// Fills row i+1 of `next` from row i of `cur` by sweeping outwards from the
/// axis. Throws DivergenceError on a non-finite value or |value| > 1e6.
void diamond_sweep(const KernelContext& ctx, int i, const Row& cur, Row& next, const Row& src,
                   bool parallel);

inline constexpr double kDivergenceThreshold = 1e6;

}  // namespace nullwave
