#pragma once

#include <vector>

#include "nullwave/sphharm.hpp"

namespace nullwave {

/// Uniform double-null lattice u_i = i h, v_j = j h, 0 <= i <= Nu, i <= j <= Nv.
struct NullGridSpec {
  double h = 0.1;
  double u_max = 50.0;
  double v_max = 100.0;
  double V0 = 2.0;
  int L_max = 0;

  int Nu() const;
  int Nv() const;
  int n_modes() const { return sphharm::mode_count(L_max); }
  double u(int i) const { return i * h; }
  double v(int j) const { return j * h; }
  /// Throws ConfigError naming the offending "grid.*" field.
  void validate() const;
};

struct ModeWeight {
  int ell = 0;
  int m = 0;
  double weight = 1.0;
};

/// Cone data for one unknown: the field (not the mode coefficient) restricted
/// to u = 0 is amplitude * bump(v) * sum_k weight_k sqrt(4 pi) Y_k, so a single
/// (0,0) entry of weight 1 gives the radial field amplitude * bump(v).
struct FieldData {
  double amplitude = 0.0;
  double a = 1.0;
  double b = 2.0;
  std::vector<ModeWeight> modes{{0, 0, 1.0}};
};

struct InitialDataSpec {
  FieldData phi;
  FieldData psi;

  /// `section` is used in error field paths ("phi.support", ...).
  void validate(const NullGridSpec& grid) const;
};

/// exp(-1/(1-x^2)) with x mapping [a,b] onto [-1,1]; zero outside (a,b).
double bump(double v, double a, double b);

/// Mode coefficients of the cone data: out[k * (Nv+1) + j] for slot k, node j.
std::vector<double> cone_coefficients(const FieldData& data, const NullGridSpec& grid);

}  // namespace nullwave
