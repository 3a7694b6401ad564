#include "nullwave/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nullwave/error.hpp"

namespace nullwave {
namespace {

int steps(double extent, double h) { return static_cast<int>(std::lround(extent / h)); }

bool is_multiple(double extent, double h) {
  const double n = extent / h;
  return std::abs(n - std::round(n)) <= 1e-9 * std::max(1.0, n);
}

void validate_field(const FieldData& d, const NullGridSpec& grid, const std::string& section) {
  if (!(d.amplitude >= 0.0) || !std::isfinite(d.amplitude))
    throw ConfigError(section + ".amplitude", "must be finite and >= 0");
  if (!(d.a > 0.0) || !(d.b > d.a)) throw ConfigError(section + ".support", "need 0 < a < b");
  if (d.b > grid.V0 + 1e-12) throw ConfigError(section + ".support", "support exceeds V0");
  for (const auto& mw : d.modes) {
    if (mw.ell < 0 || mw.ell > grid.L_max || std::abs(mw.m) > mw.ell)
      throw ConfigError(section + ".modes",
                        "mode (" + std::to_string(mw.ell) + "," + std::to_string(mw.m) +
                            ") outside band limit L_max=" + std::to_string(grid.L_max));
    if (!std::isfinite(mw.weight)) throw ConfigError(section + ".modes", "non-finite weight");
  }
}

}  // namespace

int NullGridSpec::Nu() const { return steps(u_max, h); }
int NullGridSpec::Nv() const { return steps(v_max, h); }

void NullGridSpec::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("grid.h", "must be positive");
  if (!(v_max > 0.0)) throw ConfigError("grid.v_max", "must be positive");
  if (!(V0 > 0.0) || !(V0 < v_max)) throw ConfigError("grid.V0", "need 0 < V0 < v_max");
  if (!(u_max > 0.0) || u_max > v_max) throw ConfigError("grid.u_max", "need 0 < u_max <= v_max");
  if (!is_multiple(v_max, h)) throw ConfigError("grid.v_max", "must be an integer multiple of h");
  if (!is_multiple(u_max, h)) throw ConfigError("grid.u_max", "must be an integer multiple of h");
  if (L_max < 0 || L_max > 8) throw ConfigError("grid.L_max", "must lie in [0, 8]");
}

void InitialDataSpec::validate(const NullGridSpec& grid) const {
  validate_field(phi, grid, "phi");
  validate_field(psi, grid, "psi");
}

double bump(double v, double a, double b) {
  if (v <= a || v >= b) return 0.0;
  const double x = (2.0 * v - a - b) / (b - a);
  return std::exp(-1.0 / (1.0 - x * x));
}

std::vector<double> cone_coefficients(const FieldData& data, const NullGridSpec& grid) {
  const int M = grid.n_modes();
  const int nv = grid.Nv() + 1;
  std::vector<double> out(static_cast<std::size_t>(M) * nv, 0.0);
  if (data.amplitude == 0.0) return out;
  const double norm = std::sqrt(4.0 * std::numbers::pi);
  for (const auto& mw : data.modes) {
    const int k = sphharm::mode_slot(mw.ell, mw.m);
    for (int j = 1; j < nv; ++j) {
      out[static_cast<std::size_t>(k) * nv + j] +=
          data.amplitude * mw.weight * norm * bump(grid.v(j), data.a, data.b);
    }
  }
  return out;
}

}  // namespace nullwave
