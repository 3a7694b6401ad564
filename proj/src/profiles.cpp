#include "nullwave/profiles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <string>

#include "nullwave/error.hpp"
#include "nullwave/quadrature.hpp"

namespace nullwave::profiles {
namespace {

// log1p(x)/x with a Taylor branch near zero; the branch threshold is 2x the
// r/u threshold because x = 2r/u.
ProfileValue log1p_over_x(double x) {
  if (x < 2.0 * kSeriesThreshold) {
    const double s = 1.0 - x * (1.0 / 2.0 - x * (1.0 / 3.0 - x * (1.0 / 4.0 - x * (1.0 / 5.0))));
    return {s, Regime::axis_limit_series};
  }
  return {std::log1p(x) / x, Regime::generic};
}

void require_null_point(Point p, double u_min, const char* name) {
  if (!(p.u > u_min) || !(p.v >= p.u) || !std::isfinite(p.v)) {
    throw DomainError(std::string(name) + ": need u > " + std::to_string(u_min) +
                      " and v >= u, got u=" + std::to_string(p.u) + " v=" + std::to_string(p.v));
  }
}

}  // namespace

ProfileValue phi_L(Point p) {
  require_null_point(p, 0.0, "phi_L");
  const double x = (p.v - p.u) / p.u;
  const ProfileValue l = log1p_over_x(x);
  return {2.0 / p.u * l.value, l.regime};
}

ProfileValue psi_L(Point p) {
  require_null_point(p, 1.0, "psi_L");
  // (ln u / u - ln v / v) / r = 2 (ln u - log1p(x)/x) / (u v),  x = 2r/u.
  const double x = (p.v - p.u) / p.u;
  const ProfileValue l = log1p_over_x(x);
  return {2.0 * (std::log(p.u) - l.value) / (p.u * p.v), l.regime};
}

double D_ell_large_z_coefficient(int ell) {
  return std::ldexp(1.0, ell + 1) * boost::math::beta(ell + 1.0, ell + 1.0);
}

double eval_D_ell(int ell, double z) {
  if (ell < 0) throw DomainError("D_ell: ell must be >= 0");
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("D_ell: z must be positive");

  const double n = ell + 1.0;
  auto integrand_log = [ell, z, n](double y) {
    const double s = std::exp(y);
    const double num = ell == 0 ? 1.0 : std::pow(s - z, ell);
    return num / (std::pow(s, n) * std::pow(1.0 + 0.5 * s, n)) * s;
  };

  const double z_cut = std::max(z, 1.0) * 1e6;
  const double y0 = std::log(z);
  const double y1 = std::log(z_cut);
  const int pieces = static_cast<int>(std::ceil(y1 - y0));
  const double dy = (y1 - y0) / pieces;

  CompensatedSum acc;
  for (int k = 0; k < pieces; ++k) {
    const double a = y0 + k * dy;
    const double b = (k + 1 == pieces) ? y1 : a + dy;
    acc.add(boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand_log, a, b, 12,
                                                                         1e-14));
  }

  // Integrand = 2^{l+1} s^{-l-2} (1 - (l z + 2l + 2)/s + O(s^-2)) beyond z_cut.
  const double scale = std::ldexp(1.0, ell + 1);
  const double tail = scale * (std::pow(z_cut, -n) / n -
                               (ell * z + 2.0 * n) * std::pow(z_cut, -n - 1.0) / (n + 1.0));
  acc.add(tail);
  return acc.value();
}

double higher_mode_profile(int ell, double C_ell, double u, double r) {
  if (!(r > 0.0) || !(u > 0.0)) throw DomainError("higher_mode_profile: need u > 0 and r > 0");
  return C_ell * eval_D_ell(ell, u / r) / (2.0 * r);
}

}  // namespace nullwave::profiles
