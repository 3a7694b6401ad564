#include "nullwave/sphharm.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "nullwave/error.hpp"
#include "nullwave/quadrature.hpp"

namespace nullwave::sphharm {

ModeIndex mode_of_slot(int slot) {
  int ell = static_cast<int>(std::sqrt(static_cast<double>(slot)));
  while (ell * ell > slot) --ell;
  while ((ell + 1) * (ell + 1) <= slot) ++ell;
  return {ell, slot - ell * ell - ell};
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const double dx = boost::math::legendre_p(n, x) / boost::math::legendre_p_prime(n, x);
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = boost::math::legendre_p_prime(n, x);
    nodes[n - 1 - i] = x;
    weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

AngularGrid::AngularGrid(int L_max) : L_(L_max) {
  if (L_max < 0) throw DomainError("AngularGrid: L_max must be >= 0");
  n_theta_ = 2 * L_ + 1;
  n_phi_ = 4 * L_ + 1;

  std::vector<double> x, wx;
  gauss_legendre(n_theta_, x, wx);
  theta_.resize(n_theta_);
  for (int i = 0; i < n_theta_; ++i) theta_[i] = std::acos(x[i]);
  phi_.resize(n_phi_);
  const double dphi = 2.0 * std::numbers::pi / n_phi_;
  for (int j = 0; j < n_phi_; ++j) phi_[j] = j * dphi;

  weights_.resize(n_points());
  for (int i = 0; i < n_theta_; ++i)
    for (int j = 0; j < n_phi_; ++j) weights_[i * n_phi_ + j] = wx[i] * dphi;

  const int band = 2 * L_;
  const int modes = mode_count(band);
  table_.assign(static_cast<std::size_t>(modes) * n_points(), 0.0);
  for (int ell = 0; ell <= band; ++ell) {
    for (int m = -ell; m <= ell; ++m) {
      const int am = std::abs(m);
      const double sign = (am % 2 == 0) ? 1.0 : -1.0;
      double* row = &table_[static_cast<std::size_t>(mode_slot(ell, m)) * n_points()];
      for (int i = 0; i < n_theta_; ++i) {
        const double leg = sign * std::sph_legendre(ell, am, theta_[i]);
        for (int j = 0; j < n_phi_; ++j) {
          double ang = 1.0;
          if (m > 0) ang = std::numbers::sqrt2 * std::cos(am * phi_[j]);
          if (m < 0) ang = std::numbers::sqrt2 * std::sin(am * phi_[j]);
          row[i * n_phi_ + j] = leg * ang;
        }
      }
    }
  }
}

void AngularGrid::check_grid_size(std::size_t n) const {
  if (n != static_cast<std::size_t>(n_points())) {
    throw SizeMismatch("grid values: expected " + std::to_string(n_points()) + ", got " +
                       std::to_string(n));
  }
}

void AngularGrid::analyze_band(std::span<const double> values, int band, std::span<double> out) const {
  const int np = n_points();
  for (int k = 0; k < mode_count(band); ++k) {
    const double* row = &table_[static_cast<std::size_t>(k) * np];
    double acc = 0.0;
    for (int p = 0; p < np; ++p) acc += weights_[p] * row[p] * values[p];
    out[k] = acc;
  }
}

void AngularGrid::synthesize_band(std::span<const double> coeffs, int band, std::span<double> out) const {
  const int np = n_points();
  for (int p = 0; p < np; ++p) out[p] = 0.0;
  for (int k = 0; k < mode_count(band); ++k) {
    const double c = coeffs[k];
    if (c == 0.0) continue;
    const double* row = &table_[static_cast<std::size_t>(k) * np];
    for (int p = 0; p < np; ++p) out[p] += c * row[p];
  }
}

void AngularGrid::analyze_into(std::span<const double> values, std::span<double> out) const {
  check_grid_size(values.size());
  if (out.size() != static_cast<std::size_t>(n_modes())) throw SizeMismatch("analyze: output size");
  analyze_band(values, L_, out);
}

void AngularGrid::synthesize_into(std::span<const double> coeffs, std::span<double> out) const {
  if (coeffs.size() != static_cast<std::size_t>(n_modes())) {
    throw SizeMismatch("coefficients: expected " + std::to_string(n_modes()) + ", got " +
                       std::to_string(coeffs.size()));
  }
  check_grid_size(out.size());
  synthesize_band(coeffs, L_, out);
}

ModeCoeffs AngularGrid::analyze(std::span<const double> values) const {
  ModeCoeffs out(n_modes());
  analyze_into(values, out);
  return out;
}

ModeCoeffs AngularGrid::analyze_double_band(std::span<const double> values) const {
  check_grid_size(values.size());
  ModeCoeffs out(mode_count(2 * L_));
  analyze_band(values, 2 * L_, out);
  return out;
}

std::vector<double> AngularGrid::synthesize(std::span<const double> coeffs) const {
  std::vector<double> out(n_points());
  synthesize_into(coeffs, out);
  return out;
}

std::vector<double> AngularGrid::angular_gradient_sq(std::span<const double> f) const {
  if (f.size() > static_cast<std::size_t>(n_modes())) {
    throw BandwidthError("angular_gradient_sq: input has " + std::to_string(f.size()) +
                         " coefficients, grid resolves products only up to band " +
                         std::to_string(L_));
  }
  ModeCoeffs padded(n_modes(), 0.0);
  std::copy(f.begin(), f.end(), padded.begin());

  std::vector<double> fv(n_points()), lapf(n_points()), sq(n_points());
  synthesize_band(padded, L_, fv);
  synthesize_band(laplace_beltrami(padded), L_, lapf);
  for (int p = 0; p < n_points(); ++p) sq[p] = fv[p] * fv[p];

  ModeCoeffs sq_modes = analyze_double_band(sq);
  sq_modes = laplace_beltrami(sq_modes);
  std::vector<double> lap_sq(n_points());
  synthesize_band(sq_modes, 2 * L_, lap_sq);

  std::vector<double> out(n_points());
  for (int p = 0; p < n_points(); ++p) out[p] = 0.5 * lap_sq[p] - fv[p] * lapf[p];
  return out;
}

double AngularGrid::sphere_mean(std::span<const double> values) const {
  check_grid_size(values.size());
  CompensatedSum acc;
  for (int p = 0; p < n_points(); ++p) acc.add(weights_[p] * values[p]);
  return acc.value() / (4.0 * std::numbers::pi);
}

ModeCoeffs laplace_beltrami(std::span<const double> coeffs) {
  ModeCoeffs out(coeffs.begin(), coeffs.end());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const int ell = mode_of_slot(static_cast<int>(k)).ell;
    out[k] *= -static_cast<double>(ell * (ell + 1));
  }
  return out;
}

}  // namespace nullwave::sphharm
