#include "nullwave/quadrature.hpp"

#include <cmath>

namespace nullwave {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

double simpson_uniform(std::span<const double> f, double dx) {
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * dx * (f[0] + f[1]);
  const std::size_t intervals = n - 1;
  const std::size_t simpson_end = (intervals % 2 == 0) ? n - 1 : n - 2;
  CompensatedSum acc;
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
    acc.add(dx / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]));
  }
  if (simpson_end != n - 1) acc.add(0.5 * dx * (f[n - 2] + f[n - 1]));
  return acc.value();
}

double trapezoid_uniform(std::span<const double> f, double dx) {
  if (f.size() < 2) return 0.0;
  CompensatedSum acc;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) acc.add(0.5 * dx * (f[i] + f[i + 1]));
  return acc.value();
}

std::vector<double> cumulative_trapezoid(std::span<const double> f, double dx) {
  std::vector<double> out(f.size(), 0.0);
  CompensatedSum acc;
  for (std::size_t i = 1; i < f.size(); ++i) {
    acc.add(0.5 * dx * (f[i - 1] + f[i]));
    out[i] = acc.value();
  }
  return out;
}

}  // namespace nullwave
