#include "nullwave/stats.hpp"

#include <algorithm>
#include <cmath>
// bivariate_statistics uses unqualified sqrt; <cmath> must come first.
#include <boost/math/statistics/bivariate_statistics.hpp>
#include <limits>
#include <numeric>

#include "nullwave/error.hpp"

namespace nullwave::stats {

std::vector<double> ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> out(x.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t q = i; q <= j; ++q) out[order[q]] = avg;
    i = j + 1;
  }
  return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw SizeMismatch("pearson: length mismatch");
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> a(x.begin(), x.end()), b(y.begin(), y.end());
  return boost::math::statistics::correlation_coefficient(a, b);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw SizeMismatch("spearman: length mismatch");
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  return pearson(rx, ry);
}

}  // namespace nullwave::stats
