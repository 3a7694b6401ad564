#pragma once

#include <span>
#include <vector>

namespace nullwave {

/// Composite Simpson on a uniform grid. An even number of intervals uses
/// Simpson throughout; an odd number closes the last interval with the
/// trapezoid rule. Fewer than two samples integrate to zero.
double simpson_uniform(std::span<const double> f, double dx);

double trapezoid_uniform(std::span<const double> f, double dx);

/// Running trapezoid integral: out[i] = integral of f from x_0 to x_i.
std::vector<double> cumulative_trapezoid(std::span<const double> f, double dx);

/// Neumaier-compensated sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace nullwave
