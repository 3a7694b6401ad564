#pragma once

#include <span>
#include <vector>

namespace nullwave::stats {

/// Ranks starting at 1, ties share their average rank.
std::vector<double> ranks(std::span<const double> x);

double pearson(std::span<const double> x, std::span<const double> y);

/// Spearman rank correlation; NaN for fewer than two points or constant input.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace nullwave::stats
