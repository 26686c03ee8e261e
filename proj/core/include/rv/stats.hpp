#pragma once

#include <span>

namespace rv {

/// Pairwise (cascade) summation. Order-stable and far less lossy than a naive
/// left fold, which keeps aggregated metrics reproducible across runs.
double pairwise_sum(std::span<const double> xs);

double mean(std::span<const double> xs);

/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_sd(std::span<const double> xs);

}  // namespace rv
