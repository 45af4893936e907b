#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace sparsepois {

/// Sum and sum of squares, mergeable in a fixed order.
struct MomentAccumulator {
  std::size_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) noexcept {
    ++count;
    sum += x;
    sum_sq += x * x;
  }
  void merge(const MomentAccumulator& other) noexcept {
    count += other.count;
    sum += other.sum;
    sum_sq += other.sum_sq;
  }
  double mean() const noexcept;
  /// Unbiased sample variance (0 when count < 2).
  double variance() const noexcept;
  /// Standard error of the mean.
  double standard_error() const noexcept;
};

/// Mean and standard error of a sample, computed with a two-pass algorithm.
struct MeanSe {
  double mean;
  double se;
};
MeanSe mean_and_se(std::span<const double> xs);

struct Interval {
  double low;
  double high;
};

/// Wilson score interval for a binomial proportion at the given z (1.96 for 95%).
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

/// log P(X > k) for X ~ Binomial(trials, prob), by summing the pmf in log
/// space from k + 1 upwards until terms fall below 1e-300 relative.
double log_binomial_upper_tail(std::uint64_t trials, double prob, std::uint64_t k);

}  // namespace sparsepois
