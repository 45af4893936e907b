#include "sparsepois/stats.hpp"

#include <algorithm>
#include <cmath>

#include "sparsepois/error.hpp"

namespace sparsepois {

double MomentAccumulator::mean() const noexcept {
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

double MomentAccumulator::variance() const noexcept {
  if (count < 2) return 0.0;
  const double n = static_cast<double>(count);
  const double m = sum / n;
  return std::max(0.0, (sum_sq - n * m * m) / (n - 1.0));
}

double MomentAccumulator::standard_error() const noexcept {
  return count == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(count));
}

MeanSe mean_and_se(std::span<const double> xs) {
  if (xs.empty()) return {0.0, 0.0};
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double log_binomial_upper_tail(std::uint64_t trials, double prob, std::uint64_t k) {
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "binomial probability outside [0, 1]");
  }
  if (k >= trials) return -INFINITY;
  if (prob == 0.0) return -INFINITY;
  if (prob == 1.0) return 0.0;
  const double n = static_cast<double>(trials);
  const double lp = std::log(prob);
  const double lq = std::log1p(-prob);
  auto log_pmf = [&](double j) {
    return std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) +
           j * lp + (n - j) * lq;
  };
  // The largest tail term sits at max(k + 1, mode); past the mode terms
  // decrease geometrically, so stop once they are negligible.
  const double first = static_cast<double>(k + 1);
  const double mode = std::floor((n + 1.0) * prob);
  const double lead = log_pmf(std::max(first, std::min(mode, n)));
  double acc = 0.0;
  for (double j = first; j <= n; j += 1.0) {
    const double term = std::exp(log_pmf(j) - lead);
    acc += term;
    if (j > mode && term < 1e-20) break;
  }
  return lead + std::log(acc);
}

}  // namespace sparsepois
