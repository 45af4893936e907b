#include "sparsepois/poisson.hpp"

#include <cmath>

#include "sparsepois/error.hpp"

namespace sparsepois {

namespace {

std::uint64_t sample_by_inversion(Xoshiro256& rng, double mean) {
  const double p0 = std::exp(-mean);
  for (;;) {
    const double u = rng.uniform();
    double pmf = p0;
    double cdf = p0;
    std::uint64_t k = 0;
    // The CDF reaches 1 - 1e-16 long before k = 200 for mean < 10; the cap
    // only guards against round-off leaving cdf marginally below u.
    while (u > cdf && k < 200) {
      ++k;
      pmf *= mean / static_cast<double>(k);
      cdf += pmf;
    }
    if (u <= cdf) return k;
  }
}

std::uint64_t sample_ptrs(Xoshiro256& rng, double mean) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);

  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    const double lhs = std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b);
    const double rhs = -mean + k * loglam - std::lgamma(k + 1.0);
    if (lhs <= rhs) return static_cast<std::uint64_t>(k);
  }
}

}  // namespace

std::uint64_t sample_poisson(Xoshiro256& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw Error(ErrorCode::NonPositiveRate, "Poisson mean must be finite and >= 0");
  }
  if (mean == 0.0) return 0;
  if (mean < kPoissonInversionCutoff) return sample_by_inversion(rng, mean);
  return sample_ptrs(rng, mean);
}

}  // namespace sparsepois
