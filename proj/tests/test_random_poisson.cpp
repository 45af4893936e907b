#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "sparsepois/error.hpp"
#include "sparsepois/poisson.hpp"
#include "sparsepois/random.hpp"
#include "test_support.hpp"

using namespace sparsepois;

TEST_CASE("xoshiro256** streams are reproducible and key-separated") {
  Xoshiro256 a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    differs = differs || x != c();
  }
  CHECK(differs);

  CHECK(derive_seed(7, 1, 2) == derive_seed(derive_seed(7, 1), 2));
  CHECK(derive_seed(7, 1, 2) != derive_seed(7, 2, 1));
  CHECK(derive_seed(7, 0) != derive_seed(8, 0));
}

TEST_CASE("uniform() lies in [0, 1)") {
  Xoshiro256 rng(1);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  CHECK(lo < 1e-3);
  CHECK(hi > 1.0 - 1e-3);
}

TEST_CASE("Poisson sampler edge cases") {
  Xoshiro256 rng(3);
  CHECK(sample_poisson(rng, 0.0) == 0);
  CHECK_THROWS_AS(sample_poisson(rng, -1.0), Error);
  CHECK_THROWS_AS(sample_poisson(rng, NAN), Error);
}

// Chi-square goodness of fit against the exact pmf, bins merged so every
// expected count is at least 20. Critical value at z = 4.26 (alpha ~ 1e-5).
TEST_CASE("Poisson sampler matches the exact pmf on both algorithm branches") {
  for (double mean : {0.05, 0.7, 4.0, 9.99, 10.0, 17.3, 100.0, 2500.0}) {
    CAPTURE(mean);
    const std::size_t draws = 200000;
    const auto kmax = static_cast<std::size_t>(mean + 12.0 * std::sqrt(mean) + 30.0);
    std::vector<std::uint64_t> counts(kmax + 1, 0);
    Xoshiro256 rng(derive_seed(2024, static_cast<std::uint64_t>(mean * 1000)));
    for (std::size_t i = 0; i < draws; ++i) {
      const auto k = sample_poisson(rng, mean);
      counts[std::min<std::uint64_t>(k, kmax)]++;
    }
    const auto pmf = oracle::poisson_pmf_table(mean, kmax);

    double chi2 = 0.0;
    int bins = 0;
    long double exp_acc = 0.0L, used = 0.0L;
    std::uint64_t obs_acc = 0;
    for (std::size_t k = 0; k <= kmax; ++k) {
      const long double pk = k == kmax ? 1.0L - used : pmf[k];
      used += pmf[k];
      exp_acc += pk * draws;
      obs_acc += counts[k];
      if (exp_acc >= 20.0L || k == kmax) {
        if (exp_acc > 0.0L) {
          const double d = static_cast<double>(obs_acc) - static_cast<double>(exp_acc);
          chi2 += d * d / static_cast<double>(exp_acc);
          ++bins;
        }
        exp_acc = 0.0L;
        obs_acc = 0;
      }
    }
    REQUIRE(bins >= 2);
    CHECK(chi2 <= oracle::chi_square_critical(bins - 1, 4.26));
  }
}

TEST_CASE("Poisson sampler moments for a large mean") {
  const double mean = 1234.5;
  Xoshiro256 rng(99);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double k = static_cast<double>(sample_poisson(rng, mean));
    sum += k;
    sum_sq += k * k;
  }
  const double m = sum / n;
  const double var = sum_sq / n - m * m;
  CHECK(std::fabs(m - mean) <= 3.0 * std::sqrt(mean / n));
  // Var of the sample variance ~ (mu4 - var^2) / n = (mean + 2 mean^2) / n.
  CHECK(std::fabs(var - mean) <= 3.0 * std::sqrt((mean + 2.0 * mean * mean) / n));
}
