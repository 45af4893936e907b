#include <algorithm>
#include <chrono>
#include <cstdio>
#include <vector>

#include "doctest.h"
#include "sparsepois/estimators.hpp"
#include "sparsepois/model.hpp"
#include "sparsepois/random.hpp"

using namespace sparsepois;

// Sizes start at 64 MB of observations so every point sits in the same
// memory regime; crossing the last-level cache would add a one-off jump.
// Rounds interleave the sizes so drift in machine load hits all of them.
TEST_CASE("GHT cost is linear in n p") {
  const std::size_t p = 16;
  const std::vector<double> mu0(p, 1.0);
  const std::size_t first_log = 23, last_log = 26;

  std::vector<ObservationMatrix> inputs;
  for (std::size_t log_size = first_log; log_size <= last_log; ++log_size) {
    const std::size_t n = (std::size_t{1} << log_size) / p;
    DenseMatrix m(p, n);
    Xoshiro256 rng(log_size);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < p; ++j) m(j, i) = 0.25 * static_cast<double>(rng() % 8);
    inputs.emplace_back(std::move(m), 0.5);
  }

  std::vector<double> best(inputs.size(), 1e300);
  for (int round = 0; round < 9; ++round) {
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto est = ght_estimate(inputs[k], mu0, 0.5, 10.0);
      const auto t1 = std::chrono::steady_clock::now();
      REQUIRE(est.value.size() == p);
      best[k] = std::min(best[k], std::chrono::duration<double>(t1 - t0).count());
    }
  }
  for (std::size_t k = 0; k < best.size(); ++k) {
    std::printf("np = 2^%zu: %.6f s\n", first_log + k, best[k]);
    if (k > 0) {
      CAPTURE(first_log + k);
      CHECK(best[k] / best[k - 1] <= 2.5);
    }
  }
}
