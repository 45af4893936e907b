#pragma once

#include <cstdint>

#include "sparsepois/random.hpp"

namespace sparsepois {

/// Means below this use sequential CDF inversion; at or above it, PTRS.
inline constexpr double kPoissonInversionCutoff = 10.0;

/**
 * Draw an exact Poisson variate with the given mean.
 *
 * Small means use inversion by sequential search of the CDF (one uniform per
 * draw). Large means use Hörmann's transformed rejection with squeeze (PTRS,
 * 1993), which is exact and has bounded expected cost. A mean of zero
 * returns zero. No normal approximation is ever used.
 */
std::uint64_t sample_poisson(Xoshiro256& rng, double mean);

}  // namespace sparsepois
