#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sparsepois/model.hpp"

namespace sparsepois {

/**
 * Two-point (Dirac vs Bernoulli-mixture) prior pair behind the s^2 lower
 * bound. Under pi_1 each column independently has its largest background
 * coordinate lifted by sigma^2 eps with probability s / 2n.
 */
struct TwoPriorInstance {
  std::size_t n = 0;
  std::size_t s = 0;
  double sigma = 0.0;
  double mu0_max = 0.0;

  double eps = 0.0;             // eps^2 = (mu0_max / sigma^2) log(1 + n / 2s^2)
  double mixture_weight = 0.0;  // s / 2n
  double v = 0.0;               // s sigma^2 eps / 8
  double m_var = 0.0;           // 2^-8 s^2 sigma^4 eps^2
  double kl_bound = 0.0;
  double kl_exact = 0.0;
  double separation = 0.0;      // || E_pi1 L - E_pi0 L ||_2 = s sigma^2 eps / 2
  /// E_pi1[L(M)] in the lifted coordinate (zero elsewhere).
  double mean_shift = 0.0;
  /// Var_pi1[L(M)] = (1/2)(1 - s/2n) s sigma^4 eps^2.
  double functional_variance = 0.0;
  /// log pi_1(class complement) = log P(Binomial(n, s/2n) > s), exact.
  double log_outside_class = 0.0;
  bool condition_ok = false;    // s >= 128
};

TwoPriorInstance thm2_instance(std::size_t n, std::size_t s, double sigma,
                               double mu0_max, double kl_tol = 1e-12);

/// Index of the largest background coordinate (first one on ties).
std::size_t lifted_coordinate(std::span<const double> mu0);

/// One draw of an intensity matrix from pi_1. Deterministic in seed.
IntensityMatrix sample_prior_pi1(const TwoPriorInstance& instance, std::size_t n,
                                 std::size_t p, std::span<const double> mu0,
                                 std::uint64_t seed);

struct PackingCode {
  std::size_t p = 0;
  /// Subsets of {0, ..., p-1} as sorted index lists; subsets[0] is empty.
  std::vector<std::vector<std::size_t>> subsets;
  std::size_t m = 0;                  // number of subsets held
  std::size_t required_distance = 0;  // ceil(p / 8)
  std::size_t min_sym_diff = 0;       // brute-force certificate; p when m < 2
  std::uint64_t candidates_tried = 0;
  bool condition_ok = false;          // p >= 16
};

inline constexpr std::uint64_t kPackingCandidateBudget = 1'000'000;

/// floor(exp(p / 8)) + 1.
std::size_t packing_target_size(std::size_t p);

/// Randomized greedy Varshamov-Gilbert construction: keeps uniform random
/// subsets at symmetric difference >= ceil(p/8) from every kept subset,
/// starting from the empty set, until packing_target_size(p) are held.
/// Throws PackingBudgetExceeded when the candidate budget runs out.
PackingCode varshamov_gilbert_packing(std::size_t p, std::uint64_t seed,
                                      std::uint64_t budget = kPackingCandidateBudget);

/// Minimum pairwise symmetric difference by an O(m^2 p) pass over the sorted
/// index lists; p when fewer than two subsets are given.
std::size_t brute_force_min_sym_diff(const std::vector<std::vector<std::size_t>>& subsets,
                                     std::size_t p);

struct PackingInstance {
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t s = 0;
  double sigma = 0.0;
  double mu_inf = 0.0;
  double eps = 0.0;  // eps^2 = 2^-7 sigma^2 / (s mu_inf)
  PackingCode code;
  std::vector<IntensityMatrix> matrices;
  std::vector<double> kl_values;
  /// ||L(M_Ti) - L(M_Tj)||^2 from the explicit matrices.
  DenseMatrix separations;
  /// s^2 p eps^2 mu_inf^2 / 8.
  double separation_threshold = 0.0;
  double min_separation = 0.0;
};

/// Builds every packing matrix M_T (first s columns: mu_inf (1 - eps) on T
/// rows, mu_inf elsewhere; remaining columns mu0), their KL divergences to
/// M_0 and pairwise functional separations. Throws InvalidArgument when
/// p < 16, s = 0, s > n, mu_inf < max(mu0) or eps >= 1.
PackingInstance thm3_instance(std::size_t n, std::size_t p, std::size_t s,
                              double sigma, std::span<const double> mu0,
                              double mu_inf, std::uint64_t seed);

}  // namespace sparsepois
