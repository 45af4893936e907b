#pragma once

#include <cstddef>
#include <string_view>

#include "sparsepois/model.hpp"

namespace sparsepois {

enum class BoundKind { OracleExact, NaiveExact, GhtTheorem1, LowerThm2, LowerThm3 };

std::string_view to_string(BoundKind kind) noexcept;

struct RiskBound {
  double value = 0.0;
  BoundKind kind = BoundKind::OracleExact;
  /// Whether the hypotheses behind the bound hold for these arguments.
  /// Exact risks always report true.
  bool condition_ok = true;
};

/// Exact MSE of the oracle estimator: sigma^2 * sum_{i in S} sum_j M_ij.
double oracle_risk_exact(const IntensityMatrix& M, const SupportSet& S, double sigma);

/// Exact MSE of the naive estimator: sigma^2 * sum_{i,j} M_ij.
double naive_risk_exact(const IntensityMatrix& M, double sigma);

/// sigma^3 mu_inf^{-3/2} <= 40 log^{3/2}(2np) <= 0.9 sigma^{-3} mu_inf^{3/2}.
bool ght_bound_condition(std::size_t n, std::size_t p, double sigma, double mu_inf);

/// mu_inf sigma^2 (170 s^2 sqrt(p) log^{3/2}(2np) + 6 s p).
RiskBound ght_risk_bound(std::size_t n, std::size_t p, std::size_t s,
                         double sigma, double mu_inf);

/// (mu0_max / 513) sigma^2 s^2 log(1 + n / (2 s^2)); condition s >= 128.
/// Returns 0 with condition_ok = false when s = 0.
RiskBound lower_bound_thm2(std::size_t n, std::size_t s, double sigma, double mu0_max);

/// 2^{-14} mu_inf sigma^2 s p; condition p >= 16.
RiskBound lower_bound_thm3(std::size_t s, std::size_t p, double sigma, double mu_inf);

/// KL(Poisson(a) || Poisson(b)) = a log(a/b) + b - a. Throws NonPositiveRate.
double poisson_kl(double a, double b);

/// KL between the Poisson laws of the packing matrix M_T and M_0:
/// (s mu_inf / sigma^2) |T| [(1 - eps) log(1 - eps) + eps]. Throws BadEps
/// unless 0 < eps < 1.
double kl_packing_instance(std::size_t subset_size, std::size_t s, double eps,
                           double mu_inf, double sigma);

/// Upper bound (s^2 / 4n) (exp(sigma^2 eps^2 / mu0) - 1) on the KL between
/// the Bernoulli-mixture prior's data law and the background law.
double kl_mixture_bound(std::size_t n, std::size_t s, double sigma, double eps,
                        double mu0);

inline constexpr std::size_t kKlMixtureMaxTerms = 1'000'000;

/**
 * n * KL(Q_mix || Q_0) with
 *   Q_0   = Poisson(mu0 / sigma^2),
 *   Q_mix = (1 - s/2n) Poisson(mu0 / sigma^2) + (s/2n) Poisson(mu0 / sigma^2 + eps),
 * summed over k = 0..K, where K is the first integer above both means at
 * which the Chernoff bounds on both upper tails drop below tol.
 *
 * Throws NoConvergence if K would exceed max_terms, InvalidArgument if
 * s > 2n or a parameter is non-positive.
 */
double kl_mixture_exact(std::size_t n, std::size_t s, double sigma, double eps,
                        double mu0, double tol = 1e-12,
                        std::size_t max_terms = kKlMixtureMaxTerms);

}  // namespace sparsepois
