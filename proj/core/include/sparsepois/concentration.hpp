#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sparsepois {

/// c = 12^{1/3} / 6 ~ 0.381571 in the tail bound below.
double lemma1_constant();

/// (2p + 1) exp(-c u^{2/3}). Values above 1 are returned unchanged.
double lemma1_bound(std::size_t p, double u);

/// nu_inf^{-3/2} <= u <= 0.9 nu_inf^{3/2}.
bool lemma1_in_range(double nu_inf, double u);

struct TailRow {
  double u = 0.0;
  bool in_range = false;
  std::uint64_t hits = 0;
  double emp_freq = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double bound = 0.0;
  /// ci_high <= bound.
  bool pass = false;
};

/// Monte Carlo check of P(||eta - nu||^2 - ||eta||_1 >= nu_inf sqrt(p) u)
/// against the analytic bound, for eta with independent Poisson(nu_j) entries.
struct TailReport {
  std::vector<double> nu;
  std::uint64_t replications = 0;
  std::uint64_t seed = 0;
  std::vector<TailRow> rows;
  /// Mean and standard error of ||eta - nu||^2 - ||eta||_1 (expected 0).
  double stat_mean = 0.0;
  double stat_se = 0.0;
};

/// All u values share the same replications. Throws InvalidArgument when
/// reps < 1000 or some nu_j <= 0.
TailReport lemma1_tail_report(std::span<const double> nu, std::span<const double> u_grid,
                              std::uint64_t reps, std::uint64_t seed);

TailRow lemma1_tail_mc(std::span<const double> nu, double u, std::uint64_t reps,
                       std::uint64_t seed);

struct FourthMomentResult {
  double mu = 0.0;
  double sigma = 0.0;
  std::uint64_t reps = 0;
  double empirical = 0.0;  // mean of xi^4, xi = sigma (K - mu/sigma^2)
  double exact = 0.0;      // sigma^2 mu + 3 mu^2
  double se = 0.0;         // from the empirical eighth moment
  /// |empirical - exact| / se.
  double z = 0.0;
  /// (2 mu)^2 and whether sigma^2 <= 0.9^{1/3} mu, the regime where
  /// exact <= (2 mu)^2 is claimed.
  double proof_bound = 0.0;
  bool proof_condition = false;
};

/// Throws InvalidArgument when reps < 10^4 or mu, sigma <= 0.
FourthMomentResult fourth_moment_check(double mu, double sigma, std::uint64_t reps,
                                       std::uint64_t seed);

}  // namespace sparsepois
