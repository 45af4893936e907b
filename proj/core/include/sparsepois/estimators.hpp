#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sparsepois/model.hpp"

namespace sparsepois {

/// Multiplier in front of ||mu0||_inf sqrt(p) log^{3/2}(2np) in the default
/// threshold. 40 reproduces the upper-bound theorem; smaller values are
/// useful in experiments.
inline constexpr double kDefaultLambdaScale = 40.0;

struct FunctionalEstimate {
  std::vector<double> value;
  std::optional<SupportSet> support;
  std::optional<double> lambda_used;
  /// Per-column thresholds tau_i = sigma^2 (||X_i||_1 + lambda), GHT only.
  std::optional<std::vector<double>> tau;
};

/// sum_i (X_i - mu0) over all columns.
FunctionalEstimate naive_estimate(const ObservationMatrix& X,
                                  std::span<const double> mu0);

/// sum_{i in S} (X_i - mu0). Columns are accumulated in increasing index
/// order, so any estimator reporting a support reproduces bit-exactly.
FunctionalEstimate oracle_estimate(const ObservationMatrix& X,
                                   std::span<const double> mu0,
                                   const SupportSet& S);

/// lambda_scale * ||mu0||_inf * sqrt(p) * log^{3/2}(2np).
double default_lambda(std::size_t n, std::size_t p, std::span<const double> mu0,
                      double lambda_scale = kDefaultLambdaScale);

/// { i : ||X_i - mu0||_2^2 >= sigma^2 (||X_i||_1 + lambda) }, boundary included.
SupportSet estimate_support(const ObservationMatrix& X,
                            std::span<const double> mu0, double sigma,
                            double lambda);

/// Group hard thresholding. Uses default_lambda(n, p, mu0, lambda_scale) when
/// no lambda is given.
FunctionalEstimate ght_estimate(const ObservationMatrix& X,
                                std::span<const double> mu0, double sigma,
                                std::optional<double> lambda = std::nullopt,
                                double lambda_scale = kDefaultLambdaScale);

struct SigmaEstimate {
  double grid_step;  // estimated sigma^2
  double sigma;
};

/// Recovers sigma^2 as the tolerant floating-point GCD of the strictly
/// positive entries (tolerance 1e-9 * max entry). If every observed count
/// shares a factor k the estimate is k * sigma^2; this vanishes as np grows.
/// Throws AllZero when no entry is positive.
SigmaEstimate estimate_sigma(std::span<const double> entries);

/// Coordinatewise mean of an auxiliary background sample. Throws EmptySample.
std::vector<double> estimate_background(std::span<const std::vector<double>> aux);

}  // namespace sparsepois
