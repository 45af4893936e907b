#include "sparsepois/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "sparsepois/error.hpp"

namespace sparsepois {

namespace {

void check_dims(const ObservationMatrix& X, std::span<const double> mu0) {
  if (mu0.size() != X.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "mu0 length differs from the row count of X");
  }
}

std::vector<double> centered_sum(const ObservationMatrix& X,
                                 std::span<const double> mu0,
                                 const SupportSet& S) {
  std::vector<double> value(X.rows(), 0.0);
  for (std::size_t i : S) {
    const auto x = X.col(i);
    for (std::size_t j = 0; j < value.size(); ++j) value[j] += x[j] - mu0[j];
  }
  return value;
}

// Euclid on doubles; remainders within tol of 0 or of the divisor count as 0.
double tolerant_gcd(double a, double b, double tol) {
  if (a < b) std::swap(a, b);
  while (b > tol) {
    double r = std::fmod(a, b);
    if (r <= tol || b - r <= tol) r = 0.0;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace

FunctionalEstimate naive_estimate(const ObservationMatrix& X,
                                  std::span<const double> mu0) {
  check_dims(X, mu0);
  FunctionalEstimate out;
  out.value = centered_sum(X, mu0, SupportSet::full(X.cols()));
  return out;
}

FunctionalEstimate oracle_estimate(const ObservationMatrix& X,
                                   std::span<const double> mu0,
                                   const SupportSet& S) {
  check_dims(X, mu0);
  S.check_within(X.cols());
  FunctionalEstimate out;
  out.value = centered_sum(X, mu0, S);
  out.support = S;
  return out;
}

double default_lambda(std::size_t n, std::size_t p, std::span<const double> mu0,
                      double lambda_scale) {
  if (n == 0 || p == 0 || mu0.empty()) {
    throw Error(ErrorCode::InvalidArgument, "default_lambda needs n, p >= 1 and nonempty mu0");
  }
  const double mu0_max = *std::max_element(mu0.begin(), mu0.end());
  const double log_term = std::log(2.0 * static_cast<double>(n) * static_cast<double>(p));
  return lambda_scale * mu0_max * std::sqrt(static_cast<double>(p)) *
         std::pow(log_term, 1.5);
}

namespace {

struct ThresholdResult {
  SupportSet support;
  std::vector<double> tau;
};

ThresholdResult threshold_columns(const ObservationMatrix& X,
                                  std::span<const double> mu0, double sigma,
                                  double lambda) {
  check_dims(X, mu0);
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be > 0");
  if (!(lambda >= 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be >= 0");
  const double s2 = sigma * sigma;
  ThresholdResult out;
  out.tau.resize(X.cols());
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < X.cols(); ++i) {
    const auto x = X.col(i);
    double dist2 = 0.0;
    double l1 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double d = x[j] - mu0[j];
      dist2 += d * d;
      l1 += std::fabs(x[j]);
    }
    out.tau[i] = s2 * (l1 + lambda);
    if (dist2 >= out.tau[i]) kept.push_back(i);
  }
  out.support = SupportSet(std::move(kept));
  return out;
}

}  // namespace

SupportSet estimate_support(const ObservationMatrix& X,
                            std::span<const double> mu0, double sigma,
                            double lambda) {
  return threshold_columns(X, mu0, sigma, lambda).support;
}

FunctionalEstimate ght_estimate(const ObservationMatrix& X,
                                std::span<const double> mu0, double sigma,
                                std::optional<double> lambda,
                                double lambda_scale) {
  check_dims(X, mu0);
  const double lam = lambda ? *lambda : default_lambda(X.cols(), X.rows(), mu0, lambda_scale);
  auto thr = threshold_columns(X, mu0, sigma, lam);
  FunctionalEstimate out;
  out.value = centered_sum(X, mu0, thr.support);
  out.support = std::move(thr.support);
  out.lambda_used = lam;
  out.tau = std::move(thr.tau);
  return out;
}

SigmaEstimate estimate_sigma(std::span<const double> entries) {
  double max_entry = 0.0;
  for (double x : entries) {
    if (x < 0.0 || !std::isfinite(x)) {
      throw Error(ErrorCode::InvalidArgument, "observations must be finite and >= 0");
    }
    max_entry = std::max(max_entry, x);
  }
  if (max_entry == 0.0) {
    throw Error(ErrorCode::AllZero, "no positive entry; the grid step is unidentifiable");
  }
  const double tol = 1e-9 * max_entry;
  double g = 0.0;
  for (double x : entries) {
    if (x <= tol) continue;
    g = g == 0.0 ? x : tolerant_gcd(g, x, tol);
  }
  return {g, std::sqrt(g)};
}

std::vector<double> estimate_background(std::span<const std::vector<double>> aux) {
  if (aux.empty()) throw Error(ErrorCode::EmptySample, "auxiliary sample is empty");
  const std::size_t p = aux.front().size();
  std::vector<double> mean(p, 0.0);
  for (const auto& v : aux) {
    if (v.size() != p) {
      throw Error(ErrorCode::DimensionMismatch, "auxiliary vectors differ in length");
    }
    for (std::size_t j = 0; j < p; ++j) mean[j] += v[j];
  }
  const double m = static_cast<double>(aux.size());
  for (double& x : mean) x /= m;
  return mean;
}

}  // namespace sparsepois
