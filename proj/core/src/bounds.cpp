#include "sparsepois/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "sparsepois/error.hpp"

namespace sparsepois {

namespace {

double log_2np_pow(std::size_t n, std::size_t p) {
  return std::pow(std::log(2.0 * static_cast<double>(n) * static_cast<double>(p)), 1.5);
}

double column_mass(const IntensityMatrix& M, std::size_t i) {
  double sum = 0.0;
  for (double x : M.col(i)) sum += x;
  return sum;
}

// log P(X >= k) <= -m + k - k log(k/m) for k > m.
double log_chernoff_upper_tail(double mean, double k) {
  return -mean + k - k * std::log(k / mean);
}

double log_poisson_pmf(double k, double mean, double log_mean) {
  return -mean + k * log_mean - std::lgamma(k + 1.0);
}

// (1 + d) log(1 + d) - d without cancellation near d = 0.
double kl_ratio_term(double d) {
  if (std::fabs(d) >= 0.1) return (1.0 + d) * std::log1p(d) - d;
  // sum_{k>=2} (-d)^k / (k (k - 1))
  double term = d * d;
  double sum = 0.0;
  for (int k = 2; k < 40; ++k) {
    const double add = term / (k * (k - 1.0));
    sum += add;
    if (std::fabs(add) <= 1e-18 * std::fabs(sum)) break;
    term *= -d;
  }
  return sum;
}

double log_add_exp(double a, double b) {
  const double hi = std::max(a, b);
  if (hi == -INFINITY) return hi;
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

std::string_view to_string(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::OracleExact: return "oracle_exact";
    case BoundKind::NaiveExact: return "naive_exact";
    case BoundKind::GhtTheorem1: return "ght_theorem1";
    case BoundKind::LowerThm2: return "lower_thm2";
    case BoundKind::LowerThm3: return "lower_thm3";
  }
  return "unknown";
}

double oracle_risk_exact(const IntensityMatrix& M, const SupportSet& S, double sigma) {
  S.check_within(M.cols());
  double sum = 0.0;
  for (std::size_t i : S) sum += column_mass(M, i);
  return sigma * sigma * sum;
}

double naive_risk_exact(const IntensityMatrix& M, double sigma) {
  double sum = 0.0;
  for (std::size_t i = 0; i < M.cols(); ++i) sum += column_mass(M, i);
  return sigma * sigma * sum;
}

bool ght_bound_condition(std::size_t n, std::size_t p, double sigma, double mu_inf) {
  const double u = 40.0 * log_2np_pow(n, p);
  const double r = std::pow(mu_inf / (sigma * sigma), 1.5);
  return 1.0 / r <= u && u <= 0.9 * r;
}

RiskBound ght_risk_bound(std::size_t n, std::size_t p, std::size_t s,
                         double sigma, double mu_inf) {
  const double sd = static_cast<double>(s);
  const double pd = static_cast<double>(p);
  const double value = mu_inf * sigma * sigma *
                       (170.0 * sd * sd * std::sqrt(pd) * log_2np_pow(n, p) + 6.0 * sd * pd);
  return {value, BoundKind::GhtTheorem1, ght_bound_condition(n, p, sigma, mu_inf)};
}

RiskBound lower_bound_thm2(std::size_t n, std::size_t s, double sigma, double mu0_max) {
  if (s == 0) return {0.0, BoundKind::LowerThm2, false};
  const double sd = static_cast<double>(s);
  const double value = mu0_max / 513.0 * sigma * sigma * sd * sd *
                       std::log1p(static_cast<double>(n) / (2.0 * sd * sd));
  return {value, BoundKind::LowerThm2, s >= 128};
}

RiskBound lower_bound_thm3(std::size_t s, std::size_t p, double sigma, double mu_inf) {
  const double value = std::ldexp(1.0, -14) * mu_inf * sigma * sigma *
                       static_cast<double>(s) * static_cast<double>(p);
  return {value, BoundKind::LowerThm3, s >= 1 && p >= 16};
}

double poisson_kl(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorCode::NonPositiveRate, "Poisson rates must be > 0");
  }
  // a log(a/b) + b - a = b [(1 + d) log(1 + d) - d], d = (a - b) / b.
  return b * kl_ratio_term((a - b) / b);
}

double kl_packing_instance(std::size_t subset_size, std::size_t s, double eps,
                           double mu_inf, double sigma) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::BadEps, "eps must lie in (0, 1)");
  // (1 - eps) log(1 - eps) + eps = sum_{k>=2} eps^k / (k (k - 1)); the
  // series avoids cancellation for small eps.
  double per_coord = 0.0;
  if (eps >= 0.1) {
    per_coord = (1.0 - eps) * std::log1p(-eps) + eps;
  } else {
    double term = eps * eps;
    for (int k = 2; k < 40; ++k) {
      per_coord += term / (k * (k - 1.0));
      term *= eps;
    }
  }
  return static_cast<double>(s) * mu_inf / (sigma * sigma) *
         static_cast<double>(subset_size) * per_coord;
}

double kl_mixture_bound(std::size_t n, std::size_t s, double sigma, double eps,
                        double mu0) {
  if (!(mu0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "mu0 must be > 0");
  const double sd = static_cast<double>(s);
  return sd * sd / (4.0 * static_cast<double>(n)) *
         std::expm1(sigma * sigma * eps * eps / mu0);
}

double kl_mixture_exact(std::size_t n, std::size_t s, double sigma, double eps,
                        double mu0, double tol, std::size_t max_terms) {
  if (n == 0 || !(sigma > 0.0) || !(mu0 > 0.0) || !(tol > 0.0) || eps < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "kl_mixture_exact: invalid parameters");
  }
  if (s > 2 * n) throw Error(ErrorCode::InvalidArgument, "mixture weight s/2n exceeds 1");
  if (s == 0 || eps == 0.0) return 0.0;

  const double a = mu0 / (sigma * sigma);
  const double b = a + eps;
  const double w = static_cast<double>(s) / (2.0 * static_cast<double>(n));
  const double log_tol = std::log(tol);

  // Smallest K > b at which both Chernoff tail bounds fall below tol.
  double K = std::floor(b) + 1.0;
  while (log_chernoff_upper_tail(a, K) >= log_tol || log_chernoff_upper_tail(b, K) >= log_tol) {
    K += 1.0;
    if (K > static_cast<double>(max_terms)) {
      throw Error(ErrorCode::NoConvergence, "series truncation point exceeds the term cap");
    }
  }

  const double log_a = std::log(a);
  const double log_b = std::log(b);
  const double log_ratio_step = std::log1p(eps / a);
  const double log_w = std::log(w);
  const double log_1mw = std::log1p(-w);

  double sum = 0.0;
  for (double k = 0.0; k <= K; k += 1.0) {
    const double lq0 = log_poisson_pmf(k, a, log_a);
    const double lq1 = log_poisson_pmf(k, b, log_b);
    const double lmix = w == 1.0 ? lq1 : log_add_exp(log_1mw + lq0, log_w + lq1);
    // log(dQ_mix/dQ_0) = log(1 + w (e^t - 1)), t = log(dQ_1/dQ_0)(k).
    const double t = k * log_ratio_step - eps;
    const double log_ratio = t < 30.0
                                 ? std::log1p(w * std::expm1(t))
                                 : log_w + t + std::log1p((1.0 - w) / w * std::exp(-t));
    sum += std::exp(lmix) * log_ratio;
  }
  return static_cast<double>(n) * sum;
}

}  // namespace sparsepois
