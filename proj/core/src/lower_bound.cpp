#include "sparsepois/lower_bound.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sparsepois/bounds.hpp"
#include "sparsepois/error.hpp"
#include "sparsepois/random.hpp"
#include "sparsepois/stats.hpp"

namespace sparsepois {

TwoPriorInstance thm2_instance(std::size_t n, std::size_t s, double sigma,
                               double mu0_max, double kl_tol) {
  if (n == 0 || s == 0) throw Error(ErrorCode::InvalidArgument, "n and s must be >= 1");
  if (s > 2 * n) throw Error(ErrorCode::InvalidArgument, "s must not exceed 2n");
  if (!(sigma > 0.0) || !(mu0_max > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "sigma and mu0_max must be > 0");
  }
  const double nd = static_cast<double>(n);
  const double sd = static_cast<double>(s);
  const double s2 = sigma * sigma;

  TwoPriorInstance out;
  out.n = n;
  out.s = s;
  out.sigma = sigma;
  out.mu0_max = mu0_max;
  out.eps = std::sqrt(mu0_max / s2 * std::log1p(nd / (2.0 * sd * sd)));
  out.mixture_weight = sd / (2.0 * nd);
  out.v = sd * s2 * out.eps / 8.0;
  out.m_var = std::ldexp(sd * sd * s2 * s2 * out.eps * out.eps, -8);
  out.kl_bound = kl_mixture_bound(n, s, sigma, out.eps, mu0_max);
  out.kl_exact = kl_mixture_exact(n, s, sigma, out.eps, mu0_max, kl_tol);
  out.separation = sd * s2 * out.eps / 2.0;
  out.mean_shift = out.separation;
  out.functional_variance = 0.5 * (1.0 - out.mixture_weight) * sd * s2 * s2 * out.eps * out.eps;
  out.log_outside_class = log_binomial_upper_tail(n, out.mixture_weight, s);
  out.condition_ok = s >= 128;
  return out;
}

std::size_t lifted_coordinate(std::span<const double> mu0) {
  if (mu0.empty()) throw Error(ErrorCode::DimensionMismatch, "mu0 is empty");
  return static_cast<std::size_t>(std::max_element(mu0.begin(), mu0.end()) - mu0.begin());
}

IntensityMatrix sample_prior_pi1(const TwoPriorInstance& instance, std::size_t n,
                                 std::size_t p, std::span<const double> mu0,
                                 std::uint64_t seed) {
  if (mu0.size() != p) throw Error(ErrorCode::DimensionMismatch, "mu0 must have length p");
  const std::size_t c = lifted_coordinate(mu0);
  const double lift = instance.sigma * instance.sigma * instance.eps;
  DenseMatrix m(p, n);
  Xoshiro256 rng(derive_seed(seed, static_cast<std::uint64_t>(StreamTag::Prior)));
  for (std::size_t i = 0; i < n; ++i) {
    auto col = m.col(i);
    std::copy(mu0.begin(), mu0.end(), col.begin());
    if (rng.uniform() < instance.mixture_weight) col[c] += lift;
  }
  return IntensityMatrix(std::move(m));
}

std::size_t packing_target_size(std::size_t p) {
  return static_cast<std::size_t>(std::floor(std::exp(static_cast<double>(p) / 8.0))) + 1;
}

namespace {

using Bits = std::vector<std::uint64_t>;

std::size_t hamming(const Bits& a, const Bits& b) {
  std::size_t d = 0;
  for (std::size_t w = 0; w < a.size(); ++w) d += std::popcount(a[w] ^ b[w]);
  return d;
}

std::vector<std::size_t> to_indices(const Bits& bits, std::size_t p) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < p; ++j) {
    if ((bits[j / 64] >> (j % 64)) & 1U) out.push_back(j);
  }
  return out;
}

}  // namespace

PackingCode varshamov_gilbert_packing(std::size_t p, std::uint64_t seed,
                                      std::uint64_t budget) {
  if (p == 0) throw Error(ErrorCode::InvalidArgument, "p must be >= 1");
  const double target_real = std::floor(std::exp(static_cast<double>(p) / 8.0)) + 1.0;
  if (target_real > static_cast<double>(budget) + 1.0) {
    throw Error(ErrorCode::PackingBudgetExceeded,
                "target size exceeds the candidate budget; achieved 0");
  }
  const std::size_t target = packing_target_size(p);
  const std::size_t words = (p + 63) / 64;
  const std::uint64_t tail_mask =
      p % 64 == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (p % 64)) - 1;

  PackingCode code;
  code.p = p;
  code.required_distance = (p + 7) / 8;
  code.condition_ok = p >= 16;

  std::vector<Bits> kept{Bits(words, 0)};
  Xoshiro256 rng(derive_seed(seed, static_cast<std::uint64_t>(StreamTag::Packing)));
  while (kept.size() < target) {
    if (code.candidates_tried >= budget) {
      throw Error(ErrorCode::PackingBudgetExceeded,
                  "achieved " + std::to_string(kept.size()) + " of " +
                      std::to_string(target) + " subsets");
    }
    ++code.candidates_tried;
    Bits cand(words);
    for (auto& w : cand) w = rng();
    cand.back() &= tail_mask;
    const bool far = std::all_of(kept.begin(), kept.end(), [&](const Bits& k) {
      return hamming(k, cand) >= code.required_distance;
    });
    if (far) kept.push_back(std::move(cand));
  }

  code.subsets.reserve(kept.size());
  for (const auto& b : kept) code.subsets.push_back(to_indices(b, p));
  code.m = code.subsets.size();
  code.min_sym_diff = brute_force_min_sym_diff(code.subsets, p);
  return code;
}

std::size_t brute_force_min_sym_diff(const std::vector<std::vector<std::size_t>>& subsets,
                                     std::size_t p) {
  std::size_t best = p;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (std::size_t j = i + 1; j < subsets.size(); ++j) {
      std::vector<std::size_t> diff;
      std::set_symmetric_difference(subsets[i].begin(), subsets[i].end(),
                                    subsets[j].begin(), subsets[j].end(),
                                    std::back_inserter(diff));
      best = std::min(best, diff.size());
    }
  }
  return best;
}

PackingInstance thm3_instance(std::size_t n, std::size_t p, std::size_t s,
                              double sigma, std::span<const double> mu0,
                              double mu_inf, std::uint64_t seed) {
  if (p < 16) throw Error(ErrorCode::InvalidArgument, "the packing construction needs p >= 16");
  if (s == 0 || s > n) throw Error(ErrorCode::InvalidArgument, "need 1 <= s <= n");
  if (mu0.size() != p) throw Error(ErrorCode::DimensionMismatch, "mu0 must have length p");
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be > 0");
  if (!(mu_inf >= *std::max_element(mu0.begin(), mu0.end()))) {
    throw Error(ErrorCode::InvalidArgument, "mu_inf must be >= max(mu0)");
  }

  PackingInstance out;
  out.n = n;
  out.p = p;
  out.s = s;
  out.sigma = sigma;
  out.mu_inf = mu_inf;
  out.eps = std::sqrt(std::ldexp(sigma * sigma / (static_cast<double>(s) * mu_inf), -7));
  if (!(out.eps < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "mu_inf (1 - eps) must be > 0");
  }
  out.code = varshamov_gilbert_packing(p, seed);

  const double low = mu_inf * (1.0 - out.eps);
  for (const auto& T : out.code.subsets) {
    DenseMatrix m(p, n);
    for (std::size_t i = 0; i < n; ++i) {
      auto col = m.col(i);
      if (i < s) {
        std::fill(col.begin(), col.end(), mu_inf);
        for (std::size_t j : T) col[j] = low;
      } else {
        std::copy(mu0.begin(), mu0.end(), col.begin());
      }
    }
    IntensityMatrix M(std::move(m));
    const ModelSpec spec = model_from_intensity(M, mu0, sigma, mu_inf);
    validate_model(spec);
    if (spec.s() > s) throw std::logic_error("packing matrix has more than s signal columns");
    out.kl_values.push_back(T.empty() ? 0.0 : kl_packing_instance(T.size(), s, out.eps, mu_inf, sigma));
    out.matrices.push_back(std::move(M));
  }

  const std::size_t m = out.matrices.size();
  std::vector<std::vector<double>> functionals;
  functionals.reserve(m);
  for (const auto& M : out.matrices) functionals.push_back(linear_functional(M, mu0));

  const double sd = static_cast<double>(s);
  out.separation_threshold =
      sd * sd * static_cast<double>(p) * out.eps * out.eps * mu_inf * mu_inf / 8.0;
  out.separations = DenseMatrix(m, m);
  out.min_separation = m < 2 ? 0.0 : INFINITY;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      double d2 = 0.0;
      for (std::size_t j = 0; j < p; ++j) {
        const double d = functionals[a][j] - functionals[b][j];
        d2 += d * d;
      }
      out.separations(a, b) = d2;
      out.separations(b, a) = d2;
      out.min_separation = std::min(out.min_separation, d2);
    }
  }
  // Relative slack absorbs round-off in the explicit functionals.
  if (m >= 2 && out.min_separation < out.separation_threshold * (1.0 - 1e-9)) {
    throw std::logic_error("packing separation below s^2 p eps^2 mu_inf^2 / 8");
  }
  return out;
}

}  // namespace sparsepois
