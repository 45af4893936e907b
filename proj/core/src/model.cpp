#include "sparsepois/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparsepois/error.hpp"
#include "sparsepois/poisson.hpp"

namespace sparsepois {

SupportSet::SupportSet(std::vector<std::size_t> indices)
    : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

SupportSet SupportSet::full(std::size_t n) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  return SupportSet(std::move(all));
}

bool SupportSet::contains(std::size_t i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

void SupportSet::check_within(std::size_t n) const {
  if (bound() > n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "support index " + std::to_string(indices_.back()) +
                    " outside [0, " + std::to_string(n) + ")");
  }
}

std::size_t symmetric_difference_size(const SupportSet& a, const SupportSet& b) {
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return a.size() + b.size() - 2 * common;
}

SupportSet ModelSpec::support() const {
  std::vector<std::size_t> keys;
  keys.reserve(signals.size());
  for (const auto& [i, _] : signals) keys.push_back(i);
  return SupportSet(std::move(keys));
}

IntensityMatrix::IntensityMatrix(DenseMatrix values) : values_(std::move(values)) {
  for (double x : values_.data()) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw Error(ErrorCode::BadIntensity, "intensity entries must be finite and > 0");
    }
  }
}

double IntensityMatrix::max_entry() const {
  const auto d = values_.data();
  return d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
}

ObservationMatrix::ObservationMatrix(DenseMatrix values, double sigma)
    : values_(std::move(values)), sigma_(sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be > 0");
}

bool on_grid(double x, double step) {
  if (x < 0.0 || !(step > 0.0)) return false;
  const double ratio = x / step;
  return std::fabs(ratio - std::round(ratio)) <= kGridTolerance * std::max(1.0, ratio);
}

const ModelSpec& validate_model(const ModelSpec& spec) {
  if (spec.n == 0 || spec.p == 0) {
    throw Error(ErrorCode::InvalidArgument, "n and p must be >= 1");
  }
  if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma)) {
    throw Error(ErrorCode::InvalidArgument, "sigma must be finite and > 0");
  }
  if (spec.mu0.size() != spec.p) {
    throw Error(ErrorCode::DimensionMismatch, "mu0 must have length p");
  }
  for (double x : spec.mu0) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw Error(ErrorCode::BadIntensity, "mu0 entries must be finite and > 0");
    }
  }
  const double mu0_max = *std::max_element(spec.mu0.begin(), spec.mu0.end());
  if (!(spec.mu_inf >= mu0_max)) {
    throw Error(ErrorCode::EmptyClass, "mu_inf < max(mu0): the model class is empty");
  }
  if (spec.signals.size() > spec.n) {
    throw Error(ErrorCode::BadSparsity, "more signal columns than n");
  }
  for (const auto& [i, mu] : spec.signals) {
    if (i >= spec.n) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "signal column " + std::to_string(i) + " outside [0, n)");
    }
    if (mu.size() != spec.p) {
      throw Error(ErrorCode::DimensionMismatch, "signal vectors must have length p");
    }
    for (double x : mu) {
      if (!(x > 0.0) || !(x <= spec.mu_inf)) {
        throw Error(ErrorCode::BadIntensity,
                    "signal column " + std::to_string(i) + " has an entry outside (0, mu_inf]");
      }
    }
    if (mu == spec.mu0) {
      throw Error(ErrorCode::BadSparsity,
                  "signal column " + std::to_string(i) + " equals mu0");
    }
  }
  return spec;
}

IntensityMatrix intensity_matrix(const ModelSpec& spec) {
  validate_model(spec);
  DenseMatrix m(spec.p, spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    auto it = spec.signals.find(i);
    const auto& src = it == spec.signals.end() ? spec.mu0 : it->second;
    std::copy(src.begin(), src.end(), m.col(i).begin());
  }
  return IntensityMatrix(std::move(m));
}

std::vector<double> linear_functional(const IntensityMatrix& M,
                                      std::span<const double> mu0) {
  if (mu0.size() != M.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "mu0 length differs from the row count");
  }
  std::vector<double> out(M.rows(), 0.0);
  for (std::size_t i = 0; i < M.cols(); ++i) {
    const auto c = M.col(i);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += c[j] - mu0[j];
  }
  return out;
}

ObservationMatrix sample_observations(const IntensityMatrix& M, double sigma,
                                      std::uint64_t seed) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be > 0");
  const double s2 = sigma * sigma;
  DenseMatrix x(M.rows(), M.cols());
  const auto tag = static_cast<std::uint64_t>(StreamTag::Observation);
  for (std::size_t i = 0; i < M.cols(); ++i) {
    Xoshiro256 rng(derive_seed(seed, tag, i));
    const auto mu = M.col(i);
    auto out = x.col(i);
    for (std::size_t j = 0; j < mu.size(); ++j) {
      out[j] = s2 * static_cast<double>(sample_poisson(rng, mu[j] / s2));
    }
  }
  return ObservationMatrix(std::move(x), sigma);
}

std::vector<std::vector<double>> sample_background(std::span<const double> mu0,
                                                   double sigma, std::size_t m,
                                                   std::uint64_t seed) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be > 0");
  const double s2 = sigma * sigma;
  const auto tag = static_cast<std::uint64_t>(StreamTag::Auxiliary);
  std::vector<std::vector<double>> out(m, std::vector<double>(mu0.size()));
  for (std::size_t k = 0; k < m; ++k) {
    Xoshiro256 rng(derive_seed(seed, tag, k));
    for (std::size_t j = 0; j < mu0.size(); ++j) {
      out[k][j] = s2 * static_cast<double>(sample_poisson(rng, mu0[j] / s2));
    }
  }
  return out;
}

}  // namespace sparsepois

namespace sparsepois {

ModelSpec model_from_intensity(const IntensityMatrix& M, std::span<const double> mu0,
                               double sigma, double mu_inf) {
  if (mu0.size() != M.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "mu0 length differs from the row count");
  }
  ModelSpec spec;
  spec.n = M.cols();
  spec.p = M.rows();
  spec.sigma = sigma;
  spec.mu0.assign(mu0.begin(), mu0.end());
  spec.mu_inf = mu_inf;
  for (std::size_t i = 0; i < M.cols(); ++i) {
    const auto c = M.col(i);
    if (!std::equal(c.begin(), c.end(), mu0.begin())) {
      spec.signals.emplace(i, std::vector<double>(c.begin(), c.end()));
    }
  }
  return spec;
}

}  // namespace sparsepois
