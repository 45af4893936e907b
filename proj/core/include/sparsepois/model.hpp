#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

namespace sparsepois {

/// Dense column-major matrix of doubles. Column i is contiguous.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t row, std::size_t col) const {
    return values_[col * rows_ + row];
  }
  double& operator()(std::size_t row, std::size_t col) {
    return values_[col * rows_ + row];
  }

  std::span<const double> col(std::size_t i) const {
    return {values_.data() + i * rows_, rows_};
  }
  std::span<double> col(std::size_t i) {
    return {values_.data() + i * rows_, rows_};
  }

  std::span<const double> data() const noexcept { return values_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Sorted, duplicate-free set of 0-based column indices.
class SupportSet {
 public:
  SupportSet() = default;
  SupportSet(std::initializer_list<std::size_t> indices)
      : SupportSet(std::vector<std::size_t>(indices)) {}
  explicit SupportSet(std::vector<std::size_t> indices);

  static SupportSet full(std::size_t n);

  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(std::size_t i) const;
  /// Largest index + 1, or 0 for the empty set.
  std::size_t bound() const noexcept {
    return indices_.empty() ? 0 : indices_.back() + 1;
  }
  /// Throws IndexOutOfRange unless every index is < n.
  void check_within(std::size_t n) const;

  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<std::size_t> indices_;
};

std::size_t symmetric_difference_size(const SupportSet& a, const SupportSet& b);

/**
 * One instance of the sparse scaled-Poisson model.
 *
 * Columns are 0-based here; JSON files use 1-based column keys. The keys of
 * `signals` form the sparsity set S.
 */
struct ModelSpec {
  std::size_t n = 0;
  std::size_t p = 0;
  double sigma = 1.0;
  std::vector<double> mu0;
  std::map<std::size_t, std::vector<double>> signals;
  double mu_inf = 0.0;

  std::size_t s() const noexcept { return signals.size(); }
  SupportSet support() const;
};

/// p x n intensity grid with strictly positive entries.
class IntensityMatrix {
 public:
  explicit IntensityMatrix(DenseMatrix values);

  std::size_t rows() const noexcept { return values_.rows(); }
  std::size_t cols() const noexcept { return values_.cols(); }
  std::span<const double> col(std::size_t i) const { return values_.col(i); }
  double operator()(std::size_t row, std::size_t col) const {
    return values_(row, col);
  }
  const DenseMatrix& values() const noexcept { return values_; }
  /// Largest entry.
  double max_entry() const;

 private:
  DenseMatrix values_;
};

/// p x n sample whose entries lie on the grid sigma^2 * N.
class ObservationMatrix {
 public:
  ObservationMatrix(DenseMatrix values, double sigma);

  std::size_t rows() const noexcept { return values_.rows(); }
  std::size_t cols() const noexcept { return values_.cols(); }
  std::span<const double> col(std::size_t i) const { return values_.col(i); }
  double operator()(std::size_t row, std::size_t col) const {
    return values_(row, col);
  }
  const DenseMatrix& values() const noexcept { return values_; }
  double sigma() const noexcept { return sigma_; }

 private:
  DenseMatrix values_;
  double sigma_;
};

/// Relative tolerance used by the sigma^2 * N grid check.
inline constexpr double kGridTolerance = 1e-9;

/// True when x / step is a nonnegative integer within kGridTolerance
/// (relative to max(1, x / step)).
bool on_grid(double x, double step);

/// Checks every invariant of the model class; returns the spec unchanged.
/// Throws EmptyClass, BadIntensity, BadSparsity or DimensionMismatch.
const ModelSpec& validate_model(const ModelSpec& spec);

IntensityMatrix intensity_matrix(const ModelSpec& spec);

/// L(M) = sum_i (mu_i - mu0).
std::vector<double> linear_functional(const IntensityMatrix& M,
                                      std::span<const double> mu0);

/// Column i is sigma^2 * Poisson(mu_i / sigma^2), drawn from the stream keyed
/// by (seed, Observation, i). Pure in (M, sigma, seed).
ObservationMatrix sample_observations(const IntensityMatrix& M, double sigma,
                                      std::uint64_t seed);

/// m background vectors drawn from sigma^2 * P_p(mu0 / sigma^2), keyed by
/// (seed, Auxiliary, k).
std::vector<std::vector<double>> sample_background(std::span<const double> mu0,
                                                   double sigma, std::size_t m,
                                                   std::uint64_t seed);

}  // namespace sparsepois

namespace sparsepois {

/// Builds the ModelSpec whose signal set is exactly the columns of M that
/// differ from mu0. Does not validate.
ModelSpec model_from_intensity(const IntensityMatrix& M, std::span<const double> mu0,
                               double sigma, double mu_inf);

}  // namespace sparsepois
