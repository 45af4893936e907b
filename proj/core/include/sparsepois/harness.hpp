#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sparsepois/bounds.hpp"
#include "sparsepois/estimators.hpp"
#include "sparsepois/model.hpp"

namespace sparsepois {

enum class EstimatorKind { Naive, Oracle, Ght, GhtPlugin };

struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::Naive;
  double lambda_scale = kDefaultLambdaScale;  // Ght and GhtPlugin only
  std::size_t m_aux = 0;                      // GhtPlugin only

  /// "naive", "oracle", "ght", or "ght_plugin[m_aux=<m>]".
  std::string label() const;
  bool uses_lambda() const noexcept {
    return kind == EstimatorKind::Ght || kind == EstimatorKind::GhtPlugin;
  }
};

/// Named signal layouts. Neither is claimed to be a worst case.
///  - UniformLift: mu_i = mu0 + delta * 1_p for the first s columns.
///  - Spike:       mu_i = mu0 + delta * e_1 for the first s columns.
enum class PresetKind { UniformLift, Spike };

struct ModelPreset {
  PresetKind kind = PresetKind::UniformLift;
  std::size_t n = 1;
  std::size_t p = 1;
  std::size_t s = 0;
  double sigma = 1.0;
  double mu0_level = 1.0;
  double delta = 1.0;
  /// Defaults to the largest intensity entry.
  std::optional<double> mu_inf;
};

ModelSpec make_model(const ModelPreset& preset);

struct ExperimentConfig {
  ModelSpec model;
  /// Present when the model was generated from a preset; sweeps need it.
  std::optional<ModelPreset> preset;
  std::vector<EstimatorSpec> estimators;
  std::uint64_t reps = 1;
  std::uint64_t seed = 0;
  std::string output_path;
};

/// Throws InvalidConfig (or the model's validation error) when cfg is unusable.
void validate_config(const ExperimentConfig& cfg);

struct RiskBounds {
  RiskBound oracle_exact;
  RiskBound naive_exact;
  RiskBound ght_theorem1;
  RiskBound lower_thm2;
  RiskBound lower_thm3;
};

RiskBounds compute_bounds(const ModelSpec& model);

struct EstimatorRisk {
  EstimatorSpec spec;
  double mse = 0.0;
  double se = 0.0;
  /// Mean |S_hat symmetric-difference S|; GHT variants only.
  std::optional<double> support_err;
  /// Plug-in diagnostics averaged over replications.
  std::optional<std::vector<double>> mean_mu0_hat;
  std::optional<double> mean_sigma_hat;
};

struct RiskReport {
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t s = 0;
  double sigma = 0.0;
  double mu_inf = 0.0;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<EstimatorRisk> estimators;
  RiskBounds bounds;

  const EstimatorRisk* find(EstimatorKind kind) const;
};

/**
 * Monte Carlo risk of each configured estimator.
 *
 * Replication r draws X from the streams keyed by (seed, r, column) and the
 * auxiliary background sample (plug-in only) from
 * (seed, r, Auxiliary, Auxiliary, k);
 * see random.hpp. Replications run in parallel but every per-replication
 * squared error lands in its own slot and is reduced in index order, so the
 * report is bit-identical for any thread count.
 */
RiskReport run_risk_experiment(const ExperimentConfig& cfg);

/// Runs the plug-in estimator with m_aux auxiliary vectors next to the
/// known-parameter GHT at the same lambda_scale (added if missing).
RiskReport plugin_experiment(const ExperimentConfig& cfg, std::size_t m_aux);

struct SweepGrid {
  /// Axis name -> values. Recognised names: n, p, s, sigma, lambda_scale.
  std::map<std::string, std::vector<double>> axes;
  std::size_t cap = 10'000;

  std::size_t cell_count() const;
};

/// Writes RiskReports as CSV rows; each row is flushed as soon as it is written.
class CsvSink {
 public:
  explicit CsvSink(std::ostream& out, bool write_header = true);
  void write(const RiskReport& report);

 private:
  std::ostream& out_;
};

std::string csv_header();
std::string csv_rows(const RiskReport& report);

/// One report per grid cell; axes iterate in the order n, p, s, sigma,
/// lambda_scale with the last varying fastest. base.preset is required.
/// Throws GridTooLarge when the cell count exceeds grid.cap.
std::vector<RiskReport> run_sweep(const SweepGrid& grid, const ExperimentConfig& base,
                                  CsvSink* sink = nullptr);

}  // namespace sparsepois
