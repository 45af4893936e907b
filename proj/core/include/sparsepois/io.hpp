#pragma once

// JSON and CSV formats. Column indices and subset elements are 1-based in
// every file and 0-based in memory.

#include <cstdint>
#include <string>
#include <vector>

#include "sparsepois/concentration.hpp"
#include "sparsepois/estimators.hpp"
#include "sparsepois/harness.hpp"
#include "sparsepois/lower_bound.hpp"
#include "sparsepois/model.hpp"

namespace sparsepois {

/// {"n":..,"p":..,"sigma":..,"mu0":[..],"mu_inf":..,"signals":{"<i>":[..]}}
std::string model_to_json(const ModelSpec& spec);
ModelSpec model_from_json(const std::string& text);

/// {"value":[..],"support":[..] or null,"lambda":.. or null}
std::string estimate_to_json(const FunctionalEstimate& est);

/**
 * Experiment configuration:
 *   {"model": <ModelSpec>} or
 *   {"preset": {"kind":"uniform_lift"|"spike","n":..,"p":..,"s":..,
 *               "sigma":..,"mu0":..,"delta":..,"mu_inf":..(optional)}},
 *   "estimators": [{"kind":"naive"}, {"kind":"oracle"},
 *                  {"kind":"ght","lambda_scale":40},
 *                  {"kind":"ght_plugin","lambda_scale":40,"m_aux":100}],
 *   "reps": .., "seed": ..
 */
ExperimentConfig config_from_json(const std::string& text);

/// {"axes": {"n":[..], "s":[..], ...}, "cap": 10000}
SweepGrid grid_from_json(const std::string& text);

struct KlGrid {
  std::vector<double> eps;
  std::vector<std::size_t> s;
  std::vector<std::size_t> n;
  double sigma = 1.0;
  double mu0 = 1.0;
  double tol = 1e-12;
};

/// {"eps":[..],"s":[..],"n":[..],"sigma":1,"mu0":1,"tol":1e-12}
KlGrid kl_grid_from_json(const std::string& text);

struct Thm2Params {
  std::size_t n = 0;
  std::size_t s = 0;
  double sigma = 1.0;
  double mu0_max = 1.0;
};
/// {"n":..,"s":..,"sigma":..,"mu0_max":..}
Thm2Params thm2_params_from_json(const std::string& text);

struct Thm3Params {
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t s = 0;
  double sigma = 1.0;
  std::vector<double> mu0;
  double mu_inf = 1.0;
  std::uint64_t seed = 0;
};
/// {"n":..,"p":..,"s":..,"sigma":..,"mu0":[..] or scalar,"mu_inf":..,"seed":..}
Thm3Params thm3_params_from_json(const std::string& text);

std::string packing_to_json(const PackingCode& code);
std::string thm2_to_json(const TwoPriorInstance& inst);
std::string thm3_to_json(const PackingInstance& inst);

/// Columns: u,in_range,emp_freq,ci_low,ci_high,bound,pass
std::string tail_report_csv(const TailReport& report);

}  // namespace sparsepois
