#include "sparsepois/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "sparsepois/error.hpp"

namespace sparsepois {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::InvalidConfig, std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("bad value for '") + key + "': " + e.what());
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? get<T>(j, key) : fallback;
}

std::size_t parse_column_key(const std::string& key) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(key, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != key.size() || v == 0) {
    throw Error(ErrorCode::InvalidConfig, "signal keys must be 1-based column numbers, got '" + key + "'");
  }
  return static_cast<std::size_t>(v - 1);
}

ModelSpec model_from(const json& j) {
  ModelSpec spec;
  spec.n = get<std::size_t>(j, "n");
  spec.p = get<std::size_t>(j, "p");
  spec.sigma = get<double>(j, "sigma");
  spec.mu0 = get<std::vector<double>>(j, "mu0");
  spec.mu_inf = get<double>(j, "mu_inf");
  if (j.contains("signals")) {
    const json& sig = j.at("signals");
    if (!sig.is_object()) throw Error(ErrorCode::InvalidConfig, "'signals' must be an object");
    for (const auto& [key, value] : sig.items()) {
      try {
        spec.signals.emplace(parse_column_key(key), value.get<std::vector<double>>());
      } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("bad signal vector: ") + e.what());
      }
    }
  }
  return spec;
}

json model_json(const ModelSpec& spec) {
  json sig = json::object();
  for (const auto& [i, mu] : spec.signals) sig[std::to_string(i + 1)] = mu;
  return {{"n", spec.n}, {"p", spec.p}, {"sigma", spec.sigma}, {"mu0", spec.mu0},
          {"mu_inf", spec.mu_inf}, {"signals", sig}};
}

EstimatorSpec estimator_from(const json& j) {
  const auto kind = get<std::string>(j, "kind");
  EstimatorSpec e;
  if (kind == "naive") e.kind = EstimatorKind::Naive;
  else if (kind == "oracle") e.kind = EstimatorKind::Oracle;
  else if (kind == "ght") e.kind = EstimatorKind::Ght;
  else if (kind == "ght_plugin") e.kind = EstimatorKind::GhtPlugin;
  else throw Error(ErrorCode::InvalidConfig, "unknown estimator kind '" + kind + "'");
  e.lambda_scale = get_or<double>(j, "lambda_scale", kDefaultLambdaScale);
  e.m_aux = get_or<std::size_t>(j, "m_aux", e.kind == EstimatorKind::GhtPlugin ? 100 : 0);
  return e;
}

ModelPreset preset_from(const json& j) {
  ModelPreset pr;
  const auto kind = get_or<std::string>(j, "kind", "uniform_lift");
  if (kind == "uniform_lift") pr.kind = PresetKind::UniformLift;
  else if (kind == "spike") pr.kind = PresetKind::Spike;
  else throw Error(ErrorCode::InvalidConfig, "unknown preset kind '" + kind + "'");
  pr.n = get<std::size_t>(j, "n");
  pr.p = get<std::size_t>(j, "p");
  pr.s = get<std::size_t>(j, "s");
  pr.sigma = get<double>(j, "sigma");
  pr.mu0_level = get<double>(j, "mu0");
  pr.delta = get<double>(j, "delta");
  if (j.contains("mu_inf")) pr.mu_inf = get<double>(j, "mu_inf");
  return pr;
}

json indices_json(const std::vector<std::size_t>& idx) {
  json arr = json::array();
  for (std::size_t i : idx) arr.push_back(i + 1);
  return arr;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string model_to_json(const ModelSpec& spec) { return model_json(spec).dump(2); }

ModelSpec model_from_json(const std::string& text) { return model_from(parse(text)); }

std::string estimate_to_json(const FunctionalEstimate& est) {
  json j;
  j["value"] = est.value;
  j["support"] = est.support ? indices_json(est.support->indices()) : json(nullptr);
  j["lambda"] = est.lambda_used ? json(*est.lambda_used) : json(nullptr);
  return j.dump(2);
}

ExperimentConfig config_from_json(const std::string& text) {
  const json j = parse(text);
  ExperimentConfig cfg;
  if (j.contains("preset")) {
    cfg.preset = preset_from(j.at("preset"));
    cfg.model = make_model(*cfg.preset);
  } else if (j.contains("model")) {
    cfg.model = model_from(j.at("model"));
  } else {
    throw Error(ErrorCode::InvalidConfig, "config needs a 'model' or a 'preset'");
  }
  if (!j.contains("estimators") || !j.at("estimators").is_array()) {
    throw Error(ErrorCode::InvalidConfig, "config needs an 'estimators' array");
  }
  for (const auto& e : j.at("estimators")) cfg.estimators.push_back(estimator_from(e));
  cfg.reps = get<std::uint64_t>(j, "reps");
  cfg.seed = get_or<std::uint64_t>(j, "seed", 0);
  return cfg;
}

SweepGrid grid_from_json(const std::string& text) {
  const json j = parse(text);
  SweepGrid grid;
  const json& axes = j.contains("axes") ? j.at("axes") : j;
  for (const auto& [name, values] : axes.items()) {
    if (name == "cap") continue;
    try {
      grid.axes[name] = values.get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidConfig, "axis '" + name + "' must be a number list");
    }
  }
  grid.cap = get_or<std::size_t>(j, "cap", grid.cap);
  return grid;
}

KlGrid kl_grid_from_json(const std::string& text) {
  const json j = parse(text);
  KlGrid g;
  g.eps = get<std::vector<double>>(j, "eps");
  g.s = get<std::vector<std::size_t>>(j, "s");
  g.n = get<std::vector<std::size_t>>(j, "n");
  g.sigma = get_or<double>(j, "sigma", 1.0);
  g.mu0 = get_or<double>(j, "mu0", 1.0);
  g.tol = get_or<double>(j, "tol", 1e-12);
  return g;
}

Thm2Params thm2_params_from_json(const std::string& text) {
  const json j = parse(text);
  return {get<std::size_t>(j, "n"), get<std::size_t>(j, "s"), get_or<double>(j, "sigma", 1.0),
          get_or<double>(j, "mu0_max", 1.0)};
}

Thm3Params thm3_params_from_json(const std::string& text) {
  const json j = parse(text);
  Thm3Params t;
  t.n = get<std::size_t>(j, "n");
  t.p = get<std::size_t>(j, "p");
  t.s = get<std::size_t>(j, "s");
  t.sigma = get_or<double>(j, "sigma", 1.0);
  if (j.contains("mu0") && j.at("mu0").is_number()) {
    t.mu0.assign(t.p, get<double>(j, "mu0"));
  } else {
    t.mu0 = get<std::vector<double>>(j, "mu0");
  }
  t.mu_inf = get<double>(j, "mu_inf");
  t.seed = get_or<std::uint64_t>(j, "seed", 0);
  return t;
}

std::string packing_to_json(const PackingCode& code) {
  json subsets = json::array();
  for (const auto& T : code.subsets) subsets.push_back(indices_json(T));
  json j = {{"p", code.p},
            {"m", code.m},
            {"required_distance", code.required_distance},
            {"min_sym_diff", code.min_sym_diff},
            {"candidates_tried", code.candidates_tried},
            {"condition_ok", code.condition_ok},
            {"subsets", subsets}};
  return j.dump(2);
}

std::string thm2_to_json(const TwoPriorInstance& inst) {
  json j = {{"n", inst.n},
            {"s", inst.s},
            {"sigma", inst.sigma},
            {"mu0_max", inst.mu0_max},
            {"eps", inst.eps},
            {"mixture_weight", inst.mixture_weight},
            {"v", inst.v},
            {"m_var", inst.m_var},
            {"kl_bound", inst.kl_bound},
            {"kl_exact", inst.kl_exact},
            {"separation", inst.separation},
            {"two_v_plus_4_sqrt_m", 2.0 * inst.v + 4.0 * std::sqrt(inst.m_var)},
            {"mean_shift", inst.mean_shift},
            {"functional_variance", inst.functional_variance},
            {"log_outside_class", inst.log_outside_class},
            {"condition_ok", inst.condition_ok}};
  return j.dump(2);
}

std::string thm3_to_json(const PackingInstance& inst) {
  json subsets = json::array();
  for (const auto& T : inst.code.subsets) subsets.push_back(indices_json(T));
  json j = {{"n", inst.n},
            {"p", inst.p},
            {"s", inst.s},
            {"sigma", inst.sigma},
            {"mu_inf", inst.mu_inf},
            {"eps", inst.eps},
            {"m", inst.code.m},
            {"min_sym_diff", inst.code.min_sym_diff},
            {"kl_values", inst.kl_values},
            {"max_kl", inst.kl_values.empty() ? 0.0 : *std::max_element(inst.kl_values.begin(), inst.kl_values.end())},
            {"separation_threshold", inst.separation_threshold},
            {"min_separation", inst.min_separation},
            {"subsets", subsets}};
  return j.dump(2);
}

std::string tail_report_csv(const TailReport& report) {
  std::ostringstream os;
  os << "u,in_range,emp_freq,ci_low,ci_high,bound,pass\n";
  for (const auto& r : report.rows) {
    os << fmt(r.u) << ',' << (r.in_range ? 1 : 0) << ',' << fmt(r.emp_freq) << ','
       << fmt(r.ci_low) << ',' << fmt(r.ci_high) << ',' << fmt(r.bound) << ','
       << (r.pass ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace sparsepois
