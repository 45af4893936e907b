#include "sparsepois/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "sparsepois/error.hpp"
#include "sparsepois/parallel.hpp"
#include "sparsepois/random.hpp"
#include "sparsepois/stats.hpp"

namespace sparsepois {

namespace {

constexpr const char* kAxisOrder[] = {"n", "p", "s", "sigma", "lambda_scale"};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d2 = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d2 += (a[j] - b[j]) * (a[j] - b[j]);
  return d2;
}

std::size_t to_count(double x, const char* axis) {
  if (!(x >= 0.0) || x != std::floor(x)) {
    throw Error(ErrorCode::InvalidConfig, std::string("axis ") + axis + " needs nonnegative integers");
  }
  return static_cast<std::size_t>(x);
}

struct ReplicationResult {
  std::vector<double> sq_err;
  std::vector<double> support_err;
  std::vector<std::vector<double>> mu0_hat;
  std::vector<double> sigma_hat;
};

}  // namespace

std::string EstimatorSpec::label() const {
  switch (kind) {
    case EstimatorKind::Naive: return "naive";
    case EstimatorKind::Oracle: return "oracle";
    case EstimatorKind::Ght: return "ght";
    case EstimatorKind::GhtPlugin: return "ght_plugin[m_aux=" + std::to_string(m_aux) + "]";
  }
  return "unknown";
}

ModelSpec make_model(const ModelPreset& preset) {
  if (preset.s > preset.n) throw Error(ErrorCode::BadSparsity, "preset has s > n");
  if (!(preset.delta != 0.0)) throw Error(ErrorCode::InvalidConfig, "preset delta must be nonzero");
  ModelSpec spec;
  spec.n = preset.n;
  spec.p = preset.p;
  spec.sigma = preset.sigma;
  spec.mu0.assign(preset.p, preset.mu0_level);
  double top = preset.mu0_level;
  for (std::size_t i = 0; i < preset.s; ++i) {
    std::vector<double> mu = spec.mu0;
    if (preset.kind == PresetKind::UniformLift) {
      for (double& x : mu) x += preset.delta;
    } else {
      mu[0] += preset.delta;
    }
    for (double x : mu) top = std::max(top, x);
    spec.signals.emplace(i, std::move(mu));
  }
  spec.mu_inf = preset.mu_inf.value_or(top);
  return spec;
}

void validate_config(const ExperimentConfig& cfg) {
  validate_model(cfg.model);
  if (cfg.reps < 1) throw Error(ErrorCode::InvalidConfig, "reps must be >= 1");
  if (cfg.estimators.empty()) throw Error(ErrorCode::InvalidConfig, "estimator list is empty");
  for (const auto& e : cfg.estimators) {
    if (e.uses_lambda() && !(e.lambda_scale >= 0.0)) {
      throw Error(ErrorCode::InvalidConfig, "lambda_scale must be >= 0");
    }
    if (e.kind == EstimatorKind::GhtPlugin && e.m_aux < 1) {
      throw Error(ErrorCode::InvalidConfig, "ght_plugin needs m_aux >= 1");
    }
  }
}

RiskBounds compute_bounds(const ModelSpec& model) {
  const IntensityMatrix M = intensity_matrix(model);
  const double mu0_max = *std::max_element(model.mu0.begin(), model.mu0.end());
  RiskBounds b;
  b.oracle_exact = {oracle_risk_exact(M, model.support(), model.sigma), BoundKind::OracleExact, true};
  b.naive_exact = {naive_risk_exact(M, model.sigma), BoundKind::NaiveExact, true};
  b.ght_theorem1 = ght_risk_bound(model.n, model.p, model.s(), model.sigma, model.mu_inf);
  b.lower_thm2 = lower_bound_thm2(model.n, model.s(), model.sigma, mu0_max);
  b.lower_thm3 = lower_bound_thm3(model.s(), model.p, model.sigma, model.mu_inf);
  return b;
}

const EstimatorRisk* RiskReport::find(EstimatorKind kind) const {
  for (const auto& e : estimators) {
    if (e.spec.kind == kind) return &e;
  }
  return nullptr;
}

RiskReport run_risk_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const ModelSpec& model = cfg.model;
  const IntensityMatrix M = intensity_matrix(model);
  const std::vector<double> truth = linear_functional(M, model.mu0);
  const SupportSet S = model.support();
  const std::size_t k = cfg.estimators.size();

  std::vector<ReplicationResult> reps(cfg.reps);
  parallel_for(reps.size(), [&](std::size_t r) {
    const std::uint64_t rep_seed = derive_seed(cfg.seed, r);
    const ObservationMatrix X = sample_observations(M, model.sigma, rep_seed);
    ReplicationResult& out = reps[r];
    out.sq_err.resize(k);
    out.support_err.assign(k, 0.0);
    out.mu0_hat.resize(k);
    out.sigma_hat.assign(k, 0.0);
    for (std::size_t e = 0; e < k; ++e) {
      const EstimatorSpec& spec = cfg.estimators[e];
      FunctionalEstimate est;
      switch (spec.kind) {
        case EstimatorKind::Naive:
          est = naive_estimate(X, model.mu0);
          break;
        case EstimatorKind::Oracle:
          est = oracle_estimate(X, model.mu0, S);
          break;
        case EstimatorKind::Ght:
          est = ght_estimate(X, model.mu0, model.sigma, std::nullopt, spec.lambda_scale);
          break;
        case EstimatorKind::GhtPlugin: {
          const auto aux = sample_background(
              model.mu0, model.sigma, spec.m_aux,
              derive_seed(rep_seed, static_cast<std::uint64_t>(StreamTag::Auxiliary)));
          std::vector<double> pooled(X.values().data().begin(), X.values().data().end());
          for (const auto& v : aux) pooled.insert(pooled.end(), v.begin(), v.end());
          const SigmaEstimate sig = estimate_sigma(pooled);
          out.mu0_hat[e] = estimate_background(aux);
          out.sigma_hat[e] = sig.sigma;
          est = ght_estimate(X, out.mu0_hat[e], sig.sigma, std::nullopt, spec.lambda_scale);
          break;
        }
      }
      out.sq_err[e] = squared_distance(est.value, truth);
      if (spec.uses_lambda()) {
        out.support_err[e] = static_cast<double>(symmetric_difference_size(*est.support, S));
      }
    }
  });

  RiskReport report;
  report.n = model.n;
  report.p = model.p;
  report.s = model.s();
  report.sigma = model.sigma;
  report.mu_inf = model.mu_inf;
  report.reps = cfg.reps;
  report.seed = cfg.seed;
  report.bounds = compute_bounds(model);

  std::vector<double> column(cfg.reps);
  for (std::size_t e = 0; e < k; ++e) {
    const EstimatorSpec& spec = cfg.estimators[e];
    EstimatorRisk risk;
    risk.spec = spec;
    for (std::size_t r = 0; r < cfg.reps; ++r) column[r] = reps[r].sq_err[e];
    const MeanSe ms = mean_and_se(column);
    risk.mse = ms.mean;
    risk.se = ms.se;
    if (spec.uses_lambda()) {
      for (std::size_t r = 0; r < cfg.reps; ++r) column[r] = reps[r].support_err[e];
      risk.support_err = mean_and_se(column).mean;
    }
    if (spec.kind == EstimatorKind::GhtPlugin) {
      std::vector<double> mean_mu0(model.p, 0.0);
      double mean_sigma = 0.0;
      for (const auto& rr : reps) {
        for (std::size_t j = 0; j < model.p; ++j) mean_mu0[j] += rr.mu0_hat[e][j];
        mean_sigma += rr.sigma_hat[e];
      }
      for (double& x : mean_mu0) x /= static_cast<double>(cfg.reps);
      risk.mean_mu0_hat = std::move(mean_mu0);
      risk.mean_sigma_hat = mean_sigma / static_cast<double>(cfg.reps);
    }
    report.estimators.push_back(std::move(risk));
  }
  return report;
}

RiskReport plugin_experiment(const ExperimentConfig& cfg, std::size_t m_aux) {
  if (m_aux < 1) throw Error(ErrorCode::InvalidConfig, "m_aux must be >= 1");
  ExperimentConfig run = cfg;
  double scale = kDefaultLambdaScale;
  bool has_plugin = false;
  for (auto& e : run.estimators) {
    if (e.kind == EstimatorKind::GhtPlugin) {
      e.m_aux = m_aux;
      if (!has_plugin) scale = e.lambda_scale;
      has_plugin = true;
    }
  }
  if (!has_plugin) {
    for (const auto& e : run.estimators) {
      if (e.kind == EstimatorKind::Ght) {
        scale = e.lambda_scale;
        break;
      }
    }
    run.estimators.push_back({EstimatorKind::GhtPlugin, scale, m_aux});
  }
  const bool has_known = std::any_of(run.estimators.begin(), run.estimators.end(), [&](const EstimatorSpec& e) {
    return e.kind == EstimatorKind::Ght && e.lambda_scale == scale;
  });
  if (!has_known) run.estimators.push_back({EstimatorKind::Ght, scale, 0});
  return run_risk_experiment(run);
}

std::size_t SweepGrid::cell_count() const {
  std::size_t cells = 1;
  for (const auto& [name, values] : axes) {
    if (values.empty()) return 0;
    if (cells > cap) break;
    cells *= values.size();
  }
  return cells;
}

CsvSink::CsvSink(std::ostream& out, bool write_header) : out_(out) {
  if (write_header) out_ << csv_header() << std::flush;
}

void CsvSink::write(const RiskReport& report) {
  out_ << csv_rows(report) << std::flush;
}

std::string csv_header() {
  return "n,p,s,sigma,mu_inf,estimator,lambda_scale,reps,seed,mse,se,oracle_exact,"
         "naive_exact,ght_bound,lower_thm2,lower_thm3,condition_ok,support_err\n";
}

std::string csv_rows(const RiskReport& report) {
  std::ostringstream os;
  const RiskBounds& b = report.bounds;
  for (const auto& e : report.estimators) {
    os << report.n << ',' << report.p << ',' << report.s << ',' << fmt(report.sigma) << ','
       << fmt(report.mu_inf) << ',' << e.spec.label() << ','
       << (e.spec.uses_lambda() ? fmt(e.spec.lambda_scale) : std::string()) << ','
       << report.reps << ',' << report.seed << ',' << fmt(e.mse) << ',' << fmt(e.se) << ','
       << fmt(b.oracle_exact.value) << ',' << fmt(b.naive_exact.value) << ','
       << fmt(b.ght_theorem1.value) << ',' << fmt(b.lower_thm2.value) << ','
       << fmt(b.lower_thm3.value) << ',' << (b.ght_theorem1.condition_ok ? 1 : 0) << ','
       << (e.support_err ? fmt(*e.support_err) : std::string()) << '\n';
  }
  return os.str();
}

std::vector<RiskReport> run_sweep(const SweepGrid& grid, const ExperimentConfig& base,
                                  CsvSink* sink) {
  if (!base.preset) {
    throw Error(ErrorCode::InvalidConfig, "sweeps need a preset-based base configuration");
  }
  for (const auto& [name, values] : grid.axes) {
    if (std::find(std::begin(kAxisOrder), std::end(kAxisOrder), name) == std::end(kAxisOrder)) {
      throw Error(ErrorCode::InvalidConfig, "unknown sweep axis '" + name + "'");
    }
    if (values.empty()) throw Error(ErrorCode::InvalidConfig, "sweep axis '" + name + "' is empty");
  }
  const std::size_t cells = grid.cell_count();
  if (cells > grid.cap) {
    throw Error(ErrorCode::GridTooLarge, std::to_string(cells) + " cells exceed the cap of " +
                                             std::to_string(grid.cap));
  }

  // Axes in canonical order; absent axes contribute a single "keep" value.
  std::vector<std::pair<std::string, std::vector<double>>> axes;
  for (const char* name : kAxisOrder) {
    auto it = grid.axes.find(name);
    if (it != grid.axes.end()) axes.emplace_back(name, it->second);
  }

  std::vector<RiskReport> out;
  out.reserve(cells);
  std::vector<std::size_t> index(axes.size(), 0);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    ModelPreset preset = *base.preset;
    ExperimentConfig cfg = base;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const std::string& name = axes[a].first;
      const double v = axes[a].second[index[a]];
      if (name == "n") preset.n = to_count(v, "n");
      else if (name == "p") preset.p = to_count(v, "p");
      else if (name == "s") preset.s = to_count(v, "s");
      else if (name == "sigma") preset.sigma = v;
      else {
        for (auto& e : cfg.estimators) {
          if (e.uses_lambda()) e.lambda_scale = v;
        }
      }
    }
    cfg.preset = preset;
    cfg.model = make_model(preset);
    out.push_back(run_risk_experiment(cfg));
    if (sink) sink->write(out.back());

    for (std::size_t a = axes.size(); a-- > 0;) {
      if (++index[a] < axes[a].second.size()) break;
      index[a] = 0;
    }
  }
  return out;
}

}  // namespace sparsepois
