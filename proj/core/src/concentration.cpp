#include "sparsepois/concentration.hpp"

#include <algorithm>
#include <cmath>

#include "sparsepois/error.hpp"
#include "sparsepois/parallel.hpp"
#include "sparsepois/poisson.hpp"
#include "sparsepois/random.hpp"
#include "sparsepois/stats.hpp"

namespace sparsepois {

namespace {

// Replications are grouped in fixed-size chunks and merged in chunk order,
// so sums are identical for any thread count.
constexpr std::uint64_t kChunk = 4096;

std::size_t chunk_count(std::uint64_t reps) {
  return static_cast<std::size_t>((reps + kChunk - 1) / kChunk);
}

}  // namespace

double lemma1_constant() { return std::cbrt(12.0) / 6.0; }

double lemma1_bound(std::size_t p, double u) {
  return (2.0 * static_cast<double>(p) + 1.0) *
         std::exp(-lemma1_constant() * std::pow(u, 2.0 / 3.0));
}

bool lemma1_in_range(double nu_inf, double u) {
  const double r = std::pow(nu_inf, 1.5);
  return 1.0 / r <= u && u <= 0.9 * r;
}

TailReport lemma1_tail_report(std::span<const double> nu, std::span<const double> u_grid,
                              std::uint64_t reps, std::uint64_t seed) {
  if (reps < 1000) throw Error(ErrorCode::InvalidArgument, "need at least 1000 replications");
  if (nu.empty()) throw Error(ErrorCode::InvalidArgument, "nu is empty");
  for (double x : nu) {
    if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "nu entries must be > 0");
  }
  const double nu_inf = *std::max_element(nu.begin(), nu.end());
  const double scale = nu_inf * std::sqrt(static_cast<double>(nu.size()));

  struct ChunkResult {
    std::vector<std::uint64_t> hits;
    MomentAccumulator stat;
  };
  std::vector<ChunkResult> chunks(chunk_count(reps));
  const auto tag = static_cast<std::uint64_t>(StreamTag::Lemma);

  parallel_for(chunks.size(), [&](std::size_t c) {
    ChunkResult& out = chunks[c];
    out.hits.assign(u_grid.size(), 0);
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min<std::uint64_t>(reps, begin + kChunk);
    for (std::uint64_t r = begin; r < end; ++r) {
      Xoshiro256 rng(derive_seed(seed, tag, r));
      double stat = 0.0;
      for (double mean : nu) {
        const double eta = static_cast<double>(sample_poisson(rng, mean));
        stat += (eta - mean) * (eta - mean) - eta;
      }
      out.stat.add(stat);
      for (std::size_t k = 0; k < u_grid.size(); ++k) {
        if (stat >= scale * u_grid[k]) ++out.hits[k];
      }
    }
  });

  TailReport report;
  report.nu.assign(nu.begin(), nu.end());
  report.replications = reps;
  report.seed = seed;
  MomentAccumulator stat;
  std::vector<std::uint64_t> hits(u_grid.size(), 0);
  for (const auto& c : chunks) {
    stat.merge(c.stat);
    for (std::size_t k = 0; k < hits.size(); ++k) hits[k] += c.hits[k];
  }
  report.stat_mean = stat.mean();
  report.stat_se = stat.standard_error();
  for (std::size_t k = 0; k < u_grid.size(); ++k) {
    TailRow row;
    row.u = u_grid[k];
    row.in_range = lemma1_in_range(nu_inf, row.u);
    row.hits = hits[k];
    row.emp_freq = static_cast<double>(hits[k]) / static_cast<double>(reps);
    const Interval ci = wilson_interval(hits[k], reps);
    row.ci_low = ci.low;
    row.ci_high = ci.high;
    row.bound = lemma1_bound(nu.size(), row.u);
    row.pass = row.ci_high <= row.bound;
    report.rows.push_back(row);
  }
  return report;
}

TailRow lemma1_tail_mc(std::span<const double> nu, double u, std::uint64_t reps,
                       std::uint64_t seed) {
  const double grid[] = {u};
  return lemma1_tail_report(nu, grid, reps, seed).rows.front();
}

FourthMomentResult fourth_moment_check(double mu, double sigma, std::uint64_t reps,
                                       std::uint64_t seed) {
  if (reps < 10'000) throw Error(ErrorCode::InvalidArgument, "need at least 10^4 replications");
  if (!(mu > 0.0) || !(sigma > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "mu and sigma must be > 0");
  }
  const double s2 = sigma * sigma;
  const double mean = mu / s2;
  struct Sums {
    double m4 = 0.0;
    double m8 = 0.0;
  };
  std::vector<Sums> chunks(chunk_count(reps));
  const auto tag = static_cast<std::uint64_t>(StreamTag::Moment);
  parallel_for(chunks.size(), [&](std::size_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min<std::uint64_t>(reps, begin + kChunk);
    Xoshiro256 rng(derive_seed(seed, tag, c));
    for (std::uint64_t r = begin; r < end; ++r) {
      const double xi = sigma * (static_cast<double>(sample_poisson(rng, mean)) - mean);
      const double x4 = xi * xi * xi * xi;
      chunks[c].m4 += x4;
      chunks[c].m8 += x4 * x4;
    }
  });
  Sums total;
  for (const auto& c : chunks) {
    total.m4 += c.m4;
    total.m8 += c.m8;
  }
  const double n = static_cast<double>(reps);
  FourthMomentResult out;
  out.mu = mu;
  out.sigma = sigma;
  out.reps = reps;
  out.empirical = total.m4 / n;
  out.exact = s2 * mu + 3.0 * mu * mu;
  out.se = std::sqrt(std::max(0.0, total.m8 / n - out.empirical * out.empirical) / n);
  out.z = out.se > 0.0 ? std::fabs(out.empirical - out.exact) / out.se : INFINITY;
  out.proof_bound = 4.0 * mu * mu;
  out.proof_condition = s2 <= std::cbrt(0.9) * mu;
  return out;
}

}  // namespace sparsepois
