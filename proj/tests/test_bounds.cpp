#include <cmath>
#include <random>

#include "doctest.h"
#include "sparsepois/bounds.hpp"
#include "sparsepois/error.hpp"
#include "sparsepois/estimators.hpp"
#include "sparsepois/model.hpp"
#include "test_support.hpp"

using namespace sparsepois;

TEST_CASE("oracle_risk_exact and naive_risk_exact") {
  const IntensityMatrix ones(DenseMatrix(3, 5, 1.0));
  CHECK(oracle_risk_exact(ones, SupportSet{}, 0.1) == 0.0);
  CHECK(oracle_risk_exact(ones, SupportSet{1, 3}, 0.1) == doctest::Approx(0.06));
  CHECK_THROWS_AS(oracle_risk_exact(ones, SupportSet{5}, 0.1), Error);

  const IntensityMatrix big(DenseMatrix(16, 100, 1.0));
  CHECK(naive_risk_exact(big, 0.1) == doctest::Approx(16.0));

  DenseMatrix one_col(4, 1);
  one_col(0, 0) = 1; one_col(1, 0) = 2; one_col(2, 0) = 3; one_col(3, 0) = 4;
  const IntensityMatrix single(one_col);
  CHECK(naive_risk_exact(single, 0.3) == oracle_risk_exact(single, SupportSet{0}, 0.3));
}

TEST_CASE("oracle and naive exact risks match Monte Carlo") {
  ModelSpec spec;
  spec.n = 40;
  spec.p = 4;
  spec.sigma = 0.3;
  spec.mu0 = {1.0, 0.5, 2.0, 1.0};
  spec.mu_inf = 4.0;
  spec.signals[2] = {3.0, 0.5, 2.0, 4.0};
  spec.signals[7] = {1.0, 1.5, 2.5, 1.0};
  spec.signals[30] = {2.0, 2.0, 2.0, 2.0};
  const auto M = intensity_matrix(spec);
  const auto L = linear_functional(M, spec.mu0);
  const auto S = spec.support();
  const int reps = 10000;
  std::vector<double> oracle_err(reps), naive_err(reps);
  for (int r = 0; r < reps; ++r) {
    const auto X = sample_observations(M, spec.sigma, 9000 + r);
    const auto o = oracle_estimate(X, spec.mu0, S).value;
    const auto nv = naive_estimate(X, spec.mu0).value;
    double eo = 0.0, en = 0.0;
    for (std::size_t j = 0; j < spec.p; ++j) {
      eo += (o[j] - L[j]) * (o[j] - L[j]);
      en += (nv[j] - L[j]) * (nv[j] - L[j]);
    }
    oracle_err[r] = eo;
    naive_err[r] = en;
  }
  auto check = [&](const std::vector<double>& err, double exact) {
    double mean = 0.0;
    for (double e : err) mean += e;
    mean /= reps;
    double var = 0.0;
    for (double e : err) var += (e - mean) * (e - mean);
    const double se = std::sqrt(var / (reps - 1) / reps);
    CHECK(std::fabs(mean - exact) <= 3.0 * se);
  };
  check(oracle_err, oracle_risk_exact(M, S, spec.sigma));
  check(naive_err, naive_risk_exact(M, spec.sigma));
}

TEST_CASE("property: exact risks respect the mu_inf envelopes") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> level(0.1, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = 1 + gen() % 6, n = 1 + gen() % 20;
    const double mu_inf = 5.0, sigma = 0.2 + level(gen);
    DenseMatrix m(p, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < p; ++j) m(j, i) = mu_inf * level(gen);
    const IntensityMatrix M(m);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (gen() % 3 == 0) idx.push_back(i);
    const SupportSet S(idx);
    const double s2 = sigma * sigma;
    CHECK(oracle_risk_exact(M, S, sigma) <= mu_inf * s2 * S.size() * p * (1 + 1e-12));
    CHECK(naive_risk_exact(M, sigma) <= mu_inf * s2 * n * p * (1 + 1e-12));
  }
}

TEST_CASE("ght_risk_bound") {
  CHECK(ght_risk_bound(10, 4, 0, 1, 1).value == 0.0);
  const auto b = ght_risk_bound(1, 1, 1, 1, 1);
  CHECK(b.value == doctest::Approx(104.1040898356437634).epsilon(1e-13));
  CHECK(b.kind == BoundKind::GhtTheorem1);
  // 40 log^{3/2} 2 ~ 23.08 > 0.9 for sigma = mu_inf = 1.
  CHECK_FALSE(b.condition_ok);
  CHECK(ght_risk_bound(100, 16, 4, 0.2, 1.5).value ==
        doctest::Approx(4.0 * ght_risk_bound(100, 16, 4, 0.1, 1.5).value));
  CHECK(ght_risk_bound(100, 16, 4, 0.05, 1.5).condition_ok);
}

TEST_CASE("ght_bound_condition") {
  // u = 40 log^{3/2}(2np) must sit in [r^{-1}, 0.9 r], r = (mu_inf / sigma^2)^{3/2}.
  const double u = 40.0 * std::pow(std::log(2.0 * 100 * 16), 1.5);
  const double sigma_edge = std::sqrt(std::pow(u / 0.9, -2.0 / 3.0));
  CHECK(ght_bound_condition(100, 16, sigma_edge * 0.999, 1.0));
  CHECK_FALSE(ght_bound_condition(100, 16, sigma_edge * 1.001, 1.0));
}

TEST_CASE("lower_bound_thm2") {
  const auto b = lower_bound_thm2(32768, 128, 1.0, 1.0);
  CHECK(b.value == doctest::Approx(22.13747252688916949).epsilon(1e-13));
  CHECK(b.condition_ok);
  CHECK(b.kind == BoundKind::LowerThm2);
  CHECK(lower_bound_thm2(65536, 128, 1.0, 1.0).value > b.value);
  const auto small = lower_bound_thm2(32768, 100, 1.0, 1.0);
  CHECK_FALSE(small.condition_ok);
  CHECK(small.value > 0.0);
  CHECK(lower_bound_thm2(100, 0, 1.0, 1.0).value == 0.0);
}

TEST_CASE("lower_bound_thm3") {
  const auto b = lower_bound_thm3(2, 16, 1.0, 1.0);
  CHECK(b.value == 0.001953125);
  CHECK(b.condition_ok);
  CHECK_FALSE(lower_bound_thm3(2, 8, 1.0, 1.0).condition_ok);
  CHECK(lower_bound_thm3(6, 16, 1.0, 1.0).value == doctest::Approx(3.0 * b.value));
  CHECK(lower_bound_thm3(2, 48, 1.0, 1.0).value == doctest::Approx(3.0 * b.value));
}

TEST_CASE("poisson_kl matches the series oracle") {
  CHECK(poisson_kl(3.5, 3.5) == 0.0);
  CHECK(poisson_kl(1, 2) == doctest::Approx(0.30685281944005469).epsilon(1e-14));
  CHECK(poisson_kl(1, 2) ==
        doctest::Approx(static_cast<double>(oracle::poisson_kl_series(1, 2))).epsilon(1e-10));
  CHECK(poisson_kl(0.5, 1) == doctest::Approx(0.15342640972002735).epsilon(1e-14));
  CHECK(poisson_kl(0.5, 1) ==
        doctest::Approx(static_cast<double>(oracle::poisson_kl_series(0.5, 1))).epsilon(1e-10));
  CHECK_THROWS_AS(poisson_kl(0, 1), Error);
  CHECK_THROWS_AS(poisson_kl(1, -1), Error);
}

TEST_CASE("property: Gibbs inequality for poisson_kl") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> rate(0.01, 50.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = rate(gen), b = rate(gen);
    CHECK(poisson_kl(a, b) > 0.0);
    CHECK(poisson_kl(a, a) == 0.0);
  }
  for (int trial = 0; trial < 30; ++trial) {
    const double a = 0.1 + 10.0 * (trial % 7) / 7.0, b = 0.2 + 8.0 * (trial % 5) / 5.0;
    CHECK(poisson_kl(a, b) ==
          doctest::Approx(static_cast<double>(oracle::poisson_kl_series(a, b))).epsilon(1e-9));
  }
}

TEST_CASE("kl_packing_instance") {
  CHECK(kl_packing_instance(0, 3, 0.5, 1.0, 1.0) == 0.0);
  const double v = kl_packing_instance(1, 1, 0.5, 1.0, 1.0);
  CHECK(v == doctest::Approx(0.15342640972002735).epsilon(1e-14));
  CHECK(v <= 1 * 1 * 0.25 * 1.0 / 1.0);
  CHECK(kl_packing_instance(3, 2, 0.2, 1.5, 0.7) ==
        doctest::Approx(2.0 * kl_packing_instance(3, 1, 0.2, 1.5, 0.7)).epsilon(1e-15));
  CHECK_THROWS_AS(kl_packing_instance(1, 1, 0.0, 1, 1), Error);
  CHECK_THROWS_AS(kl_packing_instance(1, 1, 1.0, 1, 1), Error);
  try {
    kl_packing_instance(1, 1, 1.5, 1, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadEps);
  }
}

TEST_CASE("property: kl_packing_instance equals the coordinatewise sum") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t s = 1 + gen() % 20, t = 1 + gen() % 48;
    const double eps = 0.001 + 0.998 * unit(gen);
    const double mu_inf = 0.1 + 10.0 * unit(gen);
    const double sigma = 0.05 + 3.0 * unit(gen);
    const double direct = static_cast<double>(s * t) *
                          poisson_kl(mu_inf * (1 - eps) / (sigma * sigma), mu_inf / (sigma * sigma));
    CHECK(std::fabs(kl_packing_instance(t, s, eps, mu_inf, sigma) - direct) <= 1e-12 * std::fabs(direct));
    CHECK(kl_packing_instance(t, s, eps, mu_inf, sigma) <=
          static_cast<double>(s * t) * eps * eps * mu_inf / (sigma * sigma) * (1 + 1e-12));
  }
}

TEST_CASE("kl_mixture_bound") {
  CHECK(kl_mixture_bound(100, 4, 1, 0, 1) == 0.0);
  CHECK(kl_mixture_bound(100, 4, 1, 1, 1) == doctest::Approx(0.068731273138361809).epsilon(1e-14));
  CHECK(kl_mixture_bound(1000, 4, 1, 1, 1) < kl_mixture_bound(100, 4, 1, 1, 1));
}

// Direct evaluation of n * sum_k q_mix(k) log(q_mix(k) / q_0(k)) in long double.
static long double mixture_kl_oracle(std::size_t n, std::size_t s, double sigma, double eps,
                                     double mu0) {
  const double a = mu0 / (sigma * sigma), b = a + eps;
  const std::size_t kmax = static_cast<std::size_t>(b + 40.0 * std::sqrt(b) + 60.0);
  const auto q0 = oracle::poisson_pmf_table(a, kmax);
  const auto q1 = oracle::poisson_pmf_table(b, kmax);
  const long double w = static_cast<long double>(s) / (2.0L * n);
  long double sum = 0.0L;
  for (std::size_t k = 0; k <= kmax; ++k) {
    const long double qm = (1 - w) * q0[k] + w * q1[k];
    if (qm > 0) sum += qm * std::log(qm / q0[k]);
  }
  return n * sum;
}

TEST_CASE("kl_mixture_exact") {
  CHECK(kl_mixture_exact(100, 4, 1, 0, 1) == 0.0);
  const double v = kl_mixture_exact(100, 4, 1, 1, 1);
  CHECK(v > 0.0);
  CHECK(v < 0.068731273138361809);
  CHECK(v == doctest::Approx(0.031145967147647712).epsilon(1e-10));
  CHECK(kl_mixture_exact(100, 4, 1, 1, 1) == v);
  CHECK(v == doctest::Approx(static_cast<double>(mixture_kl_oracle(100, 4, 1, 1, 1))).epsilon(1e-9));
  CHECK_THROWS_AS(kl_mixture_exact(10, 21, 1, 1, 1), Error);
  try {
    kl_mixture_exact(100, 4, 0.001, 1, 1e6, 1e-12, 1000);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoConvergence);
  }
}

TEST_CASE("property: kl_mixture_exact <= kl_mixture_bound and agrees with a direct sum") {
  for (double eps = 0.1; eps <= 2.0 + 1e-9; eps += 0.1) {
    for (std::size_t s : {4, 16, 64}) {
      for (std::size_t n : {100, 10000}) {
        CAPTURE(eps);
        CAPTURE(s);
        CAPTURE(n);
        const double exact = kl_mixture_exact(n, s, 1.0, eps, 1.0);
        CHECK(exact <= kl_mixture_bound(n, s, 1.0, eps, 1.0));
        CHECK(exact == doctest::Approx(static_cast<double>(mixture_kl_oracle(n, s, 1.0, eps, 1.0)))
                           .epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("KL at the two-prior epsilon stays below 1/8") {
  for (std::size_t s : {128, 200, 500}) {
    for (std::size_t n : {1000, 32768, 1000000}) {
      const double sigma = 1.0, mu0 = 1.0;
      const double eps = std::sqrt(mu0 / (sigma * sigma) *
                                   std::log1p(static_cast<double>(n) / (2.0 * s * s)));
      const double bound = kl_mixture_bound(n, s, sigma, eps, mu0);
      CHECK(bound == doctest::Approx(static_cast<double>(s * s) / (4.0 * n) *
                                     (static_cast<double>(n) / (2.0 * s * s))));
      CHECK(bound <= 0.125 + 1e-12);
      CHECK(kl_mixture_exact(n, s, sigma, eps, mu0) <= 0.125);
    }
  }
}
