#include <string>

#include "doctest.h"
#include "json.hpp"
#include "sparsepois/error.hpp"
#include "sparsepois/io.hpp"

using namespace sparsepois;
using nlohmann::json;

namespace {

ErrorCode config_error(const std::string& text) {
  try {
    config_from_json(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("model JSON round trip uses 1-based columns") {
  ModelSpec spec;
  spec.n = 5;
  spec.p = 2;
  spec.sigma = 0.25;
  spec.mu0 = {1.0, 0.5};
  spec.mu_inf = 3.0;
  spec.signals[0] = {3.0, 0.5};
  spec.signals[4] = {1.0, 2.0};
  const std::string text = model_to_json(spec);
  const json j = json::parse(text);
  CHECK(j["signals"].contains("1"));
  CHECK(j["signals"].contains("5"));
  CHECK_FALSE(j["signals"].contains("0"));

  const ModelSpec back = model_from_json(text);
  CHECK(back.n == 5);
  CHECK(back.sigma == 0.25);
  CHECK(back.mu0 == spec.mu0);
  CHECK(back.signals == spec.signals);
}

TEST_CASE("model JSON rejects 0 and non-numeric column keys") {
  const std::string base = R"({"n":3,"p":1,"sigma":1,"mu0":[1],"mu_inf":2,"signals":{KEY:[2]}})";
  for (const char* key : {"\"0\"", "\"a\"", "\"1x\""}) {
    std::string text = base;
    text.replace(text.find("KEY"), 3, key);
    CHECK_THROWS_AS(model_from_json(text), Error);
  }
  CHECK_THROWS_AS(model_from_json("{not json"), Error);
  CHECK_THROWS_AS(model_from_json(R"({"n":3})"), Error);
}

TEST_CASE("estimate JSON") {
  FunctionalEstimate est;
  est.value = {1.5, -2.0};
  est.support = SupportSet{0, 3};
  est.lambda_used = 12.5;
  const json j = json::parse(estimate_to_json(est));
  CHECK(j["value"] == json({1.5, -2.0}));
  CHECK(j["support"] == json({1, 4}));
  CHECK(j["lambda"] == 12.5);

  FunctionalEstimate naive;
  naive.value = {0.0};
  const json k = json::parse(estimate_to_json(naive));
  CHECK(k["support"].is_null());
  CHECK(k["lambda"].is_null());
}

TEST_CASE("experiment config from a preset") {
  const auto cfg = config_from_json(R"({
    "preset": {"kind": "spike", "n": 50, "p": 4, "s": 3, "sigma": 0.5, "mu0": 1, "delta": 2},
    "estimators": [{"kind": "naive"}, {"kind": "ght", "lambda_scale": 2},
                   {"kind": "ght_plugin"}],
    "reps": 12, "seed": 9})");
  REQUIRE(cfg.preset);
  CHECK(cfg.preset->kind == PresetKind::Spike);
  CHECK(cfg.model.s() == 3);
  CHECK(cfg.model.mu_inf == 3.0);
  REQUIRE(cfg.estimators.size() == 3);
  CHECK(cfg.estimators[1].lambda_scale == 2.0);
  CHECK(cfg.estimators[2].m_aux == 100);
  CHECK(cfg.estimators[2].lambda_scale == kDefaultLambdaScale);
  CHECK(cfg.reps == 12);
  CHECK(cfg.seed == 9);
}

TEST_CASE("experiment config from an explicit model") {
  const auto cfg = config_from_json(R"({
    "model": {"n": 4, "p": 1, "sigma": 1, "mu0": [1], "mu_inf": 2, "signals": {"2": [2]}},
    "estimators": [{"kind": "oracle"}], "reps": 1})");
  CHECK_FALSE(cfg.preset);
  CHECK(cfg.model.support() == SupportSet{1});
  CHECK(cfg.seed == 0);
}

TEST_CASE("experiment config errors") {
  CHECK(config_error(R"({"estimators": [{"kind": "naive"}], "reps": 1})") == ErrorCode::InvalidConfig);
  CHECK(config_error(R"({"preset": {"n": 5, "p": 1, "s": 1, "sigma": 1, "mu0": 1, "delta": 1},
                         "estimators": [{"kind": "magic"}], "reps": 1})") == ErrorCode::InvalidConfig);
  CHECK(config_error(R"({"preset": {"kind": "wave", "n": 5, "p": 1, "s": 1, "sigma": 1, "mu0": 1, "delta": 1},
                         "estimators": [], "reps": 1})") == ErrorCode::InvalidConfig);
  CHECK(config_error(R"({"preset": {"n": 5, "p": 1, "s": 1, "sigma": 1, "mu0": 1, "delta": 1},
                         "estimators": [{"kind": "naive"}], "reps": "many"})") == ErrorCode::InvalidConfig);
}

TEST_CASE("grid JSON") {
  const auto g = grid_from_json(R"({"axes": {"n": [100, 400], "s": [1, 4]}, "cap": 50})");
  CHECK(g.axes.at("n") == std::vector<double>{100, 400});
  CHECK(g.cap == 50);
  CHECK(g.cell_count() == 4);
  const auto bare = grid_from_json(R"({"sigma": [0.1]})");
  CHECK(bare.axes.at("sigma") == std::vector<double>{0.1});
  CHECK(bare.cap == 10000);
  CHECK_THROWS_AS(grid_from_json(R"({"axes": {"n": "x"}})"), Error);
}

TEST_CASE("KL grid and lower-bound parameter JSON") {
  const auto kl = kl_grid_from_json(R"({"eps": [0.5, 1], "s": [4], "n": [100, 1000]})");
  CHECK(kl.eps.size() == 2);
  CHECK(kl.sigma == 1.0);
  CHECK(kl.tol == 1e-12);

  const auto t2 = thm2_params_from_json(R"({"n": 32768, "s": 128})");
  CHECK(t2.n == 32768);
  CHECK(t2.mu0_max == 1.0);

  const auto t3 = thm3_params_from_json(R"({"n": 10, "p": 16, "s": 2, "mu0": 0.5, "mu_inf": 1})");
  CHECK(t3.mu0 == std::vector<double>(16, 0.5));
  const auto t3b = thm3_params_from_json(R"({"n": 10, "p": 2, "s": 2, "mu0": [0.5, 1], "mu_inf": 1})");
  CHECK(t3b.mu0 == std::vector<double>{0.5, 1});
}

TEST_CASE("packing JSON lists 1-based subsets") {
  PackingCode code;
  code.p = 4;
  code.m = 2;
  code.subsets = {{}, {0, 3}};
  const json j = json::parse(packing_to_json(code));
  CHECK(j["subsets"][0].empty());
  CHECK(j["subsets"][1] == json({1, 4}));
}

TEST_CASE("tail report CSV") {
  TailReport rep;
  TailRow row;
  row.u = 60;
  row.in_range = true;
  row.bound = 0.5;
  row.pass = true;
  rep.rows.push_back(row);
  CHECK(tail_report_csv(rep) == "u,in_range,emp_freq,ci_low,ci_high,bound,pass\n60,1,0,0,0,0.5,1\n");
}
