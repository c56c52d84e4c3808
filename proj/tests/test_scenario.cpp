#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ionlink/scenario.hpp"

using namespace ionlink;

namespace {

const char* kGoodConfig = R"({
  "protocol": {"lambda1": 1.0e6, "lambda2": 2.0e6},
  "channel": {"gamma": 200.0, "gamma_p": 0.0, "t_flight": 0.001},
  "mode": "analytic-noisy",
  "oracle": {"samples": 2000, "seed": 7},
  "output": {"format": "csv", "path": "out.csv"}
})";

}  // namespace

TEST_CASE("parse a complete scenario") {
  ScenarioConfig c = parse_scenario(kGoodConfig);
  CHECK(c.protocol.lambda1 == 1.0e6);
  CHECK(c.protocol.t_a == doctest::Approx(std::numbers::pi / 4.0 / 1.0e6).epsilon(1e-15));
  CHECK(c.protocol.t_b == doctest::Approx(std::numbers::pi / 2.0 / 2.0e6).epsilon(1e-15));
  CHECK(c.protocol.canonical());
  CHECK(c.channel.gamma == 200.0);
  CHECK(c.mode == FlightMode::analytic_noisy);
  CHECK(c.oracle.enabled);
  CHECK(c.oracle.samples == 2000);
  CHECK(c.output.format == "csv");
}

TEST_CASE("missing keys are reported by name") {
  try {
    parse_scenario(R"({"protocol": {"lambda1": 1.0}, "channel": {}})");
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("protocol.lambda2") != std::string::npos);
  }

  try {
    parse_scenario(R"({"protocol": {"lambda1": 1.0, "lambda2": 1.0}, "channel": {"gamma": 1.0}})");
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("channel.gamma_p") != std::string::npos);
  }
}

TEST_CASE("malformed JSON is a config error") {
  CHECK_THROWS_AS(parse_scenario("{not json"), config_error);
}

TEST_CASE("non-canonical times need the override flag") {
  const char* base = R"({
    "protocol": {"lambda1": 1.0, "lambda2": 1.0, "t_a": 0.5, "t_b": 0.5},
    "channel": {"gamma": 0.0, "gamma_p": 0.0, "t_flight": 0.0}%s
  })";
  char buf[512];
  std::snprintf(buf, sizeof(buf), base, "");
  CHECK_THROWS_AS(parse_scenario(buf), config_error);
  std::snprintf(buf, sizeof(buf), base, ", \"allow_noncanonical_times\": true");
  ScenarioConfig c = parse_scenario(buf);
  CHECK(c.allow_noncanonical_times);
  CHECK_FALSE(c.protocol.canonical());
}

TEST_CASE("sweep axes are validated") {
  const char* with_axis = R"({
    "protocol": {"lambda1": 1.0, "lambda2": 1.0},
    "channel": {"gamma": 1.0, "gamma_p": 0.0, "t_flight": 0.0},
    "sweep": {"axes": [{"parameter": "%s", "start": 0.0, "stop": 2.0, "points": 5}]}
  })";
  char buf[512];
  std::snprintf(buf, sizeof(buf), with_axis, "t_flight");
  ScenarioConfig c = parse_scenario(buf);
  REQUIRE(c.sweep.size() == 1);
  auto values = c.sweep[0].values();
  REQUIRE(values.size() == 5);
  CHECK(values.front() == 0.0);
  CHECK(values.back() == 2.0);
  CHECK(values[2] == doctest::Approx(1.0).epsilon(1e-15));

  std::snprintf(buf, sizeof(buf), with_axis, "bogus");
  CHECK_THROWS_AS(parse_scenario(buf), config_error);
}

TEST_CASE("log-scale axis") {
  SweepAxis axis{"gamma", 1.0, 100.0, 3, true};
  auto v = axis.values();
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(v[1] == doctest::Approx(10.0));
  CHECK(v[2] == doctest::Approx(100.0));
}

TEST_CASE("apply_parameter") {
  ScenarioConfig c = parse_scenario(kGoodConfig);
  apply_parameter(c, "gamma", 5.0);
  CHECK(c.channel.gamma == 5.0);
  apply_parameter(c, "lambda1", 3.0);
  CHECK(c.protocol.lambda1 == 3.0);
  CHECK_THROWS_AS(apply_parameter(c, "nope", 1.0), config_error);
}

TEST_CASE("full_model section with field states") {
  const char* text = R"({
    "protocol": {"lambda1": 1.0, "lambda2": 1.0},
    "channel": {"gamma": 0.0, "gamma_p": 0.0, "t_flight": 0.0},
    "full_model": {
      "g_ion": 1.0, "g_fly": 1.0, "delta": 20.0, "nu": 200.0, "eta": 0.05,
      "n_field_max": 5, "n_vib_max": 2,
      "field_states": [
        {"kind": "fock", "parameter": 0},
        {"kind": "thermal", "parameter": 0.5, "truncation": 13}
      ]
    }
  })";
  ScenarioConfig c = parse_scenario(text);
  REQUIRE(c.full_model.has_value());
  CHECK(c.full_model->params.n_field_max == 5);
  REQUIRE(c.full_model->field_states.size() == 2);
  CHECK(c.full_model->field_states[0].truncation == 5);
  CHECK(c.full_model->field_states[1].truncation == 13);
  CHECK(c.full_model->field_states[1].kind == FieldStateSpec::Kind::thermal);
}
