#include "permanence/json_io.hpp"

#include "test_specs.hpp"

#include <doctest.h>

using namespace permanence;
using namespace permanence::testing;
using nlohmann::json;

TEST_CASE("spec JSON round trip") {
  SystemSpec spec = may_leonard(0.8, 1.1, GrowthFamily::ricker());
  json j = spec_to_json(spec);
  CHECK(j["n"] == 3);
  CHECK(j["family"] == "ricker");
  SystemSpec back = spec_from_json(j);
  CHECK(back.n == spec.n);
  CHECK((back.B - spec.B).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.c - spec.c).cwiseAbs().maxCoeff() == 0.0);

  // Analysis of the round-tripped spec is bit-identical.
  Verdict a = analyze(spec);
  Verdict b = analyze(back);
  CHECK(outcome_name(a.outcome) == outcome_name(b.outcome));
  REQUIRE(a.rho_value.has_value());
  REQUIRE(b.rho_value.has_value());
  CHECK(*a.rho_value == *b.rho_value);
}

TEST_CASE("malformed spec JSON is rejected") {
  CHECK_THROWS_AS(spec_from_json(json::parse(R"({"n": 2})")), std::invalid_argument);
  CHECK_THROWS_AS(
      spec_from_json(json::parse(
          R"({"n": 2, "family": "nope", "b": [[1, 0.5], [0.5, 1]], "c": [1, 1]})")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      spec_from_json(json::parse(R"({"n": 3, "family": "lotka_volterra",
                                     "b": [[1, 0.5], [0.5, 1]], "c": [1, 1]})")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      spec_from_json(json::parse(R"({"n": 2, "family": "lotka_volterra",
                                     "b": [[1, "x"], [0.5, 1]], "c": [1, 1]})")),
      std::invalid_argument);
}

TEST_CASE("custom families are not serializable") {
  Mat B(2, 2);
  B << 1, 0.5, 0.5, 1;
  SystemSpec spec = make_spec(B, Vec::Ones(2),
                              GrowthFamily::custom([](double r, double y) { return r - y; }));
  CHECK_THROWS_AS(spec_to_json(spec), std::invalid_argument);
}

TEST_CASE("equilibrium JSON uses 1-based labels") {
  auto boundary = boundary_equilibria(symmetric_half());
  json j = equilibria_to_json(boundary.equilibria);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 6);
  // First entries are the axial points with supports [1], [2], [3].
  CHECK(j[0]["support"] == json::array({1}));
  CHECK(j[1]["support"] == json::array({2}));
  CHECK(j[2]["support"] == json::array({3}));
  CHECK(j[0]["external_eigs"]["2"] == doctest::Approx(0.5));
}

TEST_CASE("sign configuration JSON") {
  json j = sign_configuration_to_json(sign_configuration(may_leonard(0.8, 1.1)));
  CHECK(j["gamma"]["12"] == "-");
  CHECK(j["gamma"]["13"] == "+");
  CHECK(j["gamma"]["21"] == "+");
  CHECK(j["nullcline_stable"] == true);
}

TEST_CASE("verdict JSON shape") {
  json perm = verdict_to_json(analyze(symmetric_half()));
  CHECK(perm["outcome"] == "Permanent");
  REQUIRE(perm["nu"].is_array());
  CHECK(perm["nu"].size() == 3);
  CHECK(perm["margin"].get<double>() > 0.0);
  CHECK(perm["evidence"].is_array());

  json inc = verdict_to_json(Verdict{});
  CHECK(inc["outcome"] == "Inconclusive");
  CHECK(inc["nu"].is_null());
  CHECK(inc["margin"].is_null());
  CHECK(inc["rho"].is_null());
}
