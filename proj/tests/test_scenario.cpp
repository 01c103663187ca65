#include <doctest.h>

#include "gauges/rng.hpp"
#include "gauges/scenario.hpp"

using namespace gauges;

TEST_CASE("scenario loading resolves every reference") {
  Scenario s = load_scenario("data/example51.json");
  CHECK(s.base->rank == 2);
  CHECK(s.extensions.size() == 1);
  CHECK(s.algebras.size() == 2);
  CHECK(s.gauges.size() == 4);
  CHECK(s.seed == 42);
  CHECK(s.constants.xi == 2);
  CHECK_FALSE(s.constants.xi_note.empty());
  CHECK_THROWS_AS(s.find_gauge("nonsense"), UnresolvedReference);
}

TEST_CASE("scenario gauges agree with the built-in tower") {
  Scenario s = load_scenario("data/example51.json");
  Example51 ctx = build_example51(Rat(1, 4));
  GaugePtr alpha = s.find_gauge("alpha");
  GaugePtr beta = s.find_gauge("beta");
  Rng rng(311);
  for (int i = 0; i < 100; ++i) {
    Element z = sample_element(ctx.D, rng);
    CHECK(evaluate(alpha, z) == evaluate(ctx.alpha, z));
    CHECK(evaluate(beta, z) == evaluate(ctx.beta, z));
  }
  GaugePtr alphap = s.find_gauge("alphap");
  for (int i = 0; i < 50; ++i) {
    Element z = sample_element(ctx.S, rng);
    CHECK(evaluate(alphap, z) == evaluate(ctx.alpha_p, z));
  }
}

TEST_CASE("check on the bundled scenario: all gauges pass with the right omegas") {
  Scenario s = load_scenario("data/example51.json");
  Report rep = run_check(s);
  CHECK(rep.pass());
  CHECK(rep.exit_code() == 0);
  REQUIRE(rep.records.size() == 4);
  CHECK(rep.records[0].details.find("omega=2") != std::string::npos);
  CHECK(rep.records[1].details.find("omega=2") != std::string::npos);
  CHECK(rep.records[2].details.find("omega=1") != std::string::npos);
  CHECK(rep.records[3].details.find("omega=2") != std::string::npos);
}

TEST_CASE("check on the perturbed scenario fails with the witness pair") {
  Scenario s = load_scenario("data/broken_gauge.json");
  Report rep = run_check(s);
  CHECK_FALSE(rep.pass());
  CHECK(rep.exit_code() == 1);
  REQUIRE(rep.records.size() == 1);
  CHECK(rep.records[0].status == CheckRecord::Status::Fail);
  CHECK(rep.records[0].details.find("witness_pair=(2,2)") != std::string::npos);
}

TEST_CASE("empty scenario passes with zero checks") {
  Scenario s = parse_scenario_text(R"({"field": {"rank": 1, "vars": ["x"]}})");
  Report rep = run_check(s);
  CHECK(rep.pass());
  CHECK(rep.records.empty());
  CHECK(rep.exit_code() == 0);
}

TEST_CASE("parse errors carry diagnostics") {
  CHECK_THROWS_AS(parse_scenario_text("{"), ParseError);
  CHECK_THROWS_AS(parse_scenario_text(R"({"field": {"rank": 2, "vars": ["x"]}})"),
                  ParseError);
  // missing provenance note on a declared constant
  CHECK_THROWS_AS(parse_scenario_text(R"({"field": {"rank": 1, "vars": ["x"]},
                                          "constants": {"xi": 2}})"),
                  ParseError);
  // unresolved child reference
  CHECK_THROWS_AS(parse_scenario_text(R"({"field": {"rank": 1, "vars": ["x"]},
      "gauges": [{"name": "g", "kind": "coarsen", "inner": "ghost", "cut": 1}]})"),
                  UnresolvedReference);
}

TEST_CASE("extension counting through the scenario surface") {
  Scenario s = load_scenario("data/example51.json");
  Report rep = run_extensions(s);
  REQUIRE(rep.records.size() == 1);
  CHECK(rep.records[0].details == "count=2 kind=split");
}

TEST_CASE("graded presentations serialize with degrees and constants") {
  Scenario s = load_scenario("data/example51.json");
  Report rep = run_gr(s);
  CHECK(rep.pass());
  const std::string& pres = rep.records[0].details;
  CHECK(pres.find("\"labels\"") != std::string::npos);
  CHECK(pres.find("\"degrees\"") != std::string::npos);
  CHECK(pres.find("\"constants\"") != std::string::npos);
  CHECK(pres.find("-1/4") != std::string::npos);
}

TEST_CASE("full report includes defect ledgers") {
  Scenario s = load_scenario("data/example51.json");
  Report rep = run_report(s);
  CHECK(rep.pass());
  bool found = false;
  for (const auto& r : rep.records)
    if (r.name == "defect beta") {
      found = true;
      CHECK(r.details.find("residue_dim=2") != std::string::npos);
      CHECK(r.details.find("ram_index=2") != std::string::npos);
    }
  CHECK(found);
}

TEST_CASE("machine reports are byte-identical for equal seeds") {
  Report r1 = run_example51(Rat(1, 4), 50, 9);
  Report r2 = run_example51(Rat(1, 4), 50, 9);
  CHECK(r1.machine_json() == r2.machine_json());
  Report p1 = run_props("ordered", 42);
  Report p2 = run_props("ordered", 42);
  CHECK(p1.machine_json() == p2.machine_json());
}

TEST_CASE("example51 battery passes; samples 0 skips the corpus checks") {
  Report full = run_example51(Rat(1, 4), 60, 5);
  CHECK(full.pass());
  Report lean = run_example51(Rat(1, 4), 0, 5);
  CHECK(lean.pass());
  CHECK(lean.records.size() < full.records.size());
  for (const auto& r : lean.records) {
    CHECK(r.name != "gauge-ring description");
    CHECK(r.name != "Graeter identity");
  }
}

TEST_CASE("min and product gauge blocks through the JSON surface") {
  Scenario s = parse_scenario_text(R"({
    "field": {"coeff": "Q", "rank": 2, "vars": ["x", "y"]},
    "extensions": [{"name": "K", "u": "1 + x"}],
    "algebras": [{"name": "S", "kind": "matrix", "n": 2, "scalars": "K",
                  "center_valuations": [{"sign": 1}, {"sign": -1}]}],
    "gauges": [
      {"name": "eta1", "kind": "end", "algebra": "S",
       "valuation": {"field": "K", "sign": 1}, "shifts": [["0","0"], ["0","0"]]},
      {"name": "eta2", "kind": "end", "algebra": "S",
       "valuation": {"field": "K", "sign": -1}, "shifts": [["0","0"], ["0","0"]]},
      {"name": "m", "kind": "min", "components": ["eta1", "eta2"], "xi": 2},
      {"name": "p", "kind": "product", "components": ["eta1", "eta2"]}
    ]})");
  GaugePtr m = s.find_gauge("m");
  CHECK(m->kind == GaugeKind::Min);
  CHECK(omega(m) == 2);
  CHECK(omega(s.find_gauge("p")) == 2);
  Report rep = run_check(s);
  CHECK(rep.pass());
}

TEST_CASE("duplicate block names are rejected") {
  CHECK_THROWS_AS(parse_scenario_text(R"({
    "field": {"coeff": "Q", "rank": 2, "vars": ["x", "y"]},
    "algebras": [{"name": "D", "kind": "quaternion", "a": "1 + x", "b": "y"},
                 {"name": "D", "kind": "quaternion", "a": "1 + x", "b": "y"}]})"),
                  ParseError);
}

TEST_CASE("characteristic 2 coefficient fields are rejected") {
  CHECK_THROWS_AS(parse_scenario_text(R"({
    "field": {"coeff": {"prime": 2}, "rank": 1, "vars": ["x"]}})"),
                  ParseError);
}

TEST_CASE("prime-field scenarios verify with unverified semisimplicity") {
  Scenario s = parse_scenario_text(R"({
    "field": {"coeff": {"prime": 7}, "rank": 2, "vars": ["x", "y"]},
    "algebras": [{"name": "D", "kind": "quaternion", "a": "1 + x", "b": "y"}],
    "gauges": [{"name": "a7", "kind": "base_norm", "algebra": "D",
      "valuation": {"field": "base"},
      "base": [["1","1","0","0"], ["1","-1","0","0"], ["0","0","1","0"], ["0","0","1","-1"]],
      "values": [["0","0"], ["0","0"], ["-1/4","1/2"], ["1/4","1/2"]]}]})");
  Report rep = run_check(s);
  REQUIRE(rep.records.size() == 1);
  CHECK(rep.records[0].status == CheckRecord::Status::Unverified);
  CHECK(rep.pass());  // unverified is not a failure
}

TEST_CASE("non-multiplicative embed blocks are rejected at load time") {
  CHECK_THROWS_AS(parse_scenario_text(R"({
    "field": {"coeff": "Q", "rank": 2, "vars": ["x", "y"]},
    "extensions": [{"name": "K", "u": "1 + x"}],
    "algebras": [
      {"name": "D", "kind": "quaternion", "a": "1 + x", "b": "y"},
      {"name": "S", "kind": "matrix", "n": 2, "scalars": "K",
       "center_valuations": [{"sign": 1}, {"sign": -1}],
       "embed": {"from": "D",
                 "i": ["1", "0", "0", "1"],
                 "j": ["1", "0", "0", "1"]}}]})"),
                  EmbeddingNotMultiplicative);
}

TEST_CASE("scalar literals over extension fields") {
  Scenario s = load_scenario("data/example51.json");
  FieldPtr K = s.find_extension("K");
  Scalar z = parse_scalar("1 + x - 2*t*y", K);
  CHECK(z.a() == RatScalar(parse_series("1 + x", 2, s.base->vars, CoeffField{})));
  CHECK(z.b() == RatScalar(parse_series("-2*y", 2, s.base->vars, CoeffField{})));
  CHECK_THROWS_AS(parse_scalar("t^2", K), ParseError);
  CHECK_THROWS_AS(parse_scalar("t", s.base), ParseError);
}
