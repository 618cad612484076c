#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "magicbc/report_io.hpp"
#include "magicbc/statespec.hpp"
#include "magicbc/verify.hpp"
#include "test_util.hpp"

using namespace magicbc;
using nlohmann::json;

TEST_SUITE("expcli") {

TEST_CASE("state spec: named states") {
  CHECK(overlap_abs(parse_state_spec("T"), t_state()) == doctest::Approx(1.0));
  CHECK(overlap_abs(parse_state_spec("Tperp"), t_perp_state()) == doctest::Approx(1.0));
  CHECK(overlap_abs(parse_state_spec("H"), h_state()) == doctest::Approx(1.0));
  const double r = 1 / std::sqrt(2.0);
  CHECK(bloch_from_pure(parse_state_spec("plus")).m1 == doctest::Approx(1.0));
  CHECK(bloch_from_pure(parse_state_spec("-")).m1 == doctest::Approx(-1.0));
  CHECK(bloch_from_pure(parse_state_spec("+i")).m2 == doctest::Approx(1.0));
  CHECK(bloch_from_pure(parse_state_spec("minus_i")).m2 == doctest::Approx(-1.0));
  CHECK(bloch_from_pure(parse_state_spec("one")).m3 == doctest::Approx(-1.0));
  CHECK(bloch_from_pure(parse_state_spec(" 0 ")).m3 == doctest::Approx(1.0));
  CHECK(std::abs(parse_state_spec("plus")[1] - Complex(r, 0)) < 1e-15);
}

TEST_CASE("state spec: angles and amplitudes") {
  const PureState chi = parse_state_spec("0.7,1.2");
  CHECK(overlap_abs(chi, superpose(t_state(), t_perp_state(), 0.7, 1.2)) == doctest::Approx(1.0));
  const PureState c = parse_state_spec("1.5707963267948966,0,basis=computational");
  CHECK(bloch_from_pure(c).m1 == doctest::Approx(1.0));
  const PureState a = parse_state_spec("amp:1,0;0,1");
  CHECK(std::abs(a[1] - Complex(0, 1 / std::sqrt(2.0))) < 1e-15);
  CHECK(parse_state_spec("amp:1,0;0,0;0,0;1,0").dim() == 4);
}

TEST_CASE("state spec: errors") {
  for (const char* bad : {"", "foo", "1,2,3,4", "1,x", "1,2,basis=Q", "1,2,base=T", "amp:1,0", "amp:1,0;0,0;1,0",
                          "amp:0,0;0,0", "amp:1;0,1", "nan,0"}) {
    CAPTURE(bad);
    CHECK(kind_of([&] { parse_state_spec(bad); }) == ErrorKind::InvalidSpec);
  }
}

TEST_CASE("json round trips") {
  OptimizerConfig cfg;
  const BroadcastOutcome o = run_sample(Objective::Magic, cfg, 3);
  const json j = to_json(o);
  CHECK(j.at("schema") == 1);
  const BroadcastOutcome back = outcome_from_json(json::parse(j.dump()));
  CHECK(back.sample_index == 3);
  CHECK(back.params.angles == o.params.angles);
  CHECK(back.objective_value == o.objective_value);
  CHECK((back.input - o.input).norm() == 0.0);
  CHECK(back.converged == o.converged);

  const json m = to_json(magic_report(t_state()));
  CHECK(m.at("rom").get<double>() == doctest::Approx(std::sqrt(3.0)));
  CHECK(to_json(magic_report(DensityMatrix::maximally_mixed(2))).at("sre2").is_null());
  CHECK(to_json(stabilizer_states(2)).at("count") == 60);
}

TEST_CASE("config loading") {
  const json j = {{"population", 40}, {"epsilon", 1e-3}, {"seed", 7}, {"restarts", 2}, {"n_samples", 5}};
  const OptimizerConfig cfg = config_from_json(j);
  CHECK(cfg.population == 40);
  CHECK(cfg.epsilon == 1e-3);
  CHECK(cfg.seed == 7);
  CHECK(cfg.max_evals == OptimizerConfig{}.max_evals);
  CHECK(kind_of([] { config_from_json(json::array()); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { config_from_json({{"population", 5}}); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { load_config("/nonexistent/cfg.json"); }) == ErrorKind::InvalidInput);

  const std::string path = "magicbc_test_config.json";
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  CHECK(kind_of([&] { load_config(path); }) == ErrorKind::InvalidInput);
  {
    std::ofstream f(path);
    f << j.dump();
  }
  CHECK(load_config(path).population == 40);
  std::remove(path.c_str());
}

TEST_CASE("verification suites at small scale") {
  for (const std::string& name : suite_names()) {
    CAPTURE(name);
    const long n = name == "theorem2" ? 720 : 200;
    const VerificationReport r = run_suite(name, n, 5);
    CHECK(r.pass);
    CHECK(r.pass == (r.max_violation <= r.tolerance));
    CHECK(r.samples == n);
    CHECK(r.seed == 5);
  }
  CHECK(kind_of([] { run_suite("nope", 1, 1); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { default_samples("nope"); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { run_suite("lemma1", 0, 1); }) == ErrorKind::InvalidInput);
  CHECK(default_samples("lemma1") == 100000);
  const json rj = to_json(run_suite("additivity", 10, 1));
  CHECK(rj.at("check_name") == "additivity");
  CHECK(rj.contains("runtime_ms"));
}

}  // TEST_SUITE
