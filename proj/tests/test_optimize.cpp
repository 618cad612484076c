#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "magicbc/magic.hpp"
#include "magicbc/optimize.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace magicbc;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

UnitaryParams15 random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(0.0, 2 * kPi);
  UnitaryParams15 p;
  for (double& x : p.angles) x = a(rng);
  return p;
}

Mat su2_oracle(double k, double l, double n) {
  const auto& s = oracle::paulis();
  return oracle::expm(-kI * k / 2.0 * s[3]) * oracle::expm(-kI * l / 2.0 * s[2]) * oracle::expm(-kI * n / 2.0 * s[3]);
}

Mat core_oracle(double a, double b, double d) {
  const auto& s = oracle::paulis();
  return oracle::expm(kI * (a * oracle::kron(s[1], s[1]) + b * oracle::kron(s[2], s[2]) + d * oracle::kron(s[3], s[3])));
}

OptimizerConfig quick_config() {
  OptimizerConfig cfg;
  cfg.max_evals = 200000;
  return cfg;
}

}  // namespace

TEST_SUITE("optimize") {

TEST_CASE("building blocks match matrix exponentials") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 100; ++k) {
    const UnitaryParams15 p = random_params(rng);
    const auto e1 = p.su2(1);
    CHECK((Mat(su2_zyz(e1[0], e1[1], e1[2])) - su2_oracle(e1[0], e1[1], e1[2])).norm() < 1e-12);
    const auto c = p.core();
    CHECK((Mat(core_unitary(c[0], c[1], c[2])) - core_oracle(c[0], c[1], c[2])).norm() < 1e-12);
    auto local = [&](int i) {
      const auto e = p.su2(i);
      return su2_oracle(e[0], e[1], e[2]);
    };
    const Mat expected =
        oracle::kron(local(3), local(4)) * core_oracle(c[0], c[1], c[2]) * oracle::kron(local(1), local(2));
    CHECK((Mat(build_unitary(p)) - expected).norm() < 1e-12);
  }
  CHECK(kind_of([] { UnitaryParams15{}.su2(5); }) == ErrorKind::InvalidInput);
}

TEST_CASE("build_unitary is unitary and the zero point is the identity") {
  CHECK((Mat(build_unitary(UnitaryParams15{})) - Mat::Identity(4, 4)).norm() < 1e-15);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 10000; ++k) {
    const Eigen::Matrix4cd u = build_unitary(random_params(rng));
    CHECK(((u.adjoint() * u) - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("Clifford parameter settings have zero magic power") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> quarter(0, 3);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int k = 0; k < 200; ++k) {
    UnitaryParams15 p;
    for (int j = 0; j < 12; ++j) p.angles[j] = quarter(rng) * kPi / 2;
    for (int j = 12; j < 15; ++j) p.angles[j] = bit(rng) * kPi / 4;
    CHECK(magic_power(build_unitary(p)) <= 1e-10);
  }
}

TEST_CASE("evaluate_broadcast against explicit reduction") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 200; ++k) {
    const Eigen::Matrix4cd u = build_unitary(random_params(rng));
    const PureState psi(oracle::haar(2, rng));
    Vec in = Vec::Zero(4);
    in(0) = psi[0];
    in(2) = psi[1];
    const Vec out = u * in;
    const Mat rho = out * out.adjoint();
    const auto bs = oracle::bloch(oracle::partial_trace(rho, true));
    const auto ba = oracle::bloch(oracle::partial_trace(rho, false));
    const BroadcastEvaluation e = evaluate_broadcast(u, psi);
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(e.sys[j] - bs[j]) < 1e-12);
      CHECK(std::abs(e.aux[j] - ba[j]) < 1e-12);
    }
    const double fs = std::real(psi.amps().dot(oracle::partial_trace(rho, true) * psi.amps()));
    CHECK(std::abs(e.sys_fidelity - fs) < 1e-12);
    CHECK(std::abs(e.sys_magic - std::max(1.0, oracle::l1(bs))) < 1e-12);
  }
  CHECK(kind_of([] { evaluate_broadcast(Eigen::Matrix4cd::Identity(), PureState::basis(4, 0)); }) ==
        ErrorKind::InvalidDimension);
}

TEST_CASE("objective values at the identity") {
  const UnitaryParams15 id;
  CHECK(objective_magic(id, PureState::basis(2, 0)) == doctest::Approx(0.0));
  CHECK(std::abs(objective_magic(id, t_state()) - (std::sqrt(3.0) - 1.0)) < 1e-12);
  const PureState psi = haar_random_pure(2, 77);
  CHECK(std::abs(objective_state(id, psi) - (1.0 - std::norm(psi[0]))) < 1e-12);
}

TEST_CASE("config validation") {
  OptimizerConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.population = 7;
  CHECK(kind_of([&] { cfg.validate(); }) == ErrorKind::InvalidInput);
  cfg = OptimizerConfig{};
  cfg.epsilon = 0.0;
  CHECK(kind_of([&] { cfg.validate(); }) == ErrorKind::InvalidInput);
  cfg = OptimizerConfig{};
  cfg.restarts = 0;
  CHECK(kind_of([&] { cfg.validate(); }) == ErrorKind::InvalidInput);
  cfg = OptimizerConfig{};
  CHECK(cfg.parents() == 10);
  CHECK(objective_from_string("magic") == Objective::Magic);
  CHECK(std::string(to_string(Objective::State)) == "state");
  CHECK(kind_of([] { objective_from_string("fidelity"); }) == ErrorKind::InvalidInput);
}

TEST_CASE("ISRES on stabilizer and T inputs") {
  const OptimizerConfig cfg = quick_config();
  const BroadcastOutcome stab = isres_optimize(Objective::Magic, PureState::basis(2, 0), cfg);
  CHECK(stab.converged);
  CHECK(stab.evals_used <= cfg.population);

  int converged = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    OptimizerConfig c = cfg;
    c.seed = seed;
    const BroadcastOutcome o = isres_optimize(Objective::Magic, t_state(), c);
    converged += o.converged;
    if (o.converged) {
      CHECK(o.objective_value <= c.epsilon);
      CHECK(std::abs(o.sys_magic - std::sqrt(3.0)) <= c.epsilon);
      CHECK(std::abs(o.aux_magic - std::sqrt(3.0)) <= c.epsilon);
    }
    CHECK(o.evals_used <= c.max_evals);
  }
  CHECK(converged >= 9);
}

TEST_CASE("ISRES determinism") {
  OptimizerConfig cfg = quick_config();
  cfg.seed = 99;
  const PureState psi = haar_random_pure(2, 5);
  const BroadcastOutcome a = isres_optimize(Objective::Magic, psi, cfg);
  const BroadcastOutcome b = isres_optimize(Objective::Magic, psi, cfg);
  CHECK(a.params.angles == b.params.angles);
  CHECK(a.objective_value == b.objective_value);
  CHECK(a.evals_used == b.evals_used);
  CHECK(a.magic_power == b.magic_power);
}

TEST_CASE("state objective reaches the product-state optimum") {
  // A per-input unitary may prepare |psi> on the auxiliary qubit directly,
  // so the fidelity shortfall can be driven below epsilon.
  const OptimizerConfig cfg = quick_config();
  for (int i = 0; i < 3; ++i) {
    const BroadcastOutcome o = run_sample(Objective::State, cfg, i);
    CHECK(o.converged);
    CHECK(o.sys_fidelity >= 1.0 - cfg.epsilon);
    CHECK(o.aux_fidelity >= 1.0 - cfg.epsilon);
  }
}

TEST_CASE("batch aggregation") {
  OptimizerConfig cfg = quick_config();
  cfg.threads = 2;
  const BatchSummary s = batch_experiment(6, Objective::Magic, cfg);
  REQUIRE(s.per_sample.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(s.per_sample[i].sample_index == i);
    CHECK((s.per_sample[i].input - batch_input(cfg, i).amps()).norm() == 0.0);
  }
  double mean = 0.0;
  double mn = 1.0;
  for (const auto& o : s.per_sample) {
    mean += o.mean_fidelity() / 6;
    mn = std::min(mn, o.mean_fidelity());
  }
  CHECK(std::abs(s.mean_fidelity - mean) < 1e-15);
  CHECK(s.min_fidelity == mn);

  // Reversed input order gives an identical summary.
  std::vector<BroadcastOutcome> rev(s.per_sample.rbegin(), s.per_sample.rend());
  const BatchSummary r = summarize(Objective::Magic, rev);
  CHECK(r.mean_fidelity == s.mean_fidelity);
  CHECK(r.mean_magic_power == s.mean_magic_power);

  // Same samples computed one at a time are bit-identical.
  const BroadcastOutcome single = run_sample(Objective::Magic, cfg, 4);
  CHECK(single.params.angles == s.per_sample[4].params.angles);

  const auto subset = run_samples({5, 2}, Objective::Magic, cfg);
  REQUIRE(subset.size() == 2);
  CHECK(subset[0].sample_index == 5);
  CHECK(subset[1].params.angles == s.per_sample[2].params.angles);
  CHECK(kind_of([&] { batch_experiment(0, Objective::Magic, cfg); }) == ErrorKind::InvalidInput);
}

}  // TEST_SUITE
