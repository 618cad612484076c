#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "magicbc/magic.hpp"
#include "magicbc/optimize.hpp"
#include "magicbc/stabkit.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace magicbc;

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kSqrt2 = std::sqrt(2.0);

Mat t_gate() {
  Mat t = Mat::Identity(2, 2);
  t(1, 1) = std::polar(1.0, std::numbers::pi / 4);
  return t;
}

}  // namespace

TEST_SUITE("magic") {

TEST_CASE("witness D") {
  CHECK(witness_d(DensityMatrix::maximally_mixed(2), 1) == doctest::Approx(0.5));
  CHECK(witness_d(DensityMatrix::from_pure(PureState::basis(2, 0)), 1) == doctest::Approx(1.0));
  CHECK(std::abs(witness_d(DensityMatrix::from_pure(t_state()), 1) - (1 + kSqrt3) / 2) < 1e-12);
  CHECK(kind_of([] { witness_d(DensityMatrix::maximally_mixed(2), 2); }) == ErrorKind::InvalidDimension);
  CHECK(kind_of([] { witness_d(DensityMatrix::maximally_mixed(3), 1); }) == ErrorKind::InvalidDimension);
}

TEST_CASE("robustness closed form and LP oracle") {
  const DensityMatrix rho_t = DensityMatrix::from_pure(t_state());
  CHECK(std::abs(rom_qubit(rho_t) - kSqrt3) < 1e-12);
  CHECK(std::abs(rom_lp_oracle(rho_t) - kSqrt3) < 1e-10);
  CHECK(std::abs(rom_qubit(DensityMatrix::from_pure(h_state())) - kSqrt2) < 1e-12);
  CHECK(rom_qubit(DensityMatrix::maximally_mixed(2)) == 1.0);
  CHECK(std::abs(rom_lp_oracle(DensityMatrix::maximally_mixed(2)) - 1.0) < 1e-12);
  for (const PureState& s : stabilizer_states(1).states) {
    CHECK(std::abs(rom_qubit(DensityMatrix::from_pure(s)) - 1.0) < 1e-12);
    CHECK(std::abs(rom_lp_oracle(DensityMatrix::from_pure(s)) - 1.0) < 1e-10);
  }
  CHECK(kind_of([] { rom_qubit(DensityMatrix::maximally_mixed(4)); }) == ErrorKind::InvalidDimension);
  CHECK(kind_of([] { rom_lp_oracle(DensityMatrix::maximally_mixed(4)); }) == ErrorKind::InvalidDimension);

  for (std::uint64_t s = 0; s < 2000; ++s) {
    const DensityMatrix rho = s % 2 ? random_mixed(2, s) : DensityMatrix::from_pure(haar_random_pure(2, s));
    const double r = rom_qubit(rho);
    CHECK(std::abs(r - rom_lp_oracle(rho)) < 1e-8);
    CHECK(std::abs(r - std::max(1.0, 2 * witness_d(rho, 1) - 1)) < 1e-10);
    CHECK(std::abs(r - std::max(1.0, oracle::l1(oracle::bloch(rho.mat())))) < 1e-12);
  }
}

TEST_CASE("stabilizer Renyi entropy") {
  CHECK(std::abs(sre2_pure(PureState::basis(2, 0), 1)) < 1e-12);
  CHECK(std::abs(sre2_pure(t_state(), 1) - std::log2(1.5)) < 1e-12);
  CHECK(std::abs(sre2_extended(DensityMatrix::from_pure(t_state()), 1) - std::log2(1.5)) < 1e-12);
  CHECK(std::abs(sre2_extended(DensityMatrix::maximally_mixed(2), 1)) < 1e-12);
  CHECK(kind_of([] { sre2_pure(PureState::basis(4, 0), 1); }) == ErrorKind::InvalidDimension);
  CHECK(kind_of([] { sre2_extended(DensityMatrix::maximally_mixed(2), 2); }) == ErrorKind::InvalidDimension);

  std::mt19937_64 rng(21);
  for (int k = 0; k < 200; ++k) {
    const Vec v1 = oracle::haar(2, rng);
    const Vec v2 = oracle::haar(4, rng);
    CHECK(std::abs(sre2_pure(PureState(v1), 1) - oracle::sre2(v1)) < 1e-12);
    CHECK(std::abs(sre2_pure(PureState(v2), 2) - oracle::sre2(v2)) < 1e-12);
    const DensityMatrix rho = DensityMatrix::from_pure(PureState(v2));
    CHECK(std::abs(sre2_extended(rho, 2) - sre2_pure(PureState(v2), 2)) < 1e-10);
    const DensityMatrix mixed = random_mixed(4, 900 + k);
    CHECK(std::abs(sre2_extended(mixed, 2) - oracle::sre2_mixed(mixed.mat())) < 1e-12);
    CHECK(sre2_pure(PureState(v2), 2) >= 0.0);
  }
}

TEST_CASE("M2 vanishes exactly on stabilizer states") {
  for (int n : {1, 2}) {
    for (const PureState& s : stabilizer_states(n).states) CHECK(std::abs(sre2_pure(s, n)) <= 1e-12);
  }
}

TEST_CASE("qudit SRE") {
  CHECK(std::abs(sre2_qudit(PureState::basis(3, 1), 3)) < 1e-12);
  Vec fourier(3);
  fourier.setConstant(1.0 / std::sqrt(3.0));
  CHECK(std::abs(sre2_qudit(PureState(fourier), 3)) < 1e-12);
  Vec strange(3);
  strange << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  const double m = sre2_qudit(PureState(strange), 3);
  CHECK(m > 0.1);
  // Direct evaluation from the Weyl matrices.
  double s4 = 0.0;
  for (const auto& w : weyl_group(3)) s4 += std::pow(std::abs(strange.dot(w.matrix() * strange)), 4);
  CHECK(std::abs(m + std::log2(s4 / 3.0)) < 1e-12);
  // d = 2 agrees with the qubit version.
  const PureState t = t_state();
  CHECK(std::abs(sre2_qudit(t, 2) - sre2_pure(t, 1)) < 1e-12);
  CHECK(kind_of([] { sre2_qudit(PureState::basis(4, 0), 4); }) == ErrorKind::Unsupported);
  CHECK(kind_of([] { sre2_qudit(PureState::basis(3, 0), 5); }) == ErrorKind::InvalidDimension);
}

TEST_CASE("magic power") {
  Mat cnot = Mat::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  CHECK(std::abs(magic_power(cnot)) < 1e-10);
  CHECK(std::abs(magic_power(Mat::Identity(4, 4))) < 1e-10);
  const Mat tg = oracle::kron(t_gate(), Mat::Identity(2, 2));
  CHECK(std::abs(magic_power(tg) - oracle::magic_power(tg)) < 1e-12);
  CHECK(magic_power(tg) > 0.1);

  std::mt19937_64 rng(4);
  const auto gens = clifford_generators_2q();
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (int k = 0; k < 100; ++k) {
    Mat c = Mat::Identity(4, 4);
    for (int j = 0; j < 20; ++j) c = gens[pick(rng)] * c;
    CHECK(std::abs(magic_power(c)) <= 1e-10);
  }
  for (int k = 0; k < 20; ++k) {
    UnitaryParams15 p;
    std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
    for (double& a : p.angles) a = ang(rng);
    const Mat u = build_unitary(p);
    CHECK(std::abs(magic_power(u) - oracle::magic_power(u)) < 1e-10);
  }
  Mat bad = Mat::Identity(4, 4);
  bad(0, 0) = 2.0;
  CHECK(kind_of([&] { magic_power(bad); }) == ErrorKind::InvalidUnitary);
  CHECK(kind_of([] { magic_power(Mat::Identity(2, 2)); }) == ErrorKind::InvalidDimension);
}

TEST_CASE("magic report") {
  const MagicReport t = magic_report(t_state());
  CHECK(t.n == 1);
  REQUIRE(t.rom.has_value());
  REQUIRE(t.sre2.has_value());
  CHECK(std::abs(*t.rom - kSqrt3) < 1e-12);
  const MagicReport two = magic_report(tensor(t_state(), t_state()));
  CHECK(two.n == 2);
  CHECK_FALSE(two.rom.has_value());
  CHECK(std::abs(*two.sre2 - 2 * std::log2(1.5)) < 1e-10);
  const MagicReport mixed = magic_report(DensityMatrix::maximally_mixed(2));
  CHECK_FALSE(mixed.sre2.has_value());
  CHECK(mixed.witness_d >= 0.5);
  CHECK(kind_of([] { qubit_count(3); }) == ErrorKind::InvalidDimension);
  CHECK(qubit_count(4) == 2);
}

}  // TEST_SUITE
