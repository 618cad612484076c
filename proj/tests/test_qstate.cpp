#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "magicbc/error.hpp"
#include "magicbc/qstate.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace magicbc;

namespace {

const double kS3 = 1.0 / std::sqrt(3.0);

void check_bloch(const BlochVector& b, double x, double y, double z, double eps = 1e-12) {
  CHECK(std::abs(b.m1 - x) <= eps);
  CHECK(std::abs(b.m2 - y) <= eps);
  CHECK(std::abs(b.m3 - z) <= eps);
}

}  // namespace

TEST_SUITE("qstate") {

TEST_CASE("pure state construction validates the norm") {
  Vec v(2);
  v << 1.0, 1.0;
  CHECK(kind_of([&] { PureState p(v); }) == ErrorKind::NotAState);
  CHECK(PureState::normalized(v).amps().norm() == doctest::Approx(1.0));
  CHECK(kind_of([] { PureState::normalized(Vec::Zero(2)); }) == ErrorKind::NotAState);
  CHECK(kind_of([] { PureState::basis(2, 2); }) == ErrorKind::InvalidDimension);
}

TEST_CASE("density matrix validation") {
  Mat nonherm(2, 2);
  nonherm << 0.5, 0.1, 0.2, 0.5;
  CHECK(kind_of([&] { DensityMatrix d(nonherm); }) == ErrorKind::NotAState);
  Mat trace2 = Mat::Identity(2, 2);
  CHECK(kind_of([&] { DensityMatrix d(trace2); }) == ErrorKind::NotAState);
  Mat negative(2, 2);
  negative << 1.2, 0.0, 0.0, -0.2;
  CHECK(kind_of([&] { DensityMatrix d(negative); }) == ErrorKind::NotAState);
  Mat rect(2, 3);
  rect.setZero();
  CHECK(kind_of([&] { DensityMatrix d(rect); }) == ErrorKind::InvalidDimension);
  CHECK(DensityMatrix::maximally_mixed(4).purity() == doctest::Approx(0.25));
}

TEST_CASE("haar sampler") {
  CHECK(kind_of([] { haar_random_pure(1, 3); }) == ErrorKind::InvalidDimension);
  const PureState a = haar_random_pure(2, 42);
  const PureState b = haar_random_pure(2, 42);
  CHECK((a.amps() - b.amps()).norm() == 0.0);
  CHECK(std::abs(a.amps().norm() - 1.0) < 1e-12);

  // m3 is uniform on [-1, 1] under the Haar measure: mean within 3 sigma and
  // a Kolmogorov-Smirnov statistic below the 1% critical value.
  const int n = 100000;
  std::vector<double> m3(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    m3[i] = bloch_from_pure(haar_random_pure(2, 1000 + i)).m3;
    sum += m3[i];
  }
  const double mean = sum / n;
  CHECK(std::abs(mean) < 3.0 * std::sqrt(1.0 / 3.0 / n));
  std::sort(m3.begin(), m3.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = 0.5 * (m3[i] + 1.0);
    ks = std::max({ks, std::abs(cdf - static_cast<double>(i) / n), std::abs(cdf - static_cast<double>(i + 1) / n)});
  }
  CHECK(ks < 1.63 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("bloch vectors") {
  check_bloch(bloch_from_density(DensityMatrix::from_pure(PureState::basis(2, 0))), 0, 0, 1);
  check_bloch(bloch_from_density(DensityMatrix::maximally_mixed(2)), 0, 0, 0);
  check_bloch(bloch_from_pure(t_state()), kS3, kS3, kS3);
  check_bloch(bloch_from_pure(t_perp_state()), -kS3, -kS3, -kS3);
  CHECK(kind_of([] { bloch_from_density(DensityMatrix::maximally_mixed(4)); }) == ErrorKind::InvalidDimension);
  CHECK(kind_of([] { density_from_bloch({1.0, 0.0, 1e-4}); }) == ErrorKind::NotAState);
  CHECK_NOTHROW(density_from_bloch({1.0 + 5e-11, 0.0, 0.0}));

  const DensityMatrix rho_t = density_from_bloch({kS3, kS3, kS3});
  CHECK((rho_t.mat() - DensityMatrix::from_pure(t_state()).mat()).norm() < 1e-12);
  CHECK((density_from_bloch({0, 0, 1}).mat() - DensityMatrix::from_pure(PureState::basis(2, 0)).mat()).norm() < 1e-15);

  // Round trip against the trace-formula oracle.
  for (std::uint64_t s = 0; s < 200; ++s) {
    const DensityMatrix rho = random_mixed(2, s);
    const BlochVector b = bloch_from_density(rho);
    const auto ob = oracle::bloch(rho.mat());
    CHECK(std::abs(b.m1 - ob[0]) < 1e-12);
    CHECK(std::abs(b.m2 - ob[1]) < 1e-12);
    CHECK(std::abs(b.m3 - ob[2]) < 1e-12);
    CHECK((density_from_bloch(b).mat() - rho.mat()).norm() < 1e-12);
  }
}

TEST_CASE("orthogonal qubit pairs have opposite bloch vectors") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const PureState psi = haar_random_pure(2, s);
    Vec perp(2);
    perp << -std::conj(psi[1]), std::conj(psi[0]);
    const BlochVector a = bloch_from_pure(psi);
    const BlochVector b = bloch_from_pure(PureState(perp));
    CHECK(std::abs(a.m1 + b.m1) < 1e-10);
    CHECK(std::abs(a.m2 + b.m2) < 1e-10);
    CHECK(std::abs(a.m3 + b.m3) < 1e-10);
    CHECK(std::abs(a.l1() - b.l1()) < 1e-10);
  }
}

TEST_CASE("named magic states") {
  CHECK(std::abs(overlap_abs(t_state(), t_perp_state())) < 1e-12);
  CHECK(bloch_from_pure(h_state()).l1() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(std::abs(bloch_from_pure(h_state()).norm() - 1.0) < 1e-12);
}

TEST_CASE("superpose") {
  const PureState t = t_state();
  const PureState tp = t_perp_state();
  CHECK(overlap_abs(superpose(t, tp, 0.0, 1.3), t) == doctest::Approx(1.0));
  CHECK(overlap_abs(superpose(t, tp, std::numbers::pi, 0.4), tp) == doctest::Approx(1.0));
  const PureState plus = superpose(PureState::basis(2, 0), PureState::basis(2, 1), std::numbers::pi / 2, 0.0);
  CHECK(std::abs(plus[0] - Complex(1 / std::sqrt(2.0), 0)) < 1e-15);
  CHECK(std::abs(plus[1] - Complex(1 / std::sqrt(2.0), 0)) < 1e-15);
  CHECK(kind_of([&] { superpose(t, PureState::basis(2, 0), 1.0, 0.0); }) == ErrorKind::InvalidBasis);
  CHECK(kind_of([&] { superpose(t, PureState::basis(4, 0), 1.0, 0.0); }) == ErrorKind::InvalidDimension);
}

TEST_CASE("basis_angles inverts superpose") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> th(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> ze(-3.1, 3.1);
  for (int k = 0; k < 100; ++k) {
    const double theta = th(rng);
    const double zeta = ze(rng);
    const PureState psi = superpose(t_state(), t_perp_state(), theta, zeta);
    const auto [t2, z2] = basis_angles(psi, t_state(), t_perp_state());
    CHECK(std::abs(t2 - theta) < 1e-9);
    CHECK(std::abs(std::remainder(z2 - zeta, 2 * std::numbers::pi)) < 1e-9);
  }
}

TEST_CASE("tensor, partial trace and unitaries") {
  const PureState zero = PureState::basis(2, 0);
  const DensityMatrix zz = DensityMatrix::from_pure(tensor(zero, zero));
  CHECK((partial_trace(zz, 2, 2, Subsystem::First).mat() - DensityMatrix::from_pure(zero).mat()).norm() < 1e-15);
  CHECK(kind_of([&] { partial_trace(zz, 2, 3, Subsystem::First); }) == ErrorKind::InvalidDimension);

  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const PureState psi(oracle::haar(4, rng));
    const DensityMatrix rho = DensityMatrix::from_pure(psi);
    for (bool first : {true, false}) {
      const Subsystem keep = first ? Subsystem::First : Subsystem::Second;
      const Mat expected = oracle::partial_trace(rho.mat(), first);
      CHECK((partial_trace(rho, 2, 2, keep).mat() - expected).norm() < 1e-12);
      CHECK((partial_trace(psi, 2, 2, keep).mat() - expected).norm() < 1e-12);
      CHECK(std::abs(expected.trace() - 1.0) < 1e-12);
    }
    const PureState a(oracle::haar(2, rng));
    const PureState b(oracle::haar(2, rng));
    CHECK(std::abs(tensor(a, b).amps().norm() - 1.0) < 1e-12);
    const Mat u = oracle::expm(Complex(0, 1) * (oracle::kron(oracle::paulis()[1], oracle::paulis()[2]) * 0.7));
    CHECK(std::abs(apply_unitary(u, psi).amps().norm() - 1.0) < 1e-12);
    CHECK((apply_unitary(u, rho).mat() - u * rho.mat() * u.adjoint()).norm() < 1e-12);
  }
  CHECK(kind_of([&] { apply_unitary(Mat::Identity(2, 2), tensor(zero, zero)); }) == ErrorKind::InvalidDimension);
}

TEST_CASE("fidelity") {
  const PureState zero = PureState::basis(2, 0);
  CHECK(fidelity_pure_mixed(zero, DensityMatrix::from_pure(zero)) == doctest::Approx(1.0));
  CHECK(fidelity_pure_mixed(zero, DensityMatrix::from_pure(PureState::basis(2, 1))) == doctest::Approx(0.0));
  CHECK(fidelity_pure_mixed(zero, DensityMatrix::maximally_mixed(2)) == doctest::Approx(0.5));
  CHECK(kind_of([&] { fidelity_pure_mixed(zero, DensityMatrix::maximally_mixed(4)); }) == ErrorKind::InvalidDimension);
}

TEST_CASE("is_unitary") {
  CHECK(is_unitary(Mat::Identity(4, 4), 1e-12));
  Mat m = Mat::Identity(2, 2);
  m(0, 0) = 1.01;
  CHECK_FALSE(is_unitary(m, 1e-10));
}

}  // TEST_SUITE
