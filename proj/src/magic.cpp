#include "magicbc/magic.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "magicbc/error.hpp"
#include "magicbc/stabkit.hpp"
#include "magicbc/tolerances.hpp"

namespace magicbc {

namespace {

// Map tiny negative round-off of -log2(1 + eps) onto zero.
double clamp_entropy(double m) { return (m < 0.0 && m > -1e-12) ? 0.0 : m; }

void require_dim(int dim, int n) {
  if (n < 1 || n > 2 || dim != (1 << n)) {
    throw Error(ErrorKind::InvalidDimension, "state dimension does not match 2^n for n in {1, 2}");
  }
}

}  // namespace

int qubit_count(int dim) {
  if (dim == 2) return 1;
  if (dim == 4) return 2;
  throw Error(ErrorKind::InvalidDimension, "expected a one- or two-qubit state");
}

std::vector<double> pauli_expectations(const DensityMatrix& rho, int n) {
  require_dim(rho.dim(), n);
  const auto& paulis = pauli_matrices(n);
  std::vector<double> out;
  out.reserve(paulis.size());
  for (const Mat& p : paulis) out.push_back((p * rho.mat()).trace().real());
  return out;
}

std::vector<double> pauli_expectations(const PureState& psi, int n) {
  require_dim(psi.dim(), n);
  const auto& paulis = pauli_matrices(n);
  std::vector<double> out;
  out.reserve(paulis.size());
  for (const Mat& p : paulis) out.push_back(psi.amps().dot(p * psi.amps()).real());
  return out;
}

double witness_d(const DensityMatrix& rho, int n) {
  double sum = 0.0;
  for (double e : pauli_expectations(rho, n)) sum += std::abs(e);
  return sum / static_cast<double>(1 << n);
}

double rom_qubit(const BlochVector& b) { return std::max(1.0, b.l1()); }

double rom_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw Error(ErrorKind::InvalidDimension, "rom_qubit needs a qubit");
  return rom_qubit(bloch_from_density(rho));
}

double rom_lp_oracle(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw Error(ErrorKind::InvalidDimension, "rom_lp_oracle needs a qubit");

  // Equality constraints: normalization plus the three magnetizations, each
  // stabilizer state contributing (1, Tr(sigma_j s_i)).
  const auto& stabs = stabilizer_states(1).states;
  constexpr int kStates = 6;
  constexpr int kCols = 2 * kStates;  // x = x_plus - x_minus
  Eigen::Matrix<double, 4, kCols> a;
  for (int i = 0; i < kStates; ++i) {
    const BlochVector s = bloch_from_pure(stabs[i]);
    const Eigen::Vector4d col(1.0, s.m1, s.m2, s.m3);
    a.col(i) = col;
    a.col(kStates + i) = -col;
  }
  const BlochVector m = bloch_from_density(rho);
  const Eigen::Vector4d rhs(1.0, m.m1, m.m2, m.m3);

  double best = std::numeric_limits<double>::infinity();
  std::array<int, 4> idx{};
  for (idx[0] = 0; idx[0] < kCols; ++idx[0])
    for (idx[1] = idx[0] + 1; idx[1] < kCols; ++idx[1])
      for (idx[2] = idx[1] + 1; idx[2] < kCols; ++idx[2])
        for (idx[3] = idx[2] + 1; idx[3] < kCols; ++idx[3]) {
          Eigen::Matrix4d basis;
          for (int k = 0; k < 4; ++k) basis.col(k) = a.col(idx[k]);
          const Eigen::FullPivLU<Eigen::Matrix4d> lu(basis);
          if (lu.rank() < 4) continue;
          const Eigen::Vector4d x = lu.solve(rhs);
          if (x.minCoeff() < -1e-12) continue;
          best = std::min(best, x.sum());
        }
  if (!std::isfinite(best)) {
    throw Error(ErrorKind::InternalError, "stabilizer decomposition LP is infeasible");
  }
  return best;
}

double sre2_pure(const PureState& psi, int n) {
  require_dim(psi.dim(), n);
  double sum4 = 0.0;
  for (double e : pauli_expectations(psi, n)) sum4 += e * e * e * e;
  return clamp_entropy(-std::log2(sum4 / static_cast<double>(1 << n)));
}

double sre2_extended(const DensityMatrix& rho, int n) {
  double sum2 = 0.0;
  double sum4 = 0.0;
  for (double e : pauli_expectations(rho, n)) {
    sum2 += e * e;
    sum4 += e * e * e * e;
  }
  return clamp_entropy(-std::log2(sum4 / sum2));
}

double sre2_qudit(const PureState& psi, int d) {
  const auto ops = weyl_group(d);
  if (psi.dim() != d) throw Error(ErrorKind::InvalidDimension, "qudit state dimension != d");
  double sum4 = 0.0;
  for (const WeylOperator& w : ops) {
    const double e = std::abs(psi.amps().dot(w.matrix() * psi.amps()));
    sum4 += e * e * e * e;
  }
  return clamp_entropy(-std::log2(sum4 / static_cast<double>(d)));
}

double magic_power(const Mat& unitary) {
  if (unitary.rows() != 4 || unitary.cols() != 4) {
    throw Error(ErrorKind::InvalidDimension, "magic_power needs a two-qubit unitary");
  }
  if (!is_unitary(unitary, tol::kUnitary)) {
    throw Error(ErrorKind::InvalidUnitary, "magic_power: matrix is not unitary");
  }
  const auto& stabs = stabilizer_states(2).states;
  double total = 0.0;
  for (const PureState& s : stabs) total += sre2_pure(apply_unitary(unitary, s), 2);
  return total / static_cast<double>(stabs.size());
}

MagicReport magic_report(const PureState& psi) {
  MagicReport r = magic_report(DensityMatrix::from_pure(psi));
  r.sre2 = sre2_pure(psi, r.n);
  return r;
}

MagicReport magic_report(const DensityMatrix& rho) {
  MagicReport r;
  r.n = qubit_count(rho.dim());
  r.witness_d = witness_d(rho, r.n);
  if (r.n == 1) r.rom = rom_qubit(rho);
  r.extended_sre2 = sre2_extended(rho, r.n);
  return r;
}

}  // namespace magicbc
