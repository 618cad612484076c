#pragma once

#include <optional>
#include <vector>

#include "magicbc/qstate.hpp"

namespace magicbc {

struct MagicReport {
  int n = 1;
  double witness_d = 0.5;
  std::optional<double> rom;   // single qubit only
  std::optional<double> sre2;  // pure states only
  double extended_sre2 = 0.0;
};

/// Tr(P rho) for every Pauli string in code order (real parts).
std::vector<double> pauli_expectations(const DensityMatrix& rho, int n);
std::vector<double> pauli_expectations(const PureState& psi, int n);

/// (1 / 2^n) sum_P |Tr(P rho)|.
double witness_d(const DensityMatrix& rho, int n);

/// Robustness of magic of a qubit, max{1, |m1| + |m2| + |m3|}.
double rom_qubit(const DensityMatrix& rho);
double rom_qubit(const BlochVector& b);

/// Robustness of magic of a qubit computed as the linear program
///   min sum_i |x_i|  s.t.  rho = sum_i x_i |s_i><s_i|
/// over the six pure stabilizer states, by enumerating every basic
/// feasible solution of the split-variable standard form.
double rom_lp_oracle(const DensityMatrix& rho);

/// Stabilizer Renyi entropy of order 2 of a pure n-qubit state:
///   -log2( sum_P <psi|P|psi>^4 / 2^n ).
double sre2_pure(const PureState& psi, int n);

/// Purity-normalized mixed-state extension:
///   -log2( sum_P Tr(P rho)^4 / sum_P Tr(P rho)^2 ).
double sre2_extended(const DensityMatrix& rho, int n);

/// Qudit version over the d^2 Weyl operators, prime d <= 7.
double sre2_qudit(const PureState& psi, int d);

/// Mean of sre2_pure over the images U|s> of the 60 two-qubit stabilizer states.
double magic_power(const Mat& unitary);

MagicReport magic_report(const PureState& psi);
MagicReport magic_report(const DensityMatrix& rho);

/// Number of qubits n with 2^n == dim; throws invalid-dimension otherwise.
int qubit_count(int dim);

}  // namespace magicbc
