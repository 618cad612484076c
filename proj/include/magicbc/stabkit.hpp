#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "magicbc/qstate.hpp"

namespace magicbc {

/// n-qubit Pauli string. Each site holds a base-4 digit (0=I, 1=X, 2=Y, 3=Z);
/// the first qubit is the most significant digit, so for n = 2 the code is
/// 4 * first + second and tensor order matches the state vector layout.
struct PauliString {
  int n = 1;
  std::uint32_t code = 0;

  int site(int q) const;
  std::string label() const;
  Mat matrix() const;
};

/// Displacement operator X^a Z^b on a prime-dimensional qudit, with
/// X|j> = |j+1 mod d> and Z|j> = omega^j |j>, omega = exp(2 pi i / d).
struct WeylOperator {
  int d = 2;
  int a = 0;
  int b = 0;

  Mat matrix() const;
};

struct StabilizerSet {
  int n = 1;
  std::vector<PureState> states;
};

enum class PolytopeSide { Inside, OnSurface, Outside };

struct GeometryCertificate {
  double level = 1.0;
  double reference_level = 1.0;
  std::vector<double> sys_t;
  std::vector<double> aux_t;
  std::vector<double> common_t;
  bool broadcastable = false;
};

/// All 4^n Pauli strings in code order, identity first. n in {1, 2}.
std::vector<PauliString> pauli_group(int n);
/// Materialized Pauli matrices for pauli_group(n), cached.
const std::vector<Mat>& pauli_matrices(int n);

/// The d^2 Weyl operators for prime d <= 7, ordered by (a, b).
std::vector<WeylOperator> weyl_group(int d);

/// Pure stabilizer states: 6 for n = 1, 60 for n = 2. Each state has its
/// first nonzero amplitude made real positive.
const StabilizerSet& stabilizer_states(int n);

/// The 24 single-qubit Cliffords modulo global phase.
const std::vector<Mat>& clifford_group_1q();

/// Clifford generators on two qubits: H and S on each site, CNOT(0 -> 1).
std::vector<Mat> clifford_generators_2q();

/// Fix the global phase so the first entry with magnitude > 1e-9 is real positive.
Vec canonical_phase(const Vec& v);
Mat canonical_phase(const Mat& m);

PolytopeSide polytope_membership(const BlochVector& b, double level);

/// Parameters t in [0, 1] where sum_j |(1-t) b0_j + t b1_j| = level.
/// If a whole sub-segment lies on the surface its two ends are returned.
std::vector<double> line_polytope_intersections(const BlochVector& b0, const BlochVector& b1, double level);

/// Equal-ratio test: the system segment (sys0 -> sys1) and the auxiliary
/// segment (aux0 -> aux1) must cross the level surface at a common t.
GeometryCertificate broadcast_geometry_certificate(const BlochVector& sys0, const BlochVector& sys1,
                                                   const BlochVector& aux0, const BlochVector& aux1, double level);

}  // namespace magicbc
