#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <utility>

#include <Eigen/Dense>

namespace magicbc {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Normalized state vector on a dim-dimensional Hilbert space.
///
/// Construction validates the norm against tol::kNorm; use
/// PureState::normalized() to build from an arbitrary nonzero vector.
class PureState {
 public:
  explicit PureState(Vec amps);

  static PureState normalized(Vec amps);
  static PureState basis(int dim, int index);

  int dim() const noexcept { return static_cast<int>(amps_.size()); }
  const Vec& amps() const noexcept { return amps_; }
  Complex operator[](int k) const { return amps_(k); }

 private:
  Vec amps_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(Mat mat);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const noexcept { return static_cast<int>(mat_.rows()); }
  const Mat& mat() const noexcept { return mat_; }
  double purity() const;

 private:
  Mat mat_;
};

/// Qubit magnetizations m_j = Tr(sigma_j rho).
struct BlochVector {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;

  std::array<double, 3> as_array() const { return {m1, m2, m3}; }
  double operator[](int j) const { return j == 0 ? m1 : (j == 1 ? m2 : m3); }
  double norm() const;
  double l1() const;  // sum_j |m_j|

  BlochVector operator-() const { return {-m1, -m2, -m3}; }
  friend BlochVector operator*(double s, const BlochVector& b) { return {s * b.m1, s * b.m2, s * b.m3}; }
  friend BlochVector operator+(const BlochVector& a, const BlochVector& b) {
    return {a.m1 + b.m1, a.m2 + b.m2, a.m3 + b.m3};
  }
};

enum class Subsystem { First, Second };

PureState haar_random_pure(int dim, std::uint64_t seed);

/// Random mixed state: Haar pure state on dim x dim, traced over the ancilla.
DensityMatrix random_mixed(int dim, std::uint64_t seed);

BlochVector bloch_from_density(const DensityMatrix& rho);
BlochVector bloch_from_pure(const PureState& psi);
DensityMatrix density_from_bloch(const BlochVector& b);

/// cos(g)|0> + e^{i pi/4} sin(g)|1> with cos(2g) = 1/sqrt(3).
PureState t_state();
/// -sin(g)|0> + e^{i pi/4} cos(g)|1>, orthogonal to t_state().
PureState t_perp_state();
/// Magic state with sum_j |m_j| = sqrt(2), given by its coefficients in the
/// {|T>, |T_perp>} basis.
PureState h_state();

/// cos(theta/2) psi + e^{i zeta} sin(theta/2) psi_perp.
PureState superpose(const PureState& psi, const PureState& psi_perp, double theta, double zeta);

/// Inverse of superpose up to global phase: (theta, zeta) with theta in
/// [0, pi], zeta in (-pi, pi]. Throws invalid-basis if target leaves the span.
std::pair<double, double> basis_angles(const PureState& target, const PureState& psi, const PureState& psi_perp);

PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduce a bipartite state of dims (dim_first, dim_second) to one factor.
DensityMatrix partial_trace(const DensityMatrix& rho, int dim_first, int dim_second, Subsystem keep);
/// Same, working on the vector directly (rho = |psi><psi|).
DensityMatrix partial_trace(const PureState& psi, int dim_first, int dim_second, Subsystem keep);

PureState apply_unitary(const Mat& unitary, const PureState& psi);
DensityMatrix apply_unitary(const Mat& unitary, const DensityMatrix& rho);

/// <psi|rho|psi>.
double fidelity_pure_mixed(const PureState& psi, const DensityMatrix& rho);

bool is_unitary(const Mat& u, double tolerance);

/// Overlap |<a|b>|, i.e. equality up to global phase when close to 1.
double overlap_abs(const PureState& a, const PureState& b);

}  // namespace magicbc
