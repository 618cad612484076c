#include "magicbc/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "magicbc/error.hpp"
#include "magicbc/tolerances.hpp"

namespace magicbc {

namespace {

const Complex kI{0.0, 1.0};

double min_eigenvalue(const Mat& m) {
  if (m.rows() == 2) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double off = std::abs(m(0, 1));
    return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + off * off);
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Pauli sigma_j, j in {1,2,3}.
Eigen::Matrix2cd sigma(int j) {
  Eigen::Matrix2cd s;
  switch (j) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -kI, kI, 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

double t_angle() { return 0.5 * std::acos(1.0 / std::sqrt(3.0)); }

}  // namespace

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::NotAState: return "not-a-state";
    case ErrorKind::InvalidBasis: return "invalid-basis";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::InvalidLevel: return "invalid-level";
    case ErrorKind::InconsistentReference: return "inconsistent-reference";
    case ErrorKind::InvalidUnitary: return "invalid-unitary";
    case ErrorKind::InvalidMachine: return "invalid-machine";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::InvalidSpec: return "invalid-spec";
    case ErrorKind::InternalError: return "internal-error";
  }
  return "unknown";
}

PureState::PureState(Vec amps) : amps_(std::move(amps)) {
  if (amps_.size() < 1) {
    throw Error(ErrorKind::InvalidDimension, "empty state vector");
  }
  const double n2 = amps_.squaredNorm();
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > tol::kNorm) {
    throw Error(ErrorKind::NotAState, "state vector norm^2 = " + std::to_string(n2));
  }
}

PureState PureState::normalized(Vec amps) {
  const double n = amps.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::NotAState, "cannot normalize a zero vector");
  }
  amps /= n;
  return PureState(std::move(amps));
}

PureState PureState::basis(int dim, int index) {
  if (dim < 1 || index < 0 || index >= dim) {
    throw Error(ErrorKind::InvalidDimension, "basis index out of range");
  }
  Vec v = Vec::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(Mat mat) : mat_(std::move(mat)) {
  if (mat_.rows() < 1 || mat_.rows() != mat_.cols()) {
    throw Error(ErrorKind::InvalidDimension, "density matrix must be square");
  }
  if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > tol::kHermitian) {
    throw Error(ErrorKind::NotAState, "density matrix is not Hermitian");
  }
  if (std::abs(mat_.trace() - Complex(1.0)) > tol::kTrace) {
    throw Error(ErrorKind::NotAState, "density matrix trace != 1");
  }
  // Symmetrize so downstream code sees an exactly Hermitian matrix.
  mat_ = 0.5 * (mat_ + mat_.adjoint().eval());
  if (min_eigenvalue(mat_) < -tol::kEigenvalue) {
    throw Error(ErrorKind::NotAState, "density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.amps() * psi.amps().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw Error(ErrorKind::InvalidDimension, "dim < 1");
  return DensityMatrix(Mat::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::purity() const { return (mat_ * mat_).trace().real(); }

double BlochVector::norm() const { return std::sqrt(m1 * m1 + m2 * m2 + m3 * m3); }

double BlochVector::l1() const { return std::abs(m1) + std::abs(m2) + std::abs(m3); }

PureState haar_random_pure(int dim, std::uint64_t seed) {
  if (dim < 2) {
    throw Error(ErrorKind::InvalidDimension, "haar_random_pure needs dim >= 2");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(dim);
  for (int k = 0; k < dim; ++k) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(k) = Complex(re, im);
  }
  return PureState::normalized(std::move(v));
}

DensityMatrix random_mixed(int dim, std::uint64_t seed) {
  const PureState joint = haar_random_pure(dim * dim, seed);
  return partial_trace(joint, dim, dim, Subsystem::First);
}

BlochVector bloch_from_density(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw Error(ErrorKind::InvalidDimension, "Bloch vector needs a qubit");
  }
  const Mat& m = rho.mat();
  // Tr(sigma_j rho) written out for the 2x2 case.
  return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

BlochVector bloch_from_pure(const PureState& psi) {
  if (psi.dim() != 2) {
    throw Error(ErrorKind::InvalidDimension, "Bloch vector needs a qubit");
  }
  const Complex a = psi[0];
  const Complex b = psi[1];
  const Complex ab = std::conj(a) * b;
  return {2.0 * ab.real(), 2.0 * ab.imag(), std::norm(a) - std::norm(b)};
}

DensityMatrix density_from_bloch(const BlochVector& b) {
  if (!(b.norm() <= 1.0 + tol::kBloch)) {
    throw Error(ErrorKind::NotAState, "Bloch vector outside the unit ball");
  }
  Mat m = 0.5 * Mat::Identity(2, 2);
  m += 0.5 * (b.m1 * sigma(1) + b.m2 * sigma(2) + b.m3 * sigma(3));
  return DensityMatrix(std::move(m));
}

PureState t_state() {
  const double g = t_angle();
  Vec v(2);
  v << std::cos(g), std::polar(1.0, std::numbers::pi / 4) * std::sin(g);
  return PureState::normalized(std::move(v));
}

PureState t_perp_state() {
  const double g = t_angle();
  Vec v(2);
  v << -std::sin(g), std::polar(1.0, std::numbers::pi / 4) * std::cos(g);
  return PureState::normalized(std::move(v));
}

PureState h_state() {
  const double s8 = std::sin(std::numbers::pi / 8);
  const double c8 = std::cos(std::numbers::pi / 8);
  const double r3 = std::sqrt(3.0);
  // Principal fourth root of the negative number sqrt(3) - 2.
  const Complex root4 = std::pow(Complex(r3 - 2.0, 0.0), 0.25);
  const Complex alpha = root4 * s8 / std::pow(6.0, 0.25) + std::sqrt(r3 + 3.0) * c8 / std::sqrt(6.0);
  const Complex beta =
      (-std::sqrt(18.0 - 6.0 * r3) * c8 + Complex(1.0, 1.0) * std::sqrt(3.0 * r3 + 9.0) * s8) / 6.0;
  Vec v = alpha * t_state().amps() + beta * t_perp_state().amps();
  return PureState::normalized(std::move(v));
}

PureState superpose(const PureState& psi, const PureState& psi_perp, double theta, double zeta) {
  if (psi.dim() != psi_perp.dim()) {
    throw Error(ErrorKind::InvalidDimension, "superpose: dimension mismatch");
  }
  if (std::abs(psi.amps().dot(psi_perp.amps())) > tol::kOrthogonal) {
    throw Error(ErrorKind::InvalidBasis, "superpose: inputs are not orthogonal");
  }
  Vec v = std::cos(theta / 2) * psi.amps() + std::polar(1.0, zeta) * std::sin(theta / 2) * psi_perp.amps();
  return PureState::normalized(std::move(v));
}

std::pair<double, double> basis_angles(const PureState& target, const PureState& psi, const PureState& psi_perp) {
  if (target.dim() != psi.dim() || psi.dim() != psi_perp.dim()) {
    throw Error(ErrorKind::InvalidDimension, "basis_angles: dimension mismatch");
  }
  if (std::abs(psi.amps().dot(psi_perp.amps())) > tol::kOrthogonal) {
    throw Error(ErrorKind::InvalidBasis, "basis_angles: basis is not orthogonal");
  }
  const Complex a = psi.amps().dot(target.amps());
  const Complex b = psi_perp.amps().dot(target.amps());
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > tol::kOrthogonal) {
    throw Error(ErrorKind::InvalidBasis, "basis_angles: state is outside the basis span");
  }
  const double theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  const double zeta = (std::abs(a) < 1e-15 || std::abs(b) < 1e-15) ? 0.0 : std::arg(b / a);
  return {theta, zeta};
}

PureState tensor(const PureState& a, const PureState& b) {
  Vec v(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i) {
    v.segment(i * b.dim(), b.dim()) = a[i] * b.amps();
  }
  return PureState::normalized(std::move(v));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const int da = a.dim();
  const int db = b.dim();
  Mat m(da * db, da * db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      m.block(i * db, j * db, db, db) = a.mat()(i, j) * b.mat();
    }
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix partial_trace(const DensityMatrix& rho, int dim_first, int dim_second, Subsystem keep) {
  if (dim_first < 1 || dim_second < 1 || rho.dim() != dim_first * dim_second) {
    throw Error(ErrorKind::InvalidDimension, "partial_trace: dimension mismatch");
  }
  const Mat& m = rho.mat();
  if (keep == Subsystem::First) {
    Mat out = Mat::Zero(dim_first, dim_first);
    for (int i = 0; i < dim_first; ++i)
      for (int j = 0; j < dim_first; ++j)
        for (int k = 0; k < dim_second; ++k) out(i, j) += m(i * dim_second + k, j * dim_second + k);
    return DensityMatrix(std::move(out));
  }
  Mat out = Mat::Zero(dim_second, dim_second);
  for (int i = 0; i < dim_second; ++i)
    for (int j = 0; j < dim_second; ++j)
      for (int k = 0; k < dim_first; ++k) out(i, j) += m(k * dim_second + i, k * dim_second + j);
  return DensityMatrix(std::move(out));
}

DensityMatrix partial_trace(const PureState& psi, int dim_first, int dim_second, Subsystem keep) {
  if (dim_first < 1 || dim_second < 1 || psi.dim() != dim_first * dim_second) {
    throw Error(ErrorKind::InvalidDimension, "partial_trace: dimension mismatch");
  }
  // Reshape amplitudes into a dim_first x dim_second coefficient matrix C;
  // rho_first = C C^dagger and rho_second = C^T conj(C).
  Mat c(dim_first, dim_second);
  for (int i = 0; i < dim_first; ++i)
    for (int k = 0; k < dim_second; ++k) c(i, k) = psi[i * dim_second + k];
  if (keep == Subsystem::First) return DensityMatrix(c * c.adjoint());
  return DensityMatrix(c.transpose() * c.conjugate());
}

PureState apply_unitary(const Mat& unitary, const PureState& psi) {
  if (unitary.rows() != psi.dim() || unitary.cols() != psi.dim()) {
    throw Error(ErrorKind::InvalidDimension, "apply_unitary: dimension mismatch");
  }
  return PureState::normalized(unitary * psi.amps());
}

DensityMatrix apply_unitary(const Mat& unitary, const DensityMatrix& rho) {
  if (unitary.rows() != rho.dim() || unitary.cols() != rho.dim()) {
    throw Error(ErrorKind::InvalidDimension, "apply_unitary: dimension mismatch");
  }
  return DensityMatrix(unitary * rho.mat() * unitary.adjoint());
}

double fidelity_pure_mixed(const PureState& psi, const DensityMatrix& rho) {
  if (psi.dim() != rho.dim()) {
    throw Error(ErrorKind::InvalidDimension, "fidelity: dimension mismatch");
  }
  const double f = psi.amps().dot(rho.mat() * psi.amps()).real();
  return std::clamp(f, 0.0, 1.0);
}

bool is_unitary(const Mat& u, double tolerance) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tolerance;
}

double overlap_abs(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::InvalidDimension, "overlap: dimension mismatch");
  }
  return std::abs(a.amps().dot(b.amps()));
}

}  // namespace magicbc
