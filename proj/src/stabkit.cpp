#include "magicbc/stabkit.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <sstream>

#include "magicbc/error.hpp"
#include "magicbc/tolerances.hpp"

namespace magicbc {

namespace {

const Complex kI{0.0, 1.0};

Mat single_pauli(int digit) {
  Mat p(2, 2);
  switch (digit) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, -kI, kI, 0; break;
    default: p << 1, 0, 0, -1; break;
  }
  return p;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat hadamard() {
  Mat h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Mat phase_gate() {
  Mat s(2, 2);
  s << 1, 0, 0, kI;
  return s;
}

// Rounded-entry key for set membership of canonically phased objects.
template <typename Derived>
std::vector<long long> rounded_key(const Eigen::MatrixBase<Derived>& m) {
  std::vector<long long> key;
  key.reserve(2 * m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.derived().data()[i];
    key.push_back(std::llround(z.real() * 1e8));
    key.push_back(std::llround(z.imag() * 1e8));
  }
  return key;
}

void require_qubits(int n) {
  if (n != 1 && n != 2) {
    throw Error(ErrorKind::Unsupported, "only n = 1 or n = 2 qubits are supported");
  }
}

bool is_prime(int d) {
  if (d < 2) return false;
  for (int k = 2; k * k <= d; ++k)
    if (d % k == 0) return false;
  return true;
}

StabilizerSet build_stabilizer_set(int n) {
  std::vector<Mat> gens;
  if (n == 1) {
    gens = {hadamard(), phase_gate()};
  } else {
    gens = clifford_generators_2q();
  }
  const int dim = 1 << n;
  StabilizerSet set;
  set.n = n;
  std::map<std::vector<long long>, bool> seen;
  std::deque<Vec> frontier;
  const Vec start = PureState::basis(dim, 0).amps();
  seen[rounded_key(start)] = true;
  frontier.push_back(start);
  while (!frontier.empty()) {
    const Vec v = frontier.front();
    frontier.pop_front();
    set.states.emplace_back(PureState::normalized(v));
    for (const Mat& g : gens) {
      Vec w = canonical_phase(Vec(g * v));
      auto key = rounded_key(w);
      if (seen.emplace(std::move(key), true).second) frontier.push_back(std::move(w));
    }
  }
  return set;
}

std::vector<Mat> build_clifford_1q() {
  const std::vector<Mat> gens = {hadamard(), phase_gate()};
  std::vector<Mat> group;
  std::map<std::vector<long long>, bool> seen;
  std::deque<Mat> frontier;
  const Mat id = Mat::Identity(2, 2);
  seen[rounded_key(id)] = true;
  frontier.push_back(id);
  while (!frontier.empty()) {
    const Mat u = frontier.front();
    frontier.pop_front();
    group.push_back(u);
    for (const Mat& g : gens) {
      Mat w = canonical_phase(Mat(g * u));
      auto key = rounded_key(w);
      if (seen.emplace(std::move(key), true).second) frontier.push_back(std::move(w));
    }
  }
  return group;
}

// Evaluate sum_j |(1-t) b0_j + t b1_j|.
double level_along(const BlochVector& b0, const BlochVector& b1, double t) {
  double s = 0.0;
  for (int j = 0; j < 3; ++j) s += std::abs((1.0 - t) * b0[j] + t * b1[j]);
  return s;
}

}  // namespace

int PauliString::site(int q) const {
  if (q < 0 || q >= n) throw Error(ErrorKind::InvalidDimension, "Pauli site out of range");
  return static_cast<int>((code >> (2 * (n - 1 - q))) & 3u);
}

std::string PauliString::label() const {
  static constexpr char kNames[] = {'I', 'X', 'Y', 'Z'};
  std::string s;
  for (int q = 0; q < n; ++q) s.push_back(kNames[site(q)]);
  return s;
}

Mat PauliString::matrix() const {
  Mat m = single_pauli(site(0));
  for (int q = 1; q < n; ++q) m = kron(m, single_pauli(site(q)));
  return m;
}

Mat WeylOperator::matrix() const {
  Mat shift = Mat::Zero(d, d);
  Mat clock = Mat::Zero(d, d);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int j = 0; j < d; ++j) {
    shift((j + 1) % d, j) = 1.0;
    clock(j, j) = std::polar(1.0, two_pi * j / d);
  }
  Mat out = Mat::Identity(d, d);
  for (int k = 0; k < ((a % d) + d) % d; ++k) out = shift * out;
  for (int k = 0; k < ((b % d) + d) % d; ++k) out = out * clock;
  return out;
}

std::vector<PauliString> pauli_group(int n) {
  require_qubits(n);
  std::vector<PauliString> out;
  const std::uint32_t count = 1u << (2 * n);
  out.reserve(count);
  for (std::uint32_t c = 0; c < count; ++c) out.push_back(PauliString{n, c});
  return out;
}

const std::vector<Mat>& pauli_matrices(int n) {
  require_qubits(n);
  static const std::vector<Mat> one = [] {
    std::vector<Mat> v;
    for (const auto& p : pauli_group(1)) v.push_back(p.matrix());
    return v;
  }();
  static const std::vector<Mat> two = [] {
    std::vector<Mat> v;
    for (const auto& p : pauli_group(2)) v.push_back(p.matrix());
    return v;
  }();
  return n == 1 ? one : two;
}

std::vector<WeylOperator> weyl_group(int d) {
  if (!is_prime(d) || d > 7) {
    throw Error(ErrorKind::Unsupported, "Weyl operators need a prime d <= 7");
  }
  std::vector<WeylOperator> out;
  out.reserve(d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) out.push_back(WeylOperator{d, a, b});
  return out;
}

const StabilizerSet& stabilizer_states(int n) {
  require_qubits(n);
  static const StabilizerSet one = build_stabilizer_set(1);
  static const StabilizerSet two = build_stabilizer_set(2);
  return n == 1 ? one : two;
}

const std::vector<Mat>& clifford_group_1q() {
  static const std::vector<Mat> group = build_clifford_1q();
  return group;
}

std::vector<Mat> clifford_generators_2q() {
  const Mat id = Mat::Identity(2, 2);
  Mat cnot = Mat::Zero(4, 4);
  cnot(0, 0) = 1.0;
  cnot(1, 1) = 1.0;
  cnot(2, 3) = 1.0;
  cnot(3, 2) = 1.0;
  return {kron(hadamard(), id), kron(id, hadamard()), kron(phase_gate(), id), kron(id, phase_gate()), cnot};
}

Vec canonical_phase(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-9) return v * (std::abs(v(i)) / v(i));
  }
  return v;
}

Mat canonical_phase(const Mat& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (std::abs(z) > 1e-9) return m * (std::abs(z) / z);
  }
  return m;
}

PolytopeSide polytope_membership(const BlochVector& b, double level) {
  if (!(level >= 1.0)) throw Error(ErrorKind::InvalidLevel, "polytope level must be >= 1");
  const double gap = b.l1() - level;
  if (std::abs(gap) <= tol::kSurface) return PolytopeSide::OnSurface;
  return gap < 0.0 ? PolytopeSide::Inside : PolytopeSide::Outside;
}

std::vector<double> line_polytope_intersections(const BlochVector& b0, const BlochVector& b1, double level) {
  if (!(level >= 1.0)) throw Error(ErrorKind::InvalidLevel, "polytope level must be >= 1");

  // Split [0, 1] at every coordinate zero crossing; the level function is
  // linear on each piece.
  std::vector<double> cuts = {0.0, 1.0};
  for (int j = 0; j < 3; ++j) {
    const double slope = b1[j] - b0[j];
    if (slope == 0.0) continue;
    const double t = -b0[j] / slope;
    if (t > 0.0 && t < 1.0) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());

  std::vector<double> roots;
  auto add_root = [&roots](double t) {
    t = std::clamp(t, 0.0, 1.0);
    for (double r : roots)
      if (std::abs(r - t) <= 1e-12) return;
    roots.push_back(t);
  };

  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    if (hi - lo <= 0.0) continue;
    const double mid = 0.5 * (lo + hi);
    // f(t) = intercept + slope * t on [lo, hi].
    double intercept = 0.0;
    double slope = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double coord = (1.0 - mid) * b0[j] + mid * b1[j];
      const double sign = coord > 0.0 ? 1.0 : (coord < 0.0 ? -1.0 : 0.0);
      intercept += sign * b0[j];
      slope += sign * (b1[j] - b0[j]);
    }
    const double f_lo = level_along(b0, b1, lo);
    const double f_hi = level_along(b0, b1, hi);
    if (std::abs(f_lo - level) <= tol::kLineRoot && std::abs(f_hi - level) <= tol::kLineRoot) {
      add_root(lo);
      add_root(hi);
      continue;
    }
    if (slope == 0.0) continue;
    const double t = (level - intercept) / slope;
    const double slack = 1e-12;
    if (t >= lo - slack && t <= hi + slack && std::abs(level_along(b0, b1, t) - level) <= tol::kLineRoot) {
      add_root(t);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

GeometryCertificate broadcast_geometry_certificate(const BlochVector& sys0, const BlochVector& sys1,
                                                   const BlochVector& aux0, const BlochVector& aux1, double level) {
  if (!(level >= 1.0)) throw Error(ErrorKind::InvalidLevel, "polytope level must be >= 1");
  const double ref = sys0.l1();
  for (const BlochVector* b : {&sys1, &aux0, &aux1}) {
    if (std::abs(b->l1() - ref) > tol::kReferenceLevel) {
      std::ostringstream msg;
      msg << "endpoint level " << b->l1() << " differs from " << ref;
      throw Error(ErrorKind::InconsistentReference, msg.str());
    }
  }
  if (level > ref + tol::kReferenceLevel) {
    throw Error(ErrorKind::InvalidLevel, "target level exceeds the reference level");
  }

  GeometryCertificate cert;
  cert.level = level;
  cert.reference_level = ref;
  cert.sys_t = line_polytope_intersections(sys0, sys1, level);
  cert.aux_t = line_polytope_intersections(aux0, aux1, level);
  for (double ts : cert.sys_t) {
    for (double ta : cert.aux_t) {
      if (std::abs(ts - ta) <= tol::kCommonT) {
        cert.common_t.push_back(0.5 * (ts + ta));
        break;
      }
    }
  }
  cert.broadcastable = !cert.common_t.empty();
  return cert;
}

}  // namespace magicbc
