#include "magicbc/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "magicbc/cloners.hpp"
#include "magicbc/error.hpp"
#include "magicbc/magic.hpp"
#include "magicbc/stabkit.hpp"

namespace magicbc {

namespace {

using Clock = std::chrono::steady_clock;

struct Suite {
  std::function<VerificationReport(long, std::uint64_t)> run;
  long default_samples;
};

class Timer {
 public:
  Timer() : start_(Clock::now()) {}
  long ms() const {
    return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_).count());
  }

 private:
  Clock::time_point start_;
};

VerificationReport finish(const std::string& name, long samples, double violation, double tolerance,
                          std::uint64_t seed, const Timer& timer, std::string detail = {}) {
  VerificationReport r;
  r.check_name = name;
  r.samples = samples;
  r.max_violation = violation;
  r.tolerance = tolerance;
  r.pass = violation <= tolerance;
  r.seed = seed;
  r.runtime_ms = timer.ms();
  r.detail = std::move(detail);
  return r;
}

void require_samples(long samples) {
  if (samples < 1) throw Error(ErrorKind::InvalidInput, "sample count must be >= 1");
}

// Random 2-qubit Clifford as a word of 1..12 generators.
Mat random_clifford_2q(std::mt19937_64& rng) {
  static const std::vector<Mat> gens = clifford_generators_2q();
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> len(1, 12);
  Mat c = Mat::Identity(4, 4);
  for (int k = len(rng); k > 0; --k) c = gens[pick(rng)] * c;
  return c;
}

double dense_level(const BlochVector& b0, const BlochVector& b1, double t) {
  return ((1.0 - t) * b0 + t * b1).l1();
}

// Roots of sum|m(t)| = level found by scanning a uniform grid and bisecting
// every sign change. Grid points that touch the level without a sign change
// are flagged as tangent.
struct ScanResult {
  std::vector<double> roots;
  bool tangent = false;
};

ScanResult scan_roots(const BlochVector& b0, const BlochVector& b1, double level, int grid) {
  ScanResult out;
  const double h = 1.0 / grid;
  const double slope = (b1 + -b0).l1();
  auto f = [&](double t) { return dense_level(b0, b1, t) - level; };
  std::vector<double> v(static_cast<std::size_t>(grid) + 1);
  for (int k = 0; k <= grid; ++k) v[k] = f(k * h);
  auto sgn = [](double x) { return (x > 0.0) - (x < 0.0); };
  for (int k = 0; k <= grid; ++k) {
    if (v[k] == 0.0) {
      out.roots.push_back(k * h);
      continue;
    }
    if (k > 0 && v[k - 1] != 0.0 && sgn(v[k - 1]) != sgn(v[k])) {
      double lo = (k - 1) * h;
      double hi = k * h;
      const int lo_sign = sgn(v[k - 1]);
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sgn(f(mid)) == lo_sign) lo = mid; else hi = mid;
      }
      out.roots.push_back(0.5 * (lo + hi));
      continue;
    }
    const bool left_same = k == 0 || sgn(v[k - 1]) == sgn(v[k]);
    const bool right_same = k == grid || sgn(v[k + 1]) == sgn(v[k]);
    const bool local_min = (k == 0 || std::abs(v[k]) <= std::abs(v[k - 1])) &&
                           (k == grid || std::abs(v[k]) <= std::abs(v[k + 1]));
    if (left_same && right_same && local_min && std::abs(v[k]) <= slope * h) out.tangent = true;
  }
  return out;
}

// Signed coordinate permutation: an octahedral symmetry, preserves sum |m_j|.
BlochVector octahedral(const BlochVector& b, const std::array<int, 3>& perm, const std::array<double, 3>& sign) {
  return BlochVector{sign[0] * b[perm[0]], sign[1] * b[perm[1]], sign[2] * b[perm[2]]};
}

}  // namespace

VerificationReport verify_lemma1(long samples, std::uint64_t seed) {
  require_samples(samples);
  Timer timer;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (long i = 0; i < samples; ++i) {
    const std::uint64_t s = rng();
    const DensityMatrix rho = (i % 2 == 0) ? DensityMatrix::from_pure(haar_random_pure(2, s)) : random_mixed(2, s);
    const double r = rom_qubit(rho);
    worst = std::max(worst, std::abs(r - rom_lp_oracle(rho)));
    worst = std::max(worst, std::abs(r - std::max(1.0, 2.0 * witness_d(rho, 1) - 1.0)));
  }
  return finish("lemma1", samples, worst, 1e-8, seed, timer, "rom_qubit vs LP oracle and 2D-1");
}

VerificationReport verify_clifford(long samples, std::uint64_t seed) {
  require_samples(samples);
  Timer timer;
  std::mt19937_64 rng(seed);
  const auto& cliffords = clifford_group_1q();
  std::uniform_int_distribution<std::size_t> pick(0, cliffords.size() - 1);
  double worst = 0.0;
  for (long i = 0; i < samples; ++i) {
    const PureState psi = haar_random_pure(2, rng());
    const PureState cpsi = apply_unitary(cliffords[pick(rng)], psi);
    const DensityMatrix rho = DensityMatrix::from_pure(psi);
    const DensityMatrix crho = DensityMatrix::from_pure(cpsi);
    worst = std::max(worst, std::abs(sre2_pure(cpsi, 1) - sre2_pure(psi, 1)));
    worst = std::max(worst, std::abs(rom_qubit(crho) - rom_qubit(rho)));
    worst = std::max(worst, std::abs(witness_d(crho, 1) - witness_d(rho, 1)));

    const PureState phi = haar_random_pure(4, rng());
    const PureState cphi = apply_unitary(random_clifford_2q(rng), phi);
    worst = std::max(worst, std::abs(sre2_pure(cphi, 2) - sre2_pure(phi, 2)));
  }
  return finish("clifford", samples, worst, 1e-10, seed, timer, "M2, R and D under 1- and 2-qubit Cliffords");
}

VerificationReport verify_additivity(long samples, std::uint64_t seed) {
  require_samples(samples);
  Timer timer;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (long i = 0; i < samples; ++i) {
    const PureState a = haar_random_pure(2, rng());
    const PureState b = haar_random_pure(2, rng());
    worst = std::max(worst, std::abs(sre2_pure(tensor(a, b), 2) - sre2_pure(a, 1) - sre2_pure(b, 1)));
  }
  return finish("additivity", samples, worst, 1e-10, seed, timer, "M2(a (x) b) - M2(a) - M2(b)");
}

VerificationReport verify_convexity(long samples, std::uint64_t seed) {
  require_samples(samples);
  Timer timer;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (long i = 0; i < samples; ++i) {
    const double lam = unit(rng);
    const DensityMatrix r1 = (i % 2 == 0) ? DensityMatrix::from_pure(haar_random_pure(2, rng())) : random_mixed(2, rng());
    const DensityMatrix r2 = random_mixed(2, rng());
    const DensityMatrix mix(lam * r1.mat() + (1.0 - lam) * r2.mat());
    const double excess = rom_qubit(mix) - (lam * rom_qubit(r1) + (1.0 - lam) * rom_qubit(r2));
    worst = std::max(worst, excess);
  }
  return finish("convexity", samples, std::max(0.0, worst), 1e-12, seed, timer, "R(mix) - mix of R");
}

VerificationReport verify_theorem2(long zeta_points, std::uint64_t seed) {
  require_samples(zeta_points);
  Timer timer;
  std::vector<double> grid(static_cast<std::size_t>(zeta_points));
  for (long k = 0; k < zeta_points; ++k) grid[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / zeta_points;
  const Theorem2Report t2 = theorem2_falsify(maximal_magic_spec(), std::numbers::pi / 4.0, grid);
  const double tolerance = 1e-9;
  const double gap_shortfall = t2.max_gap > 0.1 ? 0.0 : std::max(0.1 - t2.max_gap, 2.0 * tolerance);
  std::ostringstream detail;
  detail.precision(10);
  detail << "max_gap=" << t2.max_gap << " worst_zeta=" << t2.worst_zeta << " output_magic=" << t2.output_magic
         << " output_spread=" << t2.output_spread << " closed_form_error=" << t2.closed_form_error;
  const double violation = std::max({t2.closed_form_error, t2.output_spread, gap_shortfall});
  return finish("theorem2", zeta_points, violation, tolerance, seed, timer, detail.str());
}

VerificationReport verify_theorem3(long samples, std::uint64_t seed) {
  require_samples(samples);
  Timer timer;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  long violations = 0;
  for (long i = 0; i < samples; ++i) {
    const BroadcasterSpec spec = random_broadcaster_spec(rng());
    const PureState coeff = haar_random_pure(2, rng());
    const BroadcastOutput out = unrestricted_broadcast(spec, coeff[0], coeff[1]);
    const double excess = rom_qubit(out.aux) - spec.reference_rom();
    if (excess > 1e-9) ++violations;
    worst = std::max(worst, excess);
  }
  return finish("theorem3", samples, std::max(0.0, worst), 1e-9, seed, timer,
                "aux output R minus reference R; violations=" + std::to_string(violations));
}

VerificationReport verify_geometry(long samples, std::uint64_t seed) {
  require_samples(samples);
  Timer timer;
  constexpr int kGrid = 10000;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  long disagreements = 0;
  long resolution_limited = 0;
  long broadcastable = 0;
  double worst_root = 0.0;

  for (long i = 0; i < samples; ++i) {
    const double ref = 1.0 + (std::sqrt(3.0) - 1.0) * (0.05 + 0.9 * unit(rng));
    const BlochVector s0 = random_bloch_on_level(ref, rng());
    const BlochVector s1 = random_bloch_on_level(ref, rng());
    BlochVector a0;
    BlochVector a1;
    std::array<int, 3> perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::array<double, 3> sign{unit(rng) < 0.5 ? -1.0 : 1.0, unit(rng) < 0.5 ? -1.0 : 1.0,
                                     unit(rng) < 0.5 ? -1.0 : 1.0};
    switch (i % 4) {
      case 0:  // identical lines
        a0 = s0;
        a1 = s1;
        break;
      case 1:  // symmetric image of the system line
        a0 = octahedral(s0, perm, sign);
        a1 = octahedral(s1, perm, sign);
        break;
      case 2:  // same image, traversed backwards
        a0 = octahedral(s1, perm, sign);
        a1 = octahedral(s0, perm, sign);
        break;
      default:  // independent line
        a0 = random_bloch_on_level(ref, rng());
        a1 = random_bloch_on_level(ref, rng());
        break;
    }
    double floor = 1.0;
    for (int k = 0; k <= 100; ++k) floor = std::min(floor, dense_level(s0, s1, k / 100.0));
    floor = std::max(1.0, floor);
    const double level = floor + (ref - floor) * unit(rng);

    const GeometryCertificate cert = broadcast_geometry_certificate(s0, s1, a0, a1, level);
    const ScanResult ss = scan_roots(s0, s1, level, kGrid);
    const ScanResult sa = scan_roots(a0, a1, level, kGrid);
    if (ss.tangent || sa.tangent) {
      ++resolution_limited;
      continue;
    }

    auto match = [&](const std::vector<double>& found, const std::vector<double>& oracle) {
      if (found.size() != oracle.size()) return false;
      for (std::size_t k = 0; k < found.size(); ++k) {
        const double d = std::abs(found[k] - oracle[k]);
        worst_root = std::max(worst_root, d);
        if (d > 1.0 / kGrid) return false;
      }
      return true;
    };
    bool oracle_common = false;
    double closest = 1.0;
    for (double ts : ss.roots) {
      for (double ta : sa.roots) {
        closest = std::min(closest, std::abs(ts - ta));
        if (std::abs(ts - ta) <= 1e-8) oracle_common = true;
      }
    }
    if (closest > 1e-9 && closest < 1e-7) {
      ++resolution_limited;
      continue;
    }
    if (cert.broadcastable) ++broadcastable;
    if (!match(cert.sys_t, ss.roots) || !match(cert.aux_t, sa.roots) || oracle_common != cert.broadcastable)
      ++disagreements;
  }
  std::ostringstream detail;
  detail << "disagreements=" << disagreements << " broadcastable=" << broadcastable
         << " resolution_limited=" << resolution_limited << " max_root_offset=" << worst_root;
  return finish("geometry", samples, static_cast<double>(disagreements), 0.0, seed, timer, detail.str());
}

VerificationReport verify_monotone(long samples, std::uint64_t seed) {
  require_samples(samples);
  Timer timer;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (long i = 0; i < samples; ++i) {
    const PureState psi = haar_random_pure(4, rng());
    const double whole = sre2_extended(DensityMatrix::from_pure(psi), 2);
    for (Subsystem keep : {Subsystem::First, Subsystem::Second}) {
      const DensityMatrix part = partial_trace(psi, 2, 2, keep);
      worst = std::max(worst, sre2_extended(part, 1) - whole);
    }
  }
  return finish("monotone", samples, std::max(0.0, worst), 1e-9, seed, timer, "extended M2 of marginal minus whole");
}

namespace {

const std::map<std::string, Suite>& registry() {
  static const std::map<std::string, Suite> suites = {
      {"lemma1", {verify_lemma1, 100000}},   {"clifford", {verify_clifford, 1000}},
      {"additivity", {verify_additivity, 1000}}, {"convexity", {verify_convexity, 10000}},
      {"theorem2", {verify_theorem2, 720}},  {"theorem3", {verify_theorem3, 10000}},
      {"geometry", {verify_geometry, 1000}}, {"monotone", {verify_monotone, 10000}},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"lemma1",   "clifford", "additivity", "convexity",
                                                 "theorem2", "theorem3", "geometry",   "monotone"};
  return names;
}

VerificationReport run_suite(const std::string& name, long samples, std::uint64_t seed) {
  auto it = registry().find(name);
  if (it == registry().end()) throw Error(ErrorKind::InvalidInput, "unknown verification suite '" + name + "'");
  return it->second.run(samples, seed);
}

long default_samples(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw Error(ErrorKind::InvalidInput, "unknown verification suite '" + name + "'");
  return it->second.default_samples;
}

}  // namespace magicbc
