#include "magicbc/cloners.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>

#include "magicbc/error.hpp"
#include "magicbc/magic.hpp"
#include "magicbc/tolerances.hpp"

namespace magicbc {

namespace {

DensityMatrix mix(double w0, const DensityMatrix& a, double w1, const DensityMatrix& b) {
  return DensityMatrix(w0 * a.mat() + w1 * b.mat());
}

bool same_density(const DensityMatrix& a, const DensityMatrix& b, double tolerance) {
  return a.dim() == b.dim() && (a.mat() - b.mat()).cwiseAbs().maxCoeff() <= tolerance;
}

}  // namespace

PureState WZParams::reference() const {
  Vec v(2);
  v << std::cos(gamma / 2), std::polar(1.0, gamma_prime) * std::sin(gamma / 2);
  return PureState::normalized(std::move(v));
}

PureState WZParams::reference_perp() const {
  Vec v(2);
  v << -std::sin(gamma / 2), std::polar(1.0, gamma_prime) * std::cos(gamma / 2);
  return PureState::normalized(std::move(v));
}

double WZParams::reference_rom() const {
  return std::abs(std::cos(gamma)) +
         std::abs(std::sin(gamma)) * (std::abs(std::sin(gamma_prime)) + std::abs(std::cos(gamma_prime)));
}

double BHParams::eta_bound(double xi) { return 2.0 * std::sqrt(xi) * std::sqrt(std::max(0.0, 1.0 - 2.0 * xi)); }

BHParams::BHParams(double xi, double eta) : xi_(xi), eta_(eta) {
  constexpr double slack = 1e-12;
  if (!(xi >= 0.0 && xi <= 0.5)) {
    throw Error(ErrorKind::InvalidMachine, "xi must lie in [0, 1/2]");
  }
  if (!(eta >= 0.0 && eta <= eta_bound(xi) + slack)) {
    throw Error(ErrorKind::InvalidMachine, "eta must lie in [0, 2 sqrt(xi) sqrt(1 - 2 xi)]");
  }
}

BHParams BHParams::schwarz_max(double xi) {
  if (!(xi >= 0.0 && xi <= 0.5)) {
    throw Error(ErrorKind::InvalidMachine, "xi must lie in [0, 1/2]");
  }
  return BHParams(xi, eta_bound(xi));
}

double BroadcasterSpec::reference_rom() const { return rom_qubit(DensityMatrix::from_pure(ref_in.first)); }

PureState wz_input(const WZParams& p, double theta, double zeta) {
  return superpose(p.reference(), p.reference_perp(), theta, zeta);
}

DensityMatrix wz_output(const WZParams& p, double theta, double /*zeta*/) {
  const double c2 = std::cos(theta / 2) * std::cos(theta / 2);
  const double s2 = std::sin(theta / 2) * std::sin(theta / 2);
  return mix(c2, DensityMatrix::from_pure(p.reference()), s2, DensityMatrix::from_pure(p.reference_perp()));
}

WZMagic wz_output_magic(const WZParams& p, double theta) {
  const double raw = std::abs(std::cos(theta)) * p.reference_rom();
  return {std::max(1.0, raw), raw};
}

WZBroadcastCheck wz_broadcast_check(const WZParams& p, double theta, double zeta) {
  WZBroadcastCheck out;
  out.input_magic = rom_qubit(DensityMatrix::from_pure(wz_input(p, theta, zeta)));
  const WZMagic m = wz_output_magic(p, theta);
  out.output_magic = m.unclipped;
  // Compare robustness to robustness: an output inside the octahedron carries R = 1.
  out.perfect = std::abs(out.input_magic - m.clipped) <= tol::kMagicEqual;
  return out;
}

PureState bh_input(double theta, double zeta) {
  Vec v(2);
  v << std::cos(theta / 2), std::polar(1.0, zeta) * std::sin(theta / 2);
  return PureState::normalized(std::move(v));
}

DensityMatrix bh_output(const BHParams& p, double theta, double zeta) {
  const double c = std::cos(theta);
  const double off = 0.5 * p.eta() * std::sin(theta);
  Mat m(2, 2);
  m(0, 0) = std::cos(theta / 2) * std::cos(theta / 2) - p.xi() * c;
  m(1, 1) = std::sin(theta / 2) * std::sin(theta / 2) + p.xi() * c;
  // Same off-diagonal phase as the input projector, so the clone's Bloch
  // vector is a component-wise rescaling of the input's.
  m(0, 1) = std::polar(off, -zeta);
  m(1, 0) = std::polar(off, zeta);
  return DensityMatrix(std::move(m));
}

double bh_magic(const BHParams& p, double theta, double zeta) {
  const double raw = (1.0 - 2.0 * p.xi()) * std::abs(std::cos(theta)) +
                     p.eta() * std::abs(std::sin(theta)) * (std::abs(std::cos(zeta)) + std::abs(std::sin(zeta)));
  return std::max(1.0, raw);
}

double m_ratio(const BHParams& p, double theta, double zeta) {
  const double ct = std::abs(std::cos(theta));
  const double st = std::abs(std::sin(theta));
  const double phase = std::abs(std::cos(zeta)) + std::abs(std::sin(zeta));
  const double num = (1.0 - 2.0 * p.xi()) * ct + p.eta() * st * phase;
  const double den = ct + st * phase;
  return num / den;
}

BroadcasterSpec make_broadcaster_spec(std::pair<PureState, PureState> ref_in,
                                      std::pair<DensityMatrix, DensityMatrix> sys_out,
                                      std::pair<DensityMatrix, DensityMatrix> aux_out) {
  for (int d : {ref_in.first.dim(), ref_in.second.dim(), sys_out.first.dim(), sys_out.second.dim(),
                aux_out.first.dim(), aux_out.second.dim()}) {
    if (d != 2) throw Error(ErrorKind::InvalidDimension, "broadcaster spec is defined for qubits");
  }
  if (overlap_abs(ref_in.first, ref_in.second) > tol::kOrthogonal) {
    throw Error(ErrorKind::InvalidSpec, "reference states are not orthogonal");
  }
  BroadcasterSpec spec{std::move(ref_in), std::move(sys_out), std::move(aux_out)};
  const double ref = spec.reference_rom();
  for (const DensityMatrix* rho : {&spec.sys_out.first, &spec.sys_out.second, &spec.aux_out.first,
                                   &spec.aux_out.second}) {
    if (std::abs(rom_qubit(*rho) - ref) > tol::kMagicEqual) {
      throw Error(ErrorKind::InvalidSpec, "outputs do not carry the reference magic");
    }
  }
  if (std::abs(rom_qubit(DensityMatrix::from_pure(spec.ref_in.second)) - ref) > tol::kMagicEqual) {
    throw Error(ErrorKind::InvalidSpec, "reference pair has unequal magic");
  }
  return spec;
}

BroadcasterSpec maximal_magic_spec() {
  const PureState t = t_state();
  const PureState tp = t_perp_state();
  const DensityMatrix rt = DensityMatrix::from_pure(t);
  const DensityMatrix rtp = DensityMatrix::from_pure(tp);
  return make_broadcaster_spec({t, tp}, {rt, rtp}, {rt, rtp});
}

BlochVector random_bloch_on_level(double level, std::uint64_t seed) {
  if (!(level >= 0.0 && level <= std::sqrt(3.0) + 1e-12)) {
    throw Error(ErrorKind::InvalidLevel, "no qubit state has this sum of |m_j|");
  }
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::bernoulli_distribution coin(0.5);
  // Uniform point w on the face simplex, pulled toward the face centre until
  // level * w fits inside the unit ball (the centre always does).
  std::array<double, 3> w{expo(rng), expo(rng), expo(rng)};
  const double total = w[0] + w[1] + w[2];
  for (double& x : w) x /= total;
  BlochVector out;
  for (double lambda = 1.0;; lambda *= 0.5) {
    std::array<double, 3> m{};
    double n2 = 0.0;
    for (int j = 0; j < 3; ++j) {
      m[j] = level * ((1.0 - lambda) / 3.0 + lambda * w[j]);
      n2 += m[j] * m[j];
    }
    if (n2 <= 1.0 || lambda < 1e-12) {
      out = {m[0], m[1], m[2]};
      break;
    }
  }
  if (coin(rng)) out.m1 = -out.m1;
  if (coin(rng)) out.m2 = -out.m2;
  if (coin(rng)) out.m3 = -out.m3;
  return out;
}

BroadcasterSpec random_broadcaster_spec(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const PureState psi = haar_random_pure(2, rng());
  Vec perp(2);
  perp << -std::conj(psi[1]), std::conj(psi[0]);
  const PureState psi_perp = PureState::normalized(std::move(perp));

  double level = bloch_from_pure(psi).l1();
  if (level <= 1.0) {
    // Stabilizer-like reference: any output inside the octahedron carries R = 1.
    level = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  }
  auto draw = [&] { return density_from_bloch(random_bloch_on_level(level, rng())); };
  DensityMatrix s0 = draw();
  DensityMatrix s1 = draw();
  DensityMatrix a0 = draw();
  DensityMatrix a1 = draw();
  return make_broadcaster_spec({psi, psi_perp}, {std::move(s0), std::move(s1)}, {std::move(a0), std::move(a1)});
}

BroadcastOutput unrestricted_broadcast(const BroadcasterSpec& spec, Complex alpha, Complex beta) {
  const double wa = std::norm(alpha);
  const double wb = std::norm(beta);
  if (std::abs(wa + wb - 1.0) > tol::kNormalization) {
    throw Error(ErrorKind::InvalidInput, "|alpha|^2 + |beta|^2 must equal 1");
  }
  return {mix(wa, spec.sys_out.first, wb, spec.sys_out.second),
          mix(wa, spec.aux_out.first, wb, spec.aux_out.second)};
}

double superposition_magic_closed_form(double theta, double zeta) {
  // Bloch vector cos(theta) t + sin(theta) (cos(zeta) e1 + sin(zeta) e2) with
  // t = (1,1,1)/sqrt3, e1 = (1,1,-2)/sqrt6, e2 = (-1,1,0)/sqrt2.
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const double common = ct / std::sqrt(3.0) + st * std::cos(zeta) / std::sqrt(6.0);
  const double split = st * std::sin(zeta) / std::sqrt(2.0);
  const double third = (ct - std::sqrt(2.0) * st * std::cos(zeta)) / std::sqrt(3.0);
  return std::abs(common + split) + std::abs(common - split) + std::abs(third);
}

Theorem2Report theorem2_falsify(const BroadcasterSpec& spec, double theta, const std::vector<double>& zeta_grid) {
  const DensityMatrix rt = DensityMatrix::from_pure(t_state());
  const DensityMatrix rtp = DensityMatrix::from_pure(t_perp_state());
  constexpr double match = 1e-9;
  const bool maximal = overlap_abs(spec.ref_in.first, t_state()) > 1.0 - match &&
                       overlap_abs(spec.ref_in.second, t_perp_state()) > 1.0 - match &&
                       same_density(spec.sys_out.first, rt, match) && same_density(spec.sys_out.second, rtp, match) &&
                       same_density(spec.aux_out.first, rt, match) && same_density(spec.aux_out.second, rtp, match);
  if (!maximal) {
    throw Error(ErrorKind::InvalidSpec, "theorem2_falsify needs the T / T_perp product broadcaster");
  }

  Theorem2Report rep;
  rep.theta = theta;
  double out_min = std::numeric_limits<double>::infinity();
  double out_max = -std::numeric_limits<double>::infinity();
  rep.input_magic.reserve(zeta_grid.size());
  for (double zeta : zeta_grid) {
    const PureState chi = superpose(spec.ref_in.first, spec.ref_in.second, theta, zeta);
    const double r_in = rom_qubit(DensityMatrix::from_pure(chi));
    const double closed = std::max(1.0, superposition_magic_closed_form(theta, zeta));
    rep.closed_form_error = std::max(rep.closed_form_error, std::abs(closed - r_in));

    const Complex alpha = std::cos(theta / 2);
    const Complex beta = std::polar(std::sin(theta / 2), zeta);
    const BroadcastOutput out = unrestricted_broadcast(spec, alpha, beta);
    const double r_out = rom_qubit(out.aux);
    out_min = std::min(out_min, r_out);
    out_max = std::max(out_max, r_out);

    const double gap = std::abs(r_in - r_out);
    if (gap > rep.max_gap) {
      rep.max_gap = gap;
      rep.worst_zeta = zeta;
    }
    rep.input_magic.push_back(r_in);
  }
  if (!zeta_grid.empty()) {
    rep.output_magic = out_max;
    rep.output_spread = out_max - out_min;
  }
  return rep;
}

std::vector<SweepRow> wz_sweep(const WZParams& p, const std::vector<double>& thetas, const std::vector<double>& zetas) {
  std::vector<SweepRow> rows;
  rows.reserve(thetas.size() * zetas.size());
  for (double th : thetas) {
    for (double ze : zetas) {
      const double in = rom_qubit(DensityMatrix::from_pure(wz_input(p, th, ze)));
      const double out = wz_output_magic(p, th).clipped;
      rows.push_back({th, ze, in, out, out / in});
    }
  }
  return rows;
}

std::vector<SweepRow> bh_sweep(const BHParams& p, const std::vector<double>& thetas, const std::vector<double>& zetas) {
  std::vector<SweepRow> rows;
  rows.reserve(thetas.size() * zetas.size());
  for (double th : thetas) {
    for (double ze : zetas) {
      const double in = rom_qubit(DensityMatrix::from_pure(bh_input(th, ze)));
      rows.push_back({th, ze, in, bh_magic(p, th, ze), m_ratio(p, th, ze)});
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  const auto old_precision = os.precision();
  os << "theta,zeta,input_magic,output_magic,ratio\n";
  os << std::setprecision(17);
  for (const SweepRow& r : rows) {
    os << r.theta << ',' << r.zeta << ',' << r.input_magic << ',' << r.output_magic << ',' << r.ratio << '\n';
  }
  os.precision(old_precision);
}

}  // namespace magicbc
