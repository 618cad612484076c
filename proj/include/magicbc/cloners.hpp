#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "magicbc/qstate.hpp"

namespace magicbc {

/// Wootters-Zurek reference state cos(g/2)|0> + e^{i g'} sin(g/2)|1>.
struct WZParams {
  double gamma = 0.0;
  double gamma_prime = 0.0;

  PureState reference() const;
  /// -sin(g/2)|0> + e^{i g'} cos(g/2)|1>.
  PureState reference_perp() const;
  /// |cos g| + |sin g| (|sin g'| + |cos g'|).
  double reference_rom() const;
};

/// Buzek-Hillery machine overlaps. Construction enforces
/// 0 <= xi <= 1/2 and 0 <= eta <= 2 sqrt(xi) sqrt(1 - 2 xi).
class BHParams {
 public:
  BHParams(double xi, double eta);

  /// eta at its upper bound for the given xi.
  static BHParams schwarz_max(double xi);

  double xi() const noexcept { return xi_; }
  double eta() const noexcept { return eta_; }
  static double eta_bound(double xi);

 private:
  double xi_;
  double eta_;
};

struct WZMagic {
  double clipped;    // max{1, |cos theta| R_ref}
  double unclipped;  // |cos theta| R_ref
};

struct WZBroadcastCheck {
  bool perfect = false;
  double input_magic = 1.0;
  double output_magic = 1.0;  // unclipped |cos theta| R_ref
};

/// Reference pair and reduced outputs of a broadcasting unitary. Index 0 is
/// the image of the reference state, index 1 of its orthogonal partner.
struct BroadcasterSpec {
  std::pair<PureState, PureState> ref_in;
  std::pair<DensityMatrix, DensityMatrix> sys_out;
  std::pair<DensityMatrix, DensityMatrix> aux_out;

  double reference_rom() const;
};

struct BroadcastOutput {
  DensityMatrix sys;
  DensityMatrix aux;
};

struct Theorem2Report {
  double theta = 0.0;
  double max_gap = 0.0;
  double worst_zeta = 0.0;
  double output_magic = 1.0;
  double output_spread = 0.0;        // max - min of output magic over the grid
  double closed_form_error = 0.0;    // max |closed form - rom_qubit|
  std::vector<double> input_magic;   // per grid point
};

struct SweepRow {
  double theta;
  double zeta;
  double input_magic;
  double output_magic;
  double ratio;
};

PureState wz_input(const WZParams& p, double theta, double zeta);
DensityMatrix wz_output(const WZParams& p, double theta, double zeta);
WZMagic wz_output_magic(const WZParams& p, double theta);
WZBroadcastCheck wz_broadcast_check(const WZParams& p, double theta, double zeta);

/// BH input cos(theta/2)|0> + e^{i zeta} sin(theta/2)|1>.
PureState bh_input(double theta, double zeta);
/// Reduced clone state. Its Bloch vector is
/// (eta sin theta cos zeta, eta sin theta sin zeta, (1 - 2 xi) cos theta).
DensityMatrix bh_output(const BHParams& p, double theta, double zeta);
/// Robustness of the output copy, clipped at 1.
double bh_magic(const BHParams& p, double theta, double zeta);
/// Ratio of the unclipped output to input sum |m_j|.
double m_ratio(const BHParams& p, double theta, double zeta);

BroadcasterSpec make_broadcaster_spec(std::pair<PureState, PureState> ref_in,
                                      std::pair<DensityMatrix, DensityMatrix> sys_out,
                                      std::pair<DensityMatrix, DensityMatrix> aux_out);

/// Broadcaster that copies |T> -> |T>|T> and |T_perp> -> |T_perp>|T_perp>.
BroadcasterSpec maximal_magic_spec();

/// Random valid spec: Haar reference pair and four random outputs on the
/// reference polytope surface.
BroadcasterSpec random_broadcaster_spec(std::uint64_t seed);

/// Random Bloch vector with sum |m_j| == level inside the unit ball.
BlochVector random_bloch_on_level(double level, std::uint64_t seed);

BroadcastOutput unrestricted_broadcast(const BroadcasterSpec& spec, Complex alpha, Complex beta);

/// sum_j |m_j| of cos(theta/2)|T> + e^{i zeta} sin(theta/2)|T_perp> in closed form.
double superposition_magic_closed_form(double theta, double zeta);

Theorem2Report theorem2_falsify(const BroadcasterSpec& spec, double theta, const std::vector<double>& zeta_grid);

std::vector<SweepRow> wz_sweep(const WZParams& p, const std::vector<double>& thetas, const std::vector<double>& zetas);
std::vector<SweepRow> bh_sweep(const BHParams& p, const std::vector<double>& thetas, const std::vector<double>& zetas);

/// CSV with header theta,zeta,input_magic,output_magic,ratio; 17 significant digits.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace magicbc
