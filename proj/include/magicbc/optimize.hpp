#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "magicbc/qstate.hpp"

namespace magicbc {

/// Angles of the two-qubit broadcasting unitary
///   U = (U3 (x) U4) * exp[i(a XX + b YY + d ZZ)] * (U1 (x) U2),
/// each U_k in SU(2) as Z-Y-Z Euler angles (kappa, lambda, nu).
/// Layout: [k1 l1 n1 | k2 l2 n2 | k3 l3 n3 | k4 l4 n4 | a b d].
struct UnitaryParams15 {
  static constexpr int kSize = 15;
  std::array<double, kSize> angles{};

  std::array<double, 3> su2(int k) const;  // k in 1..4
  std::array<double, 3> core() const;
};

/// e^{-i kappa Z / 2} e^{-i lambda Y / 2} e^{-i nu Z / 2}.
Eigen::Matrix2cd su2_zyz(double kappa, double lambda, double nu);
/// exp[i(a XX + b YY + d ZZ)], diagonal in the Bell basis.
Eigen::Matrix4cd core_unitary(double a, double b, double d);
Eigen::Matrix4cd build_unitary(const UnitaryParams15& p);

enum class Objective { Magic, State };

const char* to_string(Objective o) noexcept;
Objective objective_from_string(const std::string& s);

/// Reduced outputs of U(|psi> (x) |0>) with the quantities the objectives need.
struct BroadcastEvaluation {
  BlochVector sys;
  BlochVector aux;
  double input_magic = 1.0;
  double sys_magic = 1.0;
  double aux_magic = 1.0;
  double sys_fidelity = 1.0;
  double aux_fidelity = 1.0;
};

BroadcastEvaluation evaluate_broadcast(const Eigen::Matrix4cd& u, const PureState& psi);

/// max over subsystems of |R(rho_out) - R(psi)|.
double objective_magic(const UnitaryParams15& p, const PureState& psi);
/// max over subsystems of 1 - <psi|rho_out|psi>.
double objective_state(const UnitaryParams15& p, const PureState& psi);
double objective_value(Objective o, const BroadcastEvaluation& e);

struct OptimizerConfig {
  int population = 70;
  long max_evals = 200000;
  double epsilon = 1e-4;
  std::uint64_t seed = 1;
  int restarts = 5;
  int n_samples = 200;
  int threads = 0;  // 0: hardware concurrency
  // First individual of each restart starts at this point (all zeros is the
  // identity unitary); the rest of the population is uniform in the box.
  bool seed_start_point = true;
  UnitaryParams15 start_point;

  // Stochastic-ranking ES constants.
  double parent_ratio = 1.0 / 7.0;
  double ranking_pf = 0.45;
  double dv_gamma = 0.85;
  double sigma_smoothing = 0.2;
  // Initial (and maximal) step size, as a fraction of 2 pi / sqrt(15).
  double initial_sigma_scale = 0.1;
  int stall_generations = 200;

  void validate() const;
  int parents() const;
};

struct BroadcastOutcome {
  int sample_index = 0;
  Objective objective = Objective::Magic;
  Vec input;
  UnitaryParams15 params;
  double objective_value = 0.0;
  double sys_fidelity = 0.0;
  double aux_fidelity = 0.0;
  double sys_magic = 1.0;
  double aux_magic = 1.0;
  double input_magic = 1.0;
  double magic_power = 0.0;
  long evals_used = 0;
  bool converged = false;

  double mean_fidelity() const { return 0.5 * (sys_fidelity + aux_fidelity); }
};

/// Improved stochastic-ranking evolution strategy over [0, 2 pi]^15.
/// Deterministic for a fixed (objective, psi, cfg).
BroadcastOutcome isres_optimize(Objective objective, const PureState& psi, const OptimizerConfig& cfg);

/// Input state and optimizer seed used for sample i of a batch.
PureState batch_input(const OptimizerConfig& cfg, int sample_index);
BroadcastOutcome run_sample(Objective objective, const OptimizerConfig& cfg, int sample_index);

struct BatchSummary {
  Objective objective = Objective::Magic;
  int n_samples = 0;
  int converged = 0;
  double converged_fraction = 0.0;
  double mean_fidelity = 0.0;
  double min_fidelity = 1.0;
  double mean_magic_power = 0.0;
  double mean_objective = 0.0;
  std::vector<BroadcastOutcome> per_sample;
};

/// Aggregate outcomes in sample-index order.
BatchSummary summarize(Objective objective, std::vector<BroadcastOutcome> outcomes);

/// Run the listed sample indices; results are returned in the same order.
std::vector<BroadcastOutcome> run_samples(const std::vector<int>& indices, Objective objective,
                                          const OptimizerConfig& cfg,
                                          const std::function<void(const BroadcastOutcome&)>& on_done = {});

/// Run samples [0, n_samples) across cfg.threads workers. on_done is called
/// from the worker threads, serialized by an internal lock.
BatchSummary batch_experiment(int n_samples, Objective objective, const OptimizerConfig& cfg,
                              const std::function<void(const BroadcastOutcome&)>& on_done = {});

}  // namespace magicbc
