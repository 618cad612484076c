#include "magicbc/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>
#include <random>
#include <thread>

#include "magicbc/error.hpp"
#include "magicbc/magic.hpp"

namespace magicbc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kDim = UnitaryParams15::kSize;

using Point = std::array<double, kDim>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

BlochVector bloch_of(const Eigen::Matrix2cd& rho) {
  return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

double fidelity_bloch(const BlochVector& psi, const BlochVector& rho) {
  return 0.5 * (1.0 + psi.m1 * rho.m1 + psi.m2 * rho.m2 + psi.m3 * rho.m3);
}

struct Individual {
  Point x{};
  Point sigma{};
  double f = 0.0;
};

// Stochastic ranking (bubble sort with random swaps). Without constraint
// violations every comparison falls back to the objective, so this is a
// plain fitness sort; the penalty form is kept for the general algorithm.
void stochastic_rank(std::vector<int>& order, const std::vector<Individual>& pop, const std::vector<double>& penalty,
                     double pf, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int n = static_cast<int>(order.size());
  for (int sweep = 0; sweep < n; ++sweep) {
    bool swapped = false;
    for (int j = 0; j + 1 < n; ++j) {
      const int a = order[j];
      const int b = order[j + 1];
      const double u = uni(rng);
      const bool by_objective = (penalty[a] == 0.0 && penalty[b] == 0.0) || u < pf;
      const bool out_of_order = by_objective ? pop[a].f > pop[b].f : penalty[a] > penalty[b];
      if (out_of_order) {
        std::swap(order[j], order[j + 1]);
        swapped = true;
      }
    }
    if (!swapped) break;
  }
}

// Every angle enters the unitary with period 2 pi (up to a global phase), so
// the search box is a torus.
double wrap(double v) {
  v = std::fmod(v, kTwoPi);
  return v < 0.0 ? v + kTwoPi : v;
}

UnitaryParams15 to_params(const Point& x) {
  UnitaryParams15 p;
  p.angles = x;
  return p;
}

}  // namespace

std::array<double, 3> UnitaryParams15::su2(int k) const {
  if (k < 1 || k > 4) throw Error(ErrorKind::InvalidInput, "SU(2) factor index must be 1..4");
  const int o = 3 * (k - 1);
  return {angles[o], angles[o + 1], angles[o + 2]};
}

std::array<double, 3> UnitaryParams15::core() const { return {angles[12], angles[13], angles[14]}; }

Eigen::Matrix2cd su2_zyz(double kappa, double lambda, double nu) {
  const Complex e_plus = std::polar(1.0, 0.5 * (kappa + nu));
  const Complex e_minus = std::polar(1.0, 0.5 * (kappa - nu));
  const double c = std::cos(0.5 * lambda);
  const double s = std::sin(0.5 * lambda);
  Eigen::Matrix2cd u;
  u << std::conj(e_plus) * c, -std::conj(e_minus) * s, e_minus * s, e_plus * c;
  return u;
}

Eigen::Matrix4cd core_unitary(double a, double b, double d) {
  // Bell states with their (XX, YY, ZZ) eigenvalues.
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix4cd bell;
  bell.col(0) << r, 0, 0, r;   // Phi+  (+1, -1, +1)
  bell.col(1) << r, 0, 0, -r;  // Phi-  (-1, +1, +1)
  bell.col(2) << 0, r, r, 0;   // Psi+  (+1, +1, -1)
  bell.col(3) << 0, r, -r, 0;  // Psi-  (-1, -1, -1)
  const Eigen::Vector4d phases(a - b + d, -a + b + d, a + b - d, -a - b - d);
  Eigen::Vector4cd diag;
  for (int k = 0; k < 4; ++k) diag(k) = std::polar(1.0, phases(k));
  return bell * diag.asDiagonal() * bell.adjoint();
}

Eigen::Matrix4cd build_unitary(const UnitaryParams15& p) {
  auto local = [&p](int k) {
    const auto e = p.su2(k);
    return su2_zyz(e[0], e[1], e[2]);
  };
  const auto c = p.core();
  return kron2(local(3), local(4)) * core_unitary(c[0], c[1], c[2]) * kron2(local(1), local(2));
}

const char* to_string(Objective o) noexcept { return o == Objective::Magic ? "magic" : "state"; }

Objective objective_from_string(const std::string& s) {
  if (s == "magic") return Objective::Magic;
  if (s == "state") return Objective::State;
  throw Error(ErrorKind::InvalidInput, "objective must be 'magic' or 'state', got '" + s + "'");
}

BroadcastEvaluation evaluate_broadcast(const Eigen::Matrix4cd& u, const PureState& psi) {
  if (psi.dim() != 2) throw Error(ErrorKind::InvalidDimension, "broadcast input must be a single qubit");
  // U (|psi> (x) |0>) only needs columns 0 and 2 of U.
  const Eigen::Vector4cd out = u.col(0) * psi[0] + u.col(2) * psi[1];
  Eigen::Matrix2cd c;
  c << out(0), out(1), out(2), out(3);
  const Eigen::Matrix2cd rho_sys = c * c.adjoint();
  const Eigen::Matrix2cd rho_aux = c.transpose() * c.conjugate();

  BroadcastEvaluation e;
  const BlochVector in = bloch_from_pure(psi);
  e.sys = bloch_of(rho_sys);
  e.aux = bloch_of(rho_aux);
  e.input_magic = rom_qubit(in);
  e.sys_magic = rom_qubit(e.sys);
  e.aux_magic = rom_qubit(e.aux);
  e.sys_fidelity = fidelity_bloch(in, e.sys);
  e.aux_fidelity = fidelity_bloch(in, e.aux);
  return e;
}

double objective_value(Objective o, const BroadcastEvaluation& e) {
  if (o == Objective::Magic) {
    return std::max(std::abs(e.sys_magic - e.input_magic), std::abs(e.aux_magic - e.input_magic));
  }
  return std::max(1.0 - e.sys_fidelity, 1.0 - e.aux_fidelity);
}

double objective_magic(const UnitaryParams15& p, const PureState& psi) {
  return objective_value(Objective::Magic, evaluate_broadcast(build_unitary(p), psi));
}

double objective_state(const UnitaryParams15& p, const PureState& psi) {
  return objective_value(Objective::State, evaluate_broadcast(build_unitary(p), psi));
}

void OptimizerConfig::validate() const {
  if (population < 4 || population % 2 != 0) {
    throw Error(ErrorKind::InvalidInput, "population must be an even integer >= 4");
  }
  if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidInput, "epsilon must be positive");
  if (max_evals < population) throw Error(ErrorKind::InvalidInput, "max_evals must cover one generation");
  if (restarts < 1) throw Error(ErrorKind::InvalidInput, "restarts must be >= 1");
  if (n_samples < 1) throw Error(ErrorKind::InvalidInput, "n_samples must be >= 1");
  if (!(parent_ratio > 0.0 && parent_ratio <= 1.0)) throw Error(ErrorKind::InvalidInput, "parent_ratio out of range");
  if (!(initial_sigma_scale > 0.0)) throw Error(ErrorKind::InvalidInput, "initial_sigma_scale must be positive");
}

int OptimizerConfig::parents() const {
  return std::max(2, static_cast<int>(std::ceil(parent_ratio * population - 1e-9)));
}

BroadcastOutcome isres_optimize(Objective objective, const PureState& psi, const OptimizerConfig& cfg) {
  cfg.validate();
  if (psi.dim() != 2) throw Error(ErrorKind::InvalidDimension, "broadcast input must be a single qubit");

  const int lambda = cfg.population;
  const int mu = std::min(cfg.parents(), lambda);
  const double tau = 1.0 / std::sqrt(2.0 * std::sqrt(static_cast<double>(kDim)));
  const double tau_prime = 1.0 / std::sqrt(2.0 * kDim);
  const double sigma0 = cfg.initial_sigma_scale * kTwoPi / std::sqrt(static_cast<double>(kDim));

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uni(0.0, kTwoPi);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto eval = [&](const Point& x) {
    return objective_value(objective, evaluate_broadcast(build_unitary(to_params(x)), psi));
  };

  Individual best;
  best.f = std::numeric_limits<double>::infinity();
  long evals = 0;

  for (int restart = 0; restart < cfg.restarts && evals < cfg.max_evals && best.f > cfg.epsilon; ++restart) {
    const long budget_end = evals + (cfg.max_evals - evals) / (cfg.restarts - restart);
    std::vector<Individual> pop(lambda);
    for (Individual& ind : pop) {
      for (int j = 0; j < kDim; ++j) {
        ind.x[j] = uni(rng);
        ind.sigma[j] = sigma0;
      }
    }
    if (cfg.seed_start_point) pop[0].x = cfg.start_point.angles;
    const std::vector<double> penalty(lambda, 0.0);
    std::vector<int> order(lambda);
    double run_best = std::numeric_limits<double>::infinity();
    int stall = 0;

    while (evals + lambda <= budget_end) {
      for (Individual& ind : pop) {
        ind.f = eval(ind.x);
        ++evals;
        if (ind.f < best.f) best = ind;
      }
      if (best.f <= cfg.epsilon) break;

      std::iota(order.begin(), order.end(), 0);
      stochastic_rank(order, pop, penalty, cfg.ranking_pf, rng);

      const double gen_best = pop[order[0]].f;
      if (gen_best < run_best * (1.0 - 1e-9)) {
        run_best = gen_best;
        stall = 0;
      } else if (++stall >= cfg.stall_generations) {
        break;
      }

      std::vector<Individual> parents(mu);
      for (int i = 0; i < mu; ++i) parents[i] = pop[order[i]];

      std::vector<Individual> next(lambda);
      for (int k = 0; k < lambda; ++k) {
        const int i = k % mu;
        const Individual& parent = parents[i];
        Individual child;
        bool done = false;
        if (k < mu - 1) {
          // Differential variation toward the best parent.
          child.sigma = parent.sigma;
          done = true;
          for (int j = 0; j < kDim; ++j) {
            child.x[j] = wrap(parent.x[j] + cfg.dv_gamma * std::remainder(parents[0].x[j] - parents[i + 1].x[j], kTwoPi));
          }
        }
        if (!done) {
          const double global = tau_prime * gauss(rng);
          Point trial_sigma{};
          for (int j = 0; j < kDim; ++j) {
            trial_sigma[j] = std::min(sigma0, parent.sigma[j] * std::exp(global + tau * gauss(rng)));
            child.x[j] = wrap(parent.x[j] + trial_sigma[j] * gauss(rng));
            child.sigma[j] =
                std::min(sigma0, parent.sigma[j] + cfg.sigma_smoothing * (trial_sigma[j] - parent.sigma[j]));
          }
        }
        next[k] = child;
      }
      pop = std::move(next);
    }
  }

  BroadcastOutcome out;
  out.objective = objective;
  out.input = psi.amps();
  out.params = to_params(best.x);
  const Eigen::Matrix4cd u = build_unitary(out.params);
  const BroadcastEvaluation e = evaluate_broadcast(u, psi);
  out.objective_value = objective_value(objective, e);
  out.sys_fidelity = e.sys_fidelity;
  out.aux_fidelity = e.aux_fidelity;
  out.sys_magic = e.sys_magic;
  out.aux_magic = e.aux_magic;
  out.input_magic = e.input_magic;
  out.magic_power = magic_power(u);
  out.evals_used = evals;
  out.converged = out.objective_value <= cfg.epsilon;
  return out;
}

PureState batch_input(const OptimizerConfig& cfg, int sample_index) {
  return haar_random_pure(2, cfg.seed + static_cast<std::uint64_t>(sample_index));
}

BroadcastOutcome run_sample(Objective objective, const OptimizerConfig& cfg, int sample_index) {
  OptimizerConfig local = cfg;
  local.seed = splitmix64(cfg.seed + static_cast<std::uint64_t>(sample_index));
  BroadcastOutcome out = isres_optimize(objective, batch_input(cfg, sample_index), local);
  out.sample_index = sample_index;
  return out;
}

BatchSummary summarize(Objective objective, std::vector<BroadcastOutcome> outcomes) {
  std::sort(outcomes.begin(), outcomes.end(),
            [](const BroadcastOutcome& a, const BroadcastOutcome& b) { return a.sample_index < b.sample_index; });
  BatchSummary s;
  s.objective = objective;
  s.n_samples = static_cast<int>(outcomes.size());
  double fid = 0.0;
  double power = 0.0;
  double obj = 0.0;
  for (const BroadcastOutcome& o : outcomes) {
    fid += o.mean_fidelity();
    power += o.magic_power;
    obj += o.objective_value;
    s.min_fidelity = std::min(s.min_fidelity, o.mean_fidelity());
    if (o.converged) ++s.converged;
  }
  if (s.n_samples > 0) {
    const double n = s.n_samples;
    s.mean_fidelity = fid / n;
    s.mean_magic_power = power / n;
    s.mean_objective = obj / n;
    s.converged_fraction = s.converged / n;
  }
  s.per_sample = std::move(outcomes);
  return s;
}

std::vector<BroadcastOutcome> run_samples(const std::vector<int>& indices, Objective objective,
                                          const OptimizerConfig& cfg,
                                          const std::function<void(const BroadcastOutcome&)>& on_done) {
  cfg.validate();
  const int n = static_cast<int>(indices.size());
  std::vector<BroadcastOutcome> results(indices.size());
  if (n == 0) return results;
  const int workers =
      std::max(1, std::min(n, cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency())));

  std::atomic<int> next{0};
  std::mutex lock;
  auto work = [&] {
    for (int k = next++; k < n; k = next++) {
      results[k] = run_sample(objective, cfg, indices[k]);
      if (on_done) {
        std::lock_guard<std::mutex> guard(lock);
        on_done(results[k]);
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return results;
}

BatchSummary batch_experiment(int n_samples, Objective objective, const OptimizerConfig& cfg,
                              const std::function<void(const BroadcastOutcome&)>& on_done) {
  if (n_samples < 1) throw Error(ErrorKind::InvalidInput, "n_samples must be >= 1");
  std::vector<int> indices(static_cast<std::size_t>(n_samples));
  std::iota(indices.begin(), indices.end(), 0);
  return summarize(objective, run_samples(indices, objective, cfg, on_done));
}

}  // namespace magicbc
