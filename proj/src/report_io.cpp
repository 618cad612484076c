#include "magicbc/report_io.hpp"

#include <fstream>

#include "magicbc/error.hpp"

namespace magicbc {

using nlohmann::json;

namespace {

json bloch_json(const BlochVector& b) { return json::array({b.m1, b.m2, b.m3}); }

Vec complex_vector_from_json(const json& j) {
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = Complex(j[k][0], j[k][1]);
  return v;
}

}  // namespace

json complex_vector_json(const Vec& v) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) arr.push_back(json::array({v(k).real(), v(k).imag()}));
  return arr;
}

json to_json(const MagicReport& r) {
  json j;
  j["schema"] = kSchemaVersion;
  j["n"] = r.n;
  j["d"] = r.witness_d;
  j["rom"] = r.rom ? json(*r.rom) : json(nullptr);
  j["sre2"] = r.sre2 ? json(*r.sre2) : json(nullptr);
  j["extended_sre2"] = r.extended_sre2;
  return j;
}

json to_json(const GeometryCertificate& c, const std::vector<BlochVector>& endpoints) {
  json inputs = json::array();
  for (const BlochVector& b : endpoints) inputs.push_back(bloch_json(b));
  json j;
  j["schema"] = kSchemaVersion;
  j["inputs"] = inputs;
  j["level"] = c.level;
  j["reference_level"] = c.reference_level;
  j["sys_t"] = c.sys_t;
  j["aux_t"] = c.aux_t;
  j["t"] = c.common_t;
  j["broadcastable"] = c.broadcastable;
  return j;
}

json to_json(const StabilizerSet& s) {
  json states = json::array();
  for (const PureState& psi : s.states) states.push_back(complex_vector_json(psi.amps()));
  return {{"schema", kSchemaVersion}, {"n", s.n}, {"count", s.states.size()}, {"states", states}};
}

json to_json(const BroadcastOutcome& o) {
  json j;
  j["schema"] = kSchemaVersion;
  j["sample"] = o.sample_index;
  j["objective"] = to_string(o.objective);
  j["input"] = complex_vector_json(o.input);
  j["params"] = o.params.angles;
  j["objective_value"] = o.objective_value;
  j["sys_fidelity"] = o.sys_fidelity;
  j["aux_fidelity"] = o.aux_fidelity;
  j["sys_magic"] = o.sys_magic;
  j["aux_magic"] = o.aux_magic;
  j["input_magic"] = o.input_magic;
  j["magic_power"] = o.magic_power;
  j["evals_used"] = o.evals_used;
  j["converged"] = o.converged;
  return j;
}

BroadcastOutcome outcome_from_json(const json& j) {
  BroadcastOutcome o;
  o.sample_index = j.at("sample").get<int>();
  o.objective = objective_from_string(j.at("objective").get<std::string>());
  o.input = complex_vector_from_json(j.at("input"));
  o.params.angles = j.at("params").get<std::array<double, UnitaryParams15::kSize>>();
  o.objective_value = j.at("objective_value").get<double>();
  o.sys_fidelity = j.at("sys_fidelity").get<double>();
  o.aux_fidelity = j.at("aux_fidelity").get<double>();
  o.sys_magic = j.at("sys_magic").get<double>();
  o.aux_magic = j.at("aux_magic").get<double>();
  o.input_magic = j.at("input_magic").get<double>();
  o.magic_power = j.at("magic_power").get<double>();
  o.evals_used = j.at("evals_used").get<long>();
  o.converged = j.at("converged").get<bool>();
  return o;
}

json to_json(const BatchSummary& s) {
  json j;
  j["schema"] = kSchemaVersion;
  j["objective"] = to_string(s.objective);
  j["n_samples"] = s.n_samples;
  j["converged"] = s.converged;
  j["converged_fraction"] = s.converged_fraction;
  j["mean_fidelity"] = s.mean_fidelity;
  j["min_fidelity"] = s.min_fidelity;
  j["mean_magic_power"] = s.mean_magic_power;
  j["mean_objective"] = s.mean_objective;
  return j;
}

json to_json(const VerificationReport& r) {
  json j;
  j["schema"] = kSchemaVersion;
  j["check_name"] = r.check_name;
  j["samples"] = r.samples;
  j["max_violation"] = r.max_violation;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["seed"] = r.seed;
  j["runtime_ms"] = r.runtime_ms;
  j["detail"] = r.detail;
  return j;
}

json to_json(const Theorem2Report& r) {
  json j;
  j["schema"] = kSchemaVersion;
  j["theta"] = r.theta;
  j["max_gap"] = r.max_gap;
  j["worst_zeta"] = r.worst_zeta;
  j["output_magic"] = r.output_magic;
  j["output_spread"] = r.output_spread;
  j["closed_form_error"] = r.closed_form_error;
  return j;
}

OptimizerConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "config must be a JSON object");
  OptimizerConfig cfg;
  cfg.population = j.value("population", cfg.population);
  cfg.max_evals = j.value("max_evals", cfg.max_evals);
  cfg.epsilon = j.value("epsilon", cfg.epsilon);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.restarts = j.value("restarts", cfg.restarts);
  cfg.n_samples = j.value("n_samples", cfg.n_samples);
  cfg.threads = j.value("threads", cfg.threads);
  cfg.initial_sigma_scale = j.value("initial_sigma_scale", cfg.initial_sigma_scale);
  cfg.validate();
  return cfg;
}

OptimizerConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
  }
  return config_from_json(j);
}

}  // namespace magicbc
