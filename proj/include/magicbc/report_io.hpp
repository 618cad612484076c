#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "magicbc/cloners.hpp"
#include "magicbc/magic.hpp"
#include "magicbc/optimize.hpp"
#include "magicbc/stabkit.hpp"
#include "magicbc/verify.hpp"

namespace magicbc {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const MagicReport& r);
nlohmann::json to_json(const GeometryCertificate& c, const std::vector<BlochVector>& endpoints);
nlohmann::json to_json(const StabilizerSet& s);
nlohmann::json to_json(const BroadcastOutcome& o);
nlohmann::json to_json(const BatchSummary& s);  // summary fields only
nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const Theorem2Report& r);

BroadcastOutcome outcome_from_json(const nlohmann::json& j);

/// Reads population, max_evals, epsilon, seed, restarts, n_samples (all
/// optional) on top of the defaults.
OptimizerConfig config_from_json(const nlohmann::json& j);
OptimizerConfig load_config(const std::string& path);

nlohmann::json complex_vector_json(const Vec& v);

}  // namespace magicbc
