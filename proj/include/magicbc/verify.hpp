#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace magicbc {

struct VerificationReport {
  std::string check_name;
  long samples = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  long runtime_ms = 0;
  std::string detail;
};

/// Names accepted by run_suite, in documentation order.
const std::vector<std::string>& suite_names();

/// Property suites over the magic, cloner and geometry modules. Each returns
/// the largest violation seen and passes iff it stays within the suite's
/// tolerance.
VerificationReport verify_lemma1(long samples, std::uint64_t seed);
VerificationReport verify_clifford(long samples, std::uint64_t seed);
VerificationReport verify_additivity(long samples, std::uint64_t seed);
VerificationReport verify_convexity(long samples, std::uint64_t seed);
VerificationReport verify_theorem2(long zeta_points, std::uint64_t seed);
VerificationReport verify_theorem3(long samples, std::uint64_t seed);
VerificationReport verify_geometry(long samples, std::uint64_t seed);
VerificationReport verify_monotone(long samples, std::uint64_t seed);

/// Dispatch by name; throws invalid-input for unknown names.
VerificationReport run_suite(const std::string& name, long samples, std::uint64_t seed);

/// Default sample counts per suite.
long default_samples(const std::string& name);

}  // namespace magicbc
