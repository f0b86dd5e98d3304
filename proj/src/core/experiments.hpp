#pragma once

#include <string>

#include <json.hpp>

namespace ergo {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dispatches a single experiment described by a JSON config and returns a
/// run report. Report layout:
///   { "schema": 1, "experiment": ..., "config": <echo with defaults>,
///     "arithmetic": "exact"|"float", "checks": [{name, lhs, rhs, pass}],
///     "constants": {...}, "wall_ms": ..., "passed": bool }
/// Throws ConfigError for malformed configs; PrecisionExhausted propagates.
nlohmann::json run_experiment(const nlohmann::json& config);

/// Acceptance criterion n (1..8); threads bounds internal parallelism.
nlohmann::json run_acceptance_criterion(int n, int threads,
                                        const std::string& out_dir);

/// name: "acceptance" or "quick". Aggregate report with one entry per
/// criterion (quick runs reduced sizes of the same checks).
nlohmann::json run_suite(const std::string& name, int threads,
                         const std::string& out_dir);

}  // namespace ergo
