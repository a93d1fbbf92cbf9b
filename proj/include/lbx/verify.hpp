#pragma once

// Verification suites behind `lbx verify`, `lbx stats` and `lbx bounds`.
// Each suite checks a reduction against the brute-force solvers and
// returns a Report; a run succeeds iff every check has zero failures.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace lbx {

inline constexpr const char* kReportSchema = "lbx.report/1";

struct CheckRecord {
  std::string name;
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  nlohmann::json tallies = nlohmann::json::object();
};

struct Report {
  nlohmann::json command = nlohmann::json::object();
  std::vector<CheckRecord> checks;

  bool ok() const;
  std::uint64_t failures() const;
  nlohmann::json to_json() const;
};

struct VerifyConfig {
  std::uint32_t b = 2;
  std::uint32_t d = 2;
  std::uint64_t n_blocks = 2;    // N
  std::uint64_t block_size = 2;  // B
  std::uint64_t k = 1;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  bool exhaustive = false;  // request; honoured only at or below the suite's threshold
};

/// Exhaustive-mode limits, echoed into every report.
struct Thresholds {
  static constexpr std::uint64_t kMaxEdgesForAllSubgraphs = 16;  // stabbing, fpma
  static constexpr std::uint64_t kMaxUniverseForAllInstances = 8;  // blocked, two-blocked, partial-match (N*B)
  static constexpr std::uint64_t kMaxTriplesForAllInstances = 4;  // reach-lsd (N*B)
  static constexpr std::uint64_t kMaxEntropyBlock = 16;
  static constexpr std::uint64_t kMaxSupportUniverse = 20;
};

const std::vector<std::string>& verify_names();

/// Throws InvalidInput for an unknown name or invalid parameters.
Report run_verify(const std::string& name, const VerifyConfig& config);

struct StatsConfig {
  std::uint64_t n_blocks = 1;
  std::uint64_t block_size = 2;
  std::uint64_t k = 1;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  bool exhaustive = false;
};

Report run_stats(const StatsConfig& config);

struct BoundsConfig {
  double n = 1 << 20;
  double space = 1 << 20;
  double word_bits = 1;
  double delta = 0.5;
};

Report run_bounds(const BoundsConfig& config);

}  // namespace lbx
