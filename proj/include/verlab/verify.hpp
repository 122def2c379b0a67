#pragma once

// Registry and runner of named verification checks over configurable
// parameter grids. Reports are deterministic for a fixed configuration
// (elapsed fields aside) and serialize to JSON or markdown.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "verlab/verlinde.hpp"

namespace verlab {

struct VerifyConfig {
  std::vector<std::int64_t> primes{2, 3, 5};
  std::int64_t max_i = 8;        // tensor-power exponent cap
  std::int64_t max_lambda = 120; // level cap: largest n with |Lambda| <= max_lambda
  std::optional<std::int64_t> max_n;
  std::int64_t max_weight = 60;  // weight cap for the tilting/Steinberg suite
  std::int64_t budget = kDefaultTableBudget;
  std::optional<std::filesystem::path> cache_dir;
  bool override_bounds = false;  // forwarded to bound-guarded checks
  std::uint64_t sample_seed = 0x76657233'12345678ull;  // associativity sampling

  // Largest admissible level for prime p (0 when even n = 1 is too large).
  std::int64_t level_cap(std::int64_t p) const;
};

struct CheckResult {
  std::string check_id;
  std::map<std::string, std::string> params;
  bool passed = false;
  nlohmann::ordered_json witness;  // null unless the check failed
  std::int64_t elapsed_ms = 0;
};

struct VerificationReport {
  int schema = 1;
  std::string version;  // artifact version; carried in markdown output
  std::vector<CheckResult> results;

  int passed_count() const;
  int failed_count() const;
  bool all_passed() const { return failed_count() == 0; }
};

struct CheckInfo {
  std::string id;
  std::string statement;  // the verified mathematical statement
};

std::vector<CheckInfo> registered_checks();

// Runs the named checks over the configured grid; an empty suite yields an
// empty report. Throws UnknownCheckId for unregistered names.
VerificationReport run_suite(const std::vector<std::string>& suite,
                             const VerifyConfig& config = {});

enum class ReportFormat { kJson, kMarkdown };

std::string emit_report(const VerificationReport& report, ReportFormat format);
VerificationReport parse_report(const std::string& json_text);

}  // namespace verlab
