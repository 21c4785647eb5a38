#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "partspec/budget.hpp"
#include "partspec/finring.hpp"

namespace partspec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

inline constexpr int kSchemaVersion = 1;

enum class Format { kJson, kText };

struct RunConfig {
  std::string command;
  /// Path to a ring-definition file, or an inline JSON object.
  std::optional<std::string> ring;
  std::optional<std::filesystem::path> rays;
  std::optional<std::filesystem::path> cache_dir;
  Budget budget;
  Format format = Format::kJson;
  int verbosity = 0;
  unsigned jobs = 1;
  bool timings = false;

  // Subcommand arguments.
  bool orbits = false;
  std::optional<std::string> field;
  std::string ideal;
  std::size_t dim = 4;
  std::optional<std::filesystem::path> out;
};

RingTable ring_from_json(const nlohmann::json& def);
/// Reads a file, or parses `source` itself when it starts with '{'.
RingTable parse_ring_definition(const std::string& source);

/// "1s", "500ms", "2m" or a bare number of seconds.
std::chrono::milliseconds parse_duration(const std::string& text);

/// Parses argv into `config`. Returns an exit code when the process should
/// stop (help, usage errors) and std::nullopt to proceed.
std::optional<int> parse_args(int argc, const char* const* argv, RunConfig& config,
                              std::ostream& out, std::ostream& err);

/// Runs one command and writes its report to `out`; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Human-readable rendering of a JSON report.
std::string render_text(const nlohmann::json& report);

}  // namespace partspec::cli
