#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "idjt/compiler.hpp"

namespace idjt::cli {

enum class DotTarget { moral, triangulated, tree };

struct RunConfig {
  std::string input;
  // Explicit elimination sequence by variable name; excludes `heuristic`.
  std::optional<std::vector<std::string>> order;
  std::optional<Heuristic> heuristic;
  std::uint64_t seed = 0;
  std::vector<std::pair<DotTarget, std::string>> dot;
  bool policies = false;
  bool stats = false;
  bool check = false;
};

enum ExitCode : int {
  kOk = 0,
  kInvalidModel = 1,
  kSyntaxError = 2,
  kInternalError = 3,
  kOracleMismatch = 4,
};

struct RunOutcome {
  int exit_code = kOk;
  std::string report;  // stdout
  std::string errors;  // stderr
};

// parse -> validate -> compile -> verify -> solve, rendered as a report.
RunOutcome run(const RunConfig& config);

// Same pipeline on in-memory model text; DOT files are still written to disk.
RunOutcome run_text(const RunConfig& config, const std::string& text);

// "moral=path", "tri=path" or "tree=path".
std::optional<std::pair<DotTarget, std::string>> parse_dot_flag(
    const std::string& flag);

// Up to 12 significant digits, no locale.
std::string format_number(double x);

}  // namespace idjt::cli
