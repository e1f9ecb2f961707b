#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "borel/dg_module.hpp"
#include "borel/error.hpp"

namespace borel {

/// Text format for DG modules; grammar in docs/module_file.md. Throws ParseError with line and
/// column, or InvariantViolation naming the failed relation.
DGModule parse_module(std::string_view text);
DGModule parse_module_file(const std::string& path);
/// Canonical form: parse_module(print_module(m)) prints back to the same text.
std::string print_module(const DGModule& m);

/// "lo:hi", e.g. "-4:12".
std::pair<int, int> parse_window_spec(const std::string& text);

std::uint64_t fnv1a(std::string_view data);

struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  /// Row indices outside the guaranteed window.
  std::vector<std::size_t> provisional;
};

struct ReportCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ReportInput {
  std::string name;
  std::string spec;
  std::string hash;
};

struct RunReport {
  std::string command;
  std::vector<ReportInput> inputs;
  std::optional<Window> window;
  std::vector<ReportTable> tables;
  std::vector<ReportCheck> checks;
  double ms = 0;

  bool all_checks_passed() const;
  std::string to_json(bool with_time = true) const;
  std::string to_table(bool with_time = true) const;
};

struct CommandOptions {
  std::string command;
  /// For `groups`: restrict, extend, coextend, dual, shriek, shift-check.
  std::string subcommand;
  std::string group;
  std::optional<std::pair<int, int>> window;
  /// Module specs: a file path, or k, kbar, I, R, L (the exterior algebra), with @n for a
  /// suspension and + for direct sums.
  std::string m;
  std::string n;
  /// Read named modules over H_*(G) instead of H*(BG).
  bool lambda = false;
  /// Subgroup pair from the catalog, or a custom map from source, target and images.
  std::string pair;
  std::string source;
  std::string target;
  std::vector<std::string> images;
  /// ext: free, injective or both.
  std::string route = "both";
};

/// Throws Error; WindowRequired for rhom and for named infinite modules without a window.
RunReport run_command(const CommandOptions& options);

/// {"error": {"code", "message", "line", "column"}}
std::string error_json(const Error& e);

}  // namespace borel
