#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dihom {

/* Outcome of one CLI verb. Exit code 0 is success, 1 a mathematical or
 * structural failure (invalid category, unknown object, out-of-range
 * degree), 2 a malformed invocation or input document. `output` is the
 * report body; `message` carries diagnostics for stderr. */
struct CommandResult {
  int exit_code = 0;
  std::string output;
  std::string message;
};

struct ReportOptions {
  std::string ring = "z";
  std::optional<int> dim;  // truncation override for builder-style inputs
  std::string degrees;     // "n" or "a..b"; empty means every available degree
};

CommandResult cmd_validate(const std::string& input, std::optional<int> dim);
CommandResult cmd_homology(const std::string& input, const ReportOptions& opt);
CommandResult cmd_relative(const std::string& input, const std::vector<std::string>& sub_objects,
                           const ReportOptions& opt);
CommandResult cmd_algebra(const std::string& input, std::optional<int> dim);
CommandResult cmd_selftest(const std::string& only, bool inject_corruption);

const char* cli_version();

}  // namespace dihom
