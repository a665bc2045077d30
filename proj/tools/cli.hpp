#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace xpl::cli {

enum class Subcommand { check, query, metrics };
enum class OutputFormat { lines, json };

struct RunConfig {
  Subcommand subcommand = Subcommand::check;
  std::string network_path;
  std::string formula;
  std::string formula_file;
  std::string filter;
  std::optional<std::string> witness_for;
  OutputFormat format = OutputFormat::lines;
  unsigned parallel = 1;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int syntax = 1;      // formula, filter or command-line syntax
inline constexpr int input = 2;       // unreadable or malformed network / formula file
inline constexpr int evaluation = 3;  // a filter could not be evaluated on a payload
}  // namespace exit_code

// Parses `args` (args[0] is the program name) and runs the subcommand.
// Results go to `out` only when the run succeeds; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace xpl::cli
