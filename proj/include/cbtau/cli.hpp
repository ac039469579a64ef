#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cbtau/param.hpp"

namespace cbtau {

// Exit statuses of the command line tool.
enum ExitCode { kExitOk = 0, kExitFailed = 1, kExitUsage = 2 };

// Runs one command (arguments without the program name). Exactly one JSON
// document goes to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Reads {"symbol": "p/q" | integer, ...}; requires every symbol in `required`.
ParameterPoint read_point_file(const std::string& path, const std::vector<std::string>& required);
ParameterPoint parse_point_json(const std::string& text, const std::vector<std::string>& required);

}  // namespace cbtau
