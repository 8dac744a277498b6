#pragma once

#include "weylforge/json_io.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wf {

struct CommandConfig {
    std::string subcommand;
    std::string input;  // path or inline JSON; empty reads stdin
    std::string output; // empty writes stdout
    std::optional<int> trunc, utrunc, degree;
    std::string suite = "all";
    std::string series;
    int n = 0;
    int cases = 0;
    unsigned seed = 1;
    int verbose = 0;
};

const std::vector<std::string>& subcommands();

// Exit status: 0 ok, 1 suite failure, 2 malformed or invalid input, 3 internal invariant violation.
int run(const CommandConfig& cfg, std::ostream& out, std::ostream& err);

// Re-parse a subcommand's JSON output into the library value and serialize it again.
Json reparse_output(const std::string& subcommand, const Json& output);

}  // namespace wf
