#ifndef FACTORCERT_CLI_HPP
#define FACTORCERT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace factorcert {

// Full command-line surface; args excludes the program name. Reads '-' inputs
// from `in`, writes documents/reports to `out` and diagnostics to `err`.
// Exit codes: 0 verified/constructed, 1 refuted, 2 malformed input, 3 resource
// bound exceeded.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

} // namespace factorcert
#endif
