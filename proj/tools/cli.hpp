#ifndef DIVSETS_TOOLS_CLI_HPP
#define DIVSETS_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace divsets::cli {

/// Exit codes: 0 success / feasible / verified, 1 excluded / infeasible /
/// verification failed, 2 usage or input error, 3 undecided (node limit).
enum ExitCode : int { ok = 0, negative = 1, usage = 2, undecided = 3 };

/// Runs one command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace divsets::cli

#endif  // DIVSETS_TOOLS_CLI_HPP
