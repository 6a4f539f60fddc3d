#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace siqrb::cli {

/// What a subcommand did: 0 on success, 1 on a domain/validation failure,
/// 2 on a usage error. Artifacts lists the files written.
struct CommandOutcome {
    int exit_code = 0;
    std::vector<std::string> artifacts;
    std::vector<std::string> summary;
};

/// Runs one subcommand (analyze | simulate | optimize | compare | sweep).
/// args excludes the program name.
CommandOutcome run(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr);

} // namespace siqrb::cli
