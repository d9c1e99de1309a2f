#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bt {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitUsage = 2,
    kExitNotStable = 3,
    kExitMaxIterations = 4,
};

// args exclude the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bt
