#pragma once

#include <string>
#include <vector>

namespace caenc::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kDataError = 2,
    kVerificationFailed = 3,
};

struct CommandResult {
    int exit_code = kOk;
    std::string out;
    std::string err;
};

// argv[0] is the program name. Subcommands: keygen, profile, encompress,
// dencompress, rule-matrix, std, algebra, find-maca, verify.
CommandResult run(const std::vector<std::string>& argv);

}  // namespace caenc::cli
