#include <iostream>
#include <string>
#include <vector>

#include "caenc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    auto result = caenc::cli::run(args);
    std::cout << result.out;
    std::cerr << result.err;
    return result.exit_code;
}
