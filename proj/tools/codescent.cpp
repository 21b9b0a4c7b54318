#include <iostream>

#include "codescent/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return codescent::cli::run_command(args, std::cin, std::cout, std::cerr);
}
