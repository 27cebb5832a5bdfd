#include <iostream>
#include <string>
#include <vector>

#include "gcmeta/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gcmeta::run_cli(args, std::cout, std::cerr);
}
