#include <iostream>
#include <string>
#include <vector>

#include "mqgal/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mqgal::run_cli(args, std::cout, std::cerr);
}
