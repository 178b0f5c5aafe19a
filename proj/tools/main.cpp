#include <iostream>
#include <string>
#include <vector>

#include "bicon/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return bicon::run(args, std::cin, std::cout, std::cerr);
}
