#include <iostream>
#include <string>
#include <vector>

#include "frv/cli_impl.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return frv::run_cli(args, std::cout, std::cerr);
}
