#include <iostream>

#include "limlearn/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return lim::run_cli(args, std::cout, std::cerr);
}
