#include <iostream>

#include "relhorn/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return relhorn::cli::run(args, std::cout, std::cerr);
}
