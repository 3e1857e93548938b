#include <iostream>

#include "permix/cli.hpp"

int main(int argc, char** argv) {
    return permix::run_cli(argc, argv, std::cout, std::cerr);
}
