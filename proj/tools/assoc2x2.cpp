#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    return assoc2x2::cli::run_cli(argc, argv, std::cout, std::cerr);
}
