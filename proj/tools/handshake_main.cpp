#include <iostream>

#include "handshake/cli.hpp"

int main(int argc, char** argv) {
    return handshake::cli::run_cli(argc, argv, std::cout, std::cerr);
}
