#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    return seps::cli_run(argc, argv, std::cout, std::cerr);
}
