#include <iostream>

#include "burstkit/cli.hpp"

int main(int argc, char** argv) {
    return burstkit::cli::run(argc, argv, std::cout, std::cerr);
}
