#include "jerkrepro/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return jerkrepro::cli::run(argc, argv, std::cout, std::cerr);
}
