#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
    return gifnet::cli::run(argc, argv, std::cerr);
}
