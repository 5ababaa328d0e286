#include <iostream>

#include "react/cli.hpp"

int main(int argc, char** argv) {
    return react::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
