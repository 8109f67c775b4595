#include <iostream>

#include "cohstate/cli/cli.hpp"

int main(int argc, char** argv) { return cohstate::cli::run(argc, argv, std::cout, std::cerr); }
