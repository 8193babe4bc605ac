#include <iostream>

#include "macrostate/cli.hpp"

int main(int argc, char** argv) { return macrostate::cli::run(argc, argv, std::cout, std::cerr); }
