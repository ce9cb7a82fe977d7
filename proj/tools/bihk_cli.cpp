#include <iostream>

#include "bihk/cli/commands.hpp"

int main(int argc, char** argv) { return bihk::cli::run_cli(argc, argv, std::cout, std::cerr); }
