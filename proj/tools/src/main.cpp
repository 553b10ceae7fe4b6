#include <iostream>

#include "causticlab/cli/commands.hpp"

int main(int argc, char** argv) { return causticlab::run_cli(argc, argv, std::cout, std::cerr); }
