#include <iostream>

#include "zapledger/cli.hpp"

int main(int argc, char** argv) { return zapledger::cli::run_cli(argc, argv, std::cout, std::cerr); }
