#include <iostream>

#include "qlock/cli/cli.hpp"

int main(int argc, char** argv) { return qlock::cli::main_entry(argc, argv, std::cout, std::cerr); }
