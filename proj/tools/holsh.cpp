#include <iostream>

#include "holsh/cli/commands.hpp"

int main(int argc, char** argv) { return holsh::cli::main_entry(argc, argv, std::cout, std::cerr); }
