#include <iostream>

#include "cosfunk/cli/commands.hpp"

int main(int argc, char** argv) { return cosfunk::cli::main_entry(argc, argv, std::cout, std::cerr); }
