#include <iostream>

#include "gcx_cli/cli.hpp"

int main(int argc, char** argv) { return gcx::cli::main_entry(argc, argv, std::cout, std::cerr); }
