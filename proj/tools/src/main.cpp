#include <iostream>

#include "sivhs_cli/run.hpp"

int main(int argc, char** argv) { return sivhs::cli::main_entry(argc, argv, std::cout, std::cerr); }
