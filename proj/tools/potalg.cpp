#include <iostream>

#include "potalg/cli.hpp"

int main(int argc, char** argv) { return potalg::cli::main_entry(argc, argv, std::cout, std::cerr); }
