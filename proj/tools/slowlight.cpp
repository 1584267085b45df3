#include "slowlight/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return slowlight::cli::main_entry(argc, argv, std::cout, std::cerr); }
