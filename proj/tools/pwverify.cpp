#include <iostream>

#include "pwq/cli.hpp"

int main(int argc, char** argv) { return pwq::cli::main_entry(argc, argv, std::cout, std::cerr); }
