#include <iostream>

#include "hkbose/cli.hpp"

int main(int argc, char **argv) { return hkbose::cli::main_entry(argc, argv, std::cout, std::cerr); }
