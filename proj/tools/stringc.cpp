#include <iostream>

#include "stringc/cli.hpp"

int main(int argc, char** argv) { return stringc::run_cli(argc, argv, std::cout, std::cerr); }
