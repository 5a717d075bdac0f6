#include <iostream>

#include "cfbac/cli.hpp"

int main(int argc, char** argv) { return cfbac::run_cli(argc, argv, std::cout, std::cerr); }
